//! Which irreducible characters of G stay irreducible on a subgroup H:
//! degree screens, lift filters, Clifford tests on parabolics and exact
//! norms, and diffs of the computed answer against published lists.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{dixon_character_table, dixon_with_ring, parse_combination, restrict, CharTable, ClassFunction};
use crate::error::{Error, Result};
use crate::fusion::{exact_fusion, FusionMap};
use crate::grp::classes::conjugacy_classes;
use crate::grp::parabolic::{parabolic_decomposition, ParabolicData};
use crate::grp::subgroups::named_subgroup;
use crate::grp::{symplectic_group, symplectic_order, ClassData, Group};
use crate::qpoly::Catalog;
use crate::weil::{orbit_restriction_profile, weil_constituents, WeilCharacters};

pub const PUBLISHED_JSON: &str = include_str!("../data/published.json");
pub const NOTATION_JSON: &str = include_str!("../data/notation.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Irreducible,
    Reducible,
    ExcludedByScreen,
    ExcludedByLiftFilter,
    ExcludedByOrbitTest,
    UndecidableAtDeskScale,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub test: String,
    pub detail: String,
}

fn ev(test: &str, detail: impl Into<String>) -> Evidence {
    Evidence { test: test.into(), detail: detail.into() }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateVerdict {
    pub character: String,
    pub degree: i64,
    pub subgroup: String,
    pub ell: u64,
    pub verdict: Verdict,
    pub justification: Vec<Evidence>,
}

fn fmt_ratio(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// Degree screen

/// What the screen needs to know about H.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupDescriptor {
    pub name: String,
    pub order: u128,
    /// |Z(H)|
    pub centre: u64,
    /// 𝔪(H), the largest irreducible degree, when known
    pub max_degree: Option<u64>,
}

impl SubgroupDescriptor {
    pub fn from_table(name: &str, t: &CharTable) -> SubgroupDescriptor {
        let info = t.info();
        SubgroupDescriptor {
            name: name.into(),
            order: info.order as u128,
            centre: info.classes.iter().filter(|c| c.size == 1).count() as u64,
            max_degree: t.degrees().into_iter().max(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScreenOutcome {
    pub survivors: Vec<usize>,
    pub excluded: Vec<(usize, Evidence)>,
}

/// Drops every degree above 𝔪(H) or above √|H/Z(H)|.
pub fn degree_screen(degrees: &[u64], h: &SubgroupDescriptor) -> ScreenOutcome {
    let quotient = h.order / h.centre.max(1) as u128;
    let mut out = ScreenOutcome { survivors: vec![], excluded: vec![] };
    for (i, &d) in degrees.iter().enumerate() {
        if let Some(m) = h.max_degree.filter(|&m| d > m) {
            out.excluded.push((i, ev("degree screen m(H)", format!("chi(1) = {d} > m({}) = {m}", h.name))));
        } else if (d as u128) * (d as u128) > quotient {
            out.excluded.push((
                i,
                ev("degree screen sqrt|H/Z(H)|", format!("chi(1)^2 = {} > |H/Z(H)| = {quotient}", d as u128 * d as u128)),
            ));
        } else {
            out.survivors.push(i);
        }
    }
    out
}

/// d(q) > m(q) for every q ≥ q_min, from catalog formulas.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolicScreen {
    pub subgroup: String,
    pub bound: String,
    pub smallest: String,
    pub q_min: i64,
    #[serde(default)]
    pub holds: bool,
    #[serde(default)]
    pub difference: String,
}

pub fn symbolic_screen(cat: &Catalog, subgroup: &str, bound: &str, smallest: &str, q_min: i64) -> Result<SymbolicScreen> {
    let diff = cat.eval_formula(&format!("({smallest}) - ({bound})"))?;
    Ok(SymbolicScreen {
        subgroup: subgroup.into(),
        bound: bound.into(),
        smallest: smallest.into(),
        q_min,
        holds: diff.positive_for_q_at_least(q_min),
        difference: diff.to_string(),
    })
}

// ---------------------------------------------------------------------------
// Exact restriction data

fn multiplicities(chi: &ClassFunction, th: &CharTable, f: &FusionMap) -> Result<Vec<Ratio<i64>>> {
    th.decompose(&restrict(chi, th.info(), &f.0)?)
}

fn norm_of(m: &[Ratio<i64>]) -> Ratio<i64> {
    m.iter().map(|x| x * x).sum()
}

/// Characters with ⟨χ|_H, χ|_H⟩ = 1, screening degrees first.
pub fn ordinary_classification(tg: &CharTable, th: &CharTable, f: &FusionMap) -> Result<Vec<usize>> {
    let screen = degree_screen(&tg.degrees(), &SubgroupDescriptor::from_table("H", th));
    let hits: Vec<Option<usize>> = screen
        .survivors
        .par_iter()
        .map(|&i| -> Result<_> {
            let m = multiplicities(&tg.irreducibles()[i], th, f)?;
            Ok((norm_of(&m) == Ratio::from_integer(1)).then_some(i))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// The same list with no screening, through plain inner products on H.
pub fn brute_force_norm_one(tg: &CharTable, th: &CharTable, f: &FusionMap) -> Result<Vec<usize>> {
    let mut out = vec![];
    for (i, chi) in tg.irreducibles().iter().enumerate() {
        let r = restrict(chi, th.info(), &f.0)?;
        if crate::chartab::inner_product(&r, &r)? == Ratio::from_integer(1) {
            out.push(i);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Lift filters

#[derive(Clone, Debug)]
pub struct LiftFilters {
    pub norm: Ratio<i64>,
    /// χ|_H ∈ Irr(H); when false, no χ̂|_H is irreducible.
    pub restriction_irreducible: bool,
    /// χ|_H − λ ∉ Irr(H) for every linear λ and for λ = 0; when true,
    /// χ̂|_H − μ is never irreducible for a linear Brauer μ.
    pub minus_linear_excluded: bool,
    /// A λ (H-irreducible index, or None for λ = 0) with χ|_H − λ ∈ Irr(H).
    pub witness: Option<Option<usize>>,
}

pub fn lift_filters(chi: &ClassFunction, th: &CharTable, f: &FusionMap) -> Result<LiftFilters> {
    let m = multiplicities(chi, th, f)?;
    let norm = norm_of(&m);
    let one = Ratio::from_integer(1);
    let mut witness = (norm == one).then_some(None);
    if witness.is_none() {
        for (l, psi) in th.irreducibles().iter().enumerate() {
            if psi.degree() != 1 || m[l] < one {
                continue;
            }
            let mut rest = m.clone();
            rest[l] -= one;
            if norm_of(&rest) == one {
                witness = Some(Some(l));
                break;
            }
        }
    }
    Ok(LiftFilters {
        norm,
        restriction_irreducible: norm == one,
        minus_linear_excluded: witness.is_none(),
        witness,
    })
}

fn ell_part(mut n: u128, ell: u64) -> u128 {
    let mut p = 1;
    while ell > 1 && n.is_multiple_of(ell as u128) {
        n /= ell as u128;
        p *= ell as u128;
    }
    p
}

/// Why an irreducible χ|_H stays irreducible modulo ℓ, if that follows from
/// orders alone: ℓ ∤ |H|, or χ|_H has ℓ-defect zero.
pub fn reduction_stays_irreducible(ell: u64, h_order: u128, degree: u64) -> Option<String> {
    if ell == 0 {
        return Some("ordinary".into());
    }
    let hp = ell_part(h_order, ell);
    if hp == 1 {
        Some(format!("{ell} does not divide |H| = {h_order}"))
    } else if ell_part(degree as u128, ell) == hp {
        Some(format!("defect zero: |H|_{ell} = {hp} divides chi(1) = {degree}"))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Clifford tests on parabolics

#[derive(Clone, Debug, Serialize)]
pub struct CliffordTest {
    pub j: usize,
    /// `Some(ExcludedByOrbitTest)` when a test fired
    pub verdict: Option<Verdict>,
    pub evidence: Vec<Evidence>,
    pub profile: Vec<(String, u64, i64)>,
}

fn b_bound(label: &str) -> Option<(&'static str, bool)> {
    // (catalog name, whether the entry is the square of the bound)
    match label {
        "1" => Some(("B_1_sq", true)),
        "2-" => Some(("B_2m_sq", true)),
        "2+" => Some(("B_2p", false)),
        "3" => Some(("B_3", false)),
        _ => None,
    }
}

/// Long-root fixed points (P_1), Ito divisibility, the orbit structure of
/// χ|_{Z_j}, and for P_3 ≤ Sp6 the orbit bounds B.
pub fn clifford_orbit_test(
    chi: &ClassFunction,
    g: &Group,
    cd: &ClassData,
    p: &ParabolicData,
    cat: &Catalog,
) -> Result<CliffordTest> {
    let prof = orbit_restriction_profile(chi, g, cd, p)?;
    let d = chi.degree();
    let mut evidence = vec![];
    let mut fired = false;
    let fixed = prof.multiplicity("0");

    if p.j == 1 {
        if fixed > 0 {
            fired = true;
            evidence.push(ev("long-root fixed points", format!("Z_1 fixes a subspace of dimension {fixed}")));
        } else {
            evidence.push(ev("long-root fixed points", "premise fails: Z_1 has no fixed points"));
        }
    }

    let index = p.p.order() / p.z.order();
    let ito = index.is_multiple_of(d);
    fired |= !ito;
    evidence.push(ev(
        "Ito",
        format!("chi(1) = {d} {} [P_{}:Z_{}] = {index}", if ito { "divides" } else { "does not divide" }, p.j, p.j),
    ));

    let support: Vec<&(String, u64, i64)> = prof.entries.iter().filter(|e| e.2 != 0).collect();
    let desc: Vec<String> = support.iter().map(|(l, s, m)| format!("{m}x{l}[{s}]")).collect();
    if support.len() != 1 || support[0].1 == 1 && support[0].0 == "0" {
        fired = true;
        evidence.push(ev("Clifford orbit", format!("chi|Z meets {} orbits: {}", support.len(), desc.join(" + "))));
    } else {
        evidence.push(ev("Clifford orbit", format!("single orbit: {}", desc[0])));
    }

    let sizes: BTreeSet<u64> = prof.entries.iter().filter(|e| e.0 != "0").map(|e| e.1).collect();
    let dividing: Vec<u64> = sizes.iter().copied().filter(|s| d.is_multiple_of(*s)).collect();
    if dividing.is_empty() {
        fired = true;
        evidence.push(ev("orbit-size divisibility", format!("no orbit size in {sizes:?} divides chi(1) = {d}")));
    } else {
        evidence.push(ev("orbit-size divisibility", format!("orbit sizes {dividing:?} divide chi(1) = {d}")));
    }

    if p.j == 3 && g.n() == 3 {
        for (l, _, _) in &support {
            let Some((name, squared)) = b_bound(l) else { continue };
            let b = cat.get(name)?.at(g.q() as i64);
            let dd = d as i128;
            let within = if squared { dd * dd <= b } else { dd <= b };
            fired |= !within;
            let shown = if squared { format!("{name} = {b} vs chi(1)^2 = {}", dd * dd) } else { format!("{name} = {b}") };
            evidence.push(ev(
                "orbit bound",
                format!("orbit {l}: {shown}, chi(1) = {d} {}", if within { "within" } else { "exceeds" }),
            ));
        }
    }

    Ok(CliffordTest {
        j: p.j,
        verdict: fired.then_some(Verdict::ExcludedByOrbitTest),
        evidence,
        profile: prof.entries.clone(),
    })
}

// ---------------------------------------------------------------------------
// Groups, subgroups and names

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct NotationRow {
    pub degree: String,
    pub gt: Option<String>,
    #[serde(flatten)]
    pub others: BTreeMap<String, Option<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct DescribedCharacter {
    pub n: usize,
    pub q: u32,
    pub name: String,
    pub degree: u64,
    pub excluding: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Notation {
    pub version: u32,
    pub sp6: Vec<NotationRow>,
    pub g2: Vec<NotationRow>,
    pub described: Vec<DescribedCharacter>,
}

pub fn notation() -> Result<Notation> {
    Ok(serde_json::from_str(NOTATION_JSON)?)
}

pub struct GroupContext {
    pub n: usize,
    pub q: u32,
    pub group: Group,
    pub classes: ClassData,
    pub table: CharTable,
    pub weil: WeilCharacters,
    /// resolved character names → table row
    pub names: BTreeMap<String, usize>,
    /// names whose description matches several rows
    pub ambiguous: BTreeMap<String, Vec<usize>>,
}

pub struct SubgroupContext {
    pub name: String,
    pub group: Group,
    pub classes: ClassData,
    pub table: CharTable,
    pub fusion: FusionMap,
    pub parabolic: Option<ParabolicData>,
}

impl GroupContext {
    pub fn build(n: usize, q: u32, budget: u64) -> Result<GroupContext> {
        let group = symplectic_group(n, q, budget)?;
        let classes = conjugacy_classes(&group);
        let table = dixon_character_table(&group, &classes)?;
        let weil = weil_constituents(&group, &classes, &table)?;
        let mut names: BTreeMap<String, usize> = weil.named.iter().map(|(k, v)| (k.clone(), v.0)).collect();
        names.insert("1".into(), 0);
        let mut ambiguous = BTreeMap::new();
        for dc in notation()?.described.into_iter().filter(|d| d.n == n && d.q == q) {
            let skip: BTreeSet<usize> = dc.excluding.iter().filter_map(|e| names.get(e).copied()).collect();
            let rows: Vec<usize> = table
                .degrees()
                .iter()
                .enumerate()
                .filter(|(i, &d)| d == dc.degree && !skip.contains(i))
                .map(|(i, _)| i)
                .collect();
            if rows.len() == 1 {
                names.insert(dc.name, rows[0]);
            } else {
                ambiguous.insert(dc.name, rows);
            }
        }
        Ok(GroupContext { n, q, group, classes, table, weil, names, ambiguous })
    }

    pub fn resolve(&self, name: &str) -> Result<usize> {
        if let Some(&r) = self.names.get(name) {
            return Ok(r);
        }
        match self.ambiguous.get(name) {
            Some(rows) => Err(Error::Ambiguous(name.into(), rows.len())),
            None => Err(Error::Unidentified(name.into())),
        }
    }

    /// The preferred name of a row: a Weil name, a described name, or `X<row>`.
    pub fn label(&self, row: usize) -> String {
        let weil = self.weil.named.iter().find(|(_, v)| v.0 == row).map(|(k, _)| k.clone());
        weil.or_else(|| self.names.iter().find(|(k, &v)| v == row && k.as_str() != "1").map(|(k, _)| k.clone()))
            .unwrap_or_else(|| if row == 0 { "1".into() } else { format!("X{row}") })
    }

    pub fn subgroup(&self, name: &str) -> Result<SubgroupContext> {
        let group = named_subgroup(&self.group, name)?;
        let classes = conjugacy_classes(&group);
        let table = dixon_with_ring(&group, &classes, self.table.ring().clone())?;
        let fusion = exact_fusion(&group, &classes, &self.group, &self.classes)?;
        let parabolic = match name.strip_prefix('P').and_then(|j| j.parse::<usize>().ok()) {
            Some(j) => Some(parabolic_decomposition(&self.group, j)?),
            None => None,
        };
        Ok(SubgroupContext { name: name.into(), group, classes, table, fusion, parabolic })
    }

    /// Candidate rows for White's unipotent characters χ_1..χ_12 of Sp6(q):
    /// through the Weil names where the notation table links them, else by
    /// degree. More than one row means the label is ambiguous at this q.
    pub fn white_names(&self) -> Result<BTreeMap<String, Vec<usize>>> {
        let mut out = BTreeMap::new();
        if self.n != 3 {
            return Ok(out);
        }
        let nt = notation()?;
        let cat = Catalog::builtin();
        let degrees = self.table.degrees();
        for k in 1..=12 {
            let white = format!("chi{k}");
            let linked = nt.sp6.iter().find(|r| r.others.get("white").cloned().flatten().as_deref() == Some(&white));
            let rows = match linked.and_then(|r| r.gt.as_deref()).and_then(|gt| self.names.get(gt)) {
                Some(&r) => vec![r],
                None => {
                    let d = cat.get(&format!("White_chi_{k}"))?.at(self.q as i64) as u64;
                    (0..degrees.len()).filter(|&i| degrees[i] == d).collect()
                }
            };
            out.insert(white, rows);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// The pipeline

/// Screen, Clifford tests (parabolics), lift filters and norms for every
/// nonlinear χ at each ℓ. For ℓ > 0 the candidate χ̂ − 1 is reported too.
pub fn classify_subgroup(ctx: &GroupContext, sub: &SubgroupContext, ells: &[u64]) -> Result<Vec<CandidateVerdict>> {
    for &ell in ells {
        if ell == 2 {
            return Err(Error::EvenEll);
        }
    }
    let tg = &ctx.table;
    let desc = SubgroupDescriptor::from_table(&sub.name, &sub.table);
    let screen = degree_screen(&tg.degrees(), &desc);
    let screened: BTreeMap<usize, Evidence> = screen.excluded.into_iter().collect();
    let cat = Catalog::builtin();
    let rows: Vec<usize> = (0..tg.len()).filter(|&i| tg.irreducibles()[i].degree() > 1).collect();

    let per_row: Vec<Vec<CandidateVerdict>> = rows
        .par_iter()
        .map(|&i| -> Result<_> {
            let chi = &tg.irreducibles()[i];
            let d = chi.degree();
            let mk = |character: String, degree: i64, ell: u64, verdict, justification| CandidateVerdict {
                character,
                degree,
                subgroup: sub.name.clone(),
                ell,
                verdict,
                justification,
            };
            let name = ctx.label(i);
            let mut out = vec![];
            if let Some(e) = screened.get(&i) {
                for &ell in ells {
                    out.push(mk(name.clone(), d as i64, ell, Verdict::ExcludedByScreen, vec![e.clone()]));
                }
                return Ok(out);
            }
            let mut trail = vec![];
            if let Some(p) = &sub.parabolic {
                let ct = clifford_orbit_test(chi, &ctx.group, &ctx.classes, p, cat)?;
                trail.extend(ct.evidence);
                if let Some(v) = ct.verdict {
                    for &ell in ells {
                        out.push(mk(name.clone(), d as i64, ell, v, trail.clone()));
                    }
                    return Ok(out);
                }
            }
            let lf = lift_filters(chi, &sub.table, &sub.fusion)?;
            let norm = ev("norm", format!("<chi|H, chi|H> = {}", fmt_ratio(&lf.norm)));
            for &ell in ells {
                let mut j = trail.clone();
                j.push(norm.clone());
                let verdict = if ell == 0 {
                    if lf.restriction_irreducible {
                        Verdict::Irreducible
                    } else {
                        Verdict::Reducible
                    }
                } else if !lf.restriction_irreducible {
                    j.push(ev("lift filter (irreducible lift)", "chi|H is reducible, so chi^|H is reducible"));
                    Verdict::ExcludedByLiftFilter
                } else if let Some(why) = reduction_stays_irreducible(ell, desc.order, d) {
                    j.push(ev("reduction mod l", why));
                    Verdict::Irreducible
                } else {
                    j.push(ev("reduction mod l", "chi|H is irreducible; its reduction needs IBr(H)"));
                    Verdict::UndecidableAtDeskScale
                };
                out.push(mk(name.clone(), d as i64, ell, verdict, j));
                if ell > 0 {
                    let mut j = vec![norm.clone()];
                    let verdict = if lf.minus_linear_excluded {
                        j.push(ev("lift filter (minus linear)", "chi|H - lambda is not irreducible for any linear lambda or 0"));
                        Verdict::ExcludedByLiftFilter
                    } else {
                        let w = match lf.witness {
                            Some(Some(l)) => format!("chi|H - psi{l} is irreducible"),
                            _ => "chi|H is irreducible".into(),
                        };
                        j.push(ev("lift filter (minus linear)", format!("{w}; needs IBr")));
                        Verdict::UndecidableAtDeskScale
                    };
                    out.push(mk(format!("{name} - 1"), d as i64 - 1, ell, verdict, j));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<CandidateVerdict> = per_row.into_iter().flatten().collect();
    out.sort_by_key(|v| v.ell);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Published results

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EllCondition {
    List(Vec<u64>),
    /// "all"
    Keyword(String),
}

impl EllCondition {
    pub fn admits(&self, ell: u64) -> bool {
        match self {
            EllCondition::List(v) => v.contains(&ell),
            EllCondition::Keyword(k) => k == "all",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedTriple {
    pub subgroup: String,
    /// None when the statement names only the subgroup
    pub character: Option<String>,
    pub ell: EllCondition,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PublishedResult {
    pub id: String,
    pub n: usize,
    pub q_min: u32,
    #[serde(default)]
    pub q_max: Option<u32>,
    pub ells: Vec<u64>,
    pub summary: String,
    pub subgroups: Vec<String>,
    pub not_constructed: Vec<String>,
    pub triples: Vec<ExpectedTriple>,
    #[serde(default)]
    pub symbolic_screens: Vec<SymbolicScreen>,
}

#[derive(Deserialize)]
struct PublishedFile {
    theorems: Vec<PublishedResult>,
}

pub fn published() -> Result<Vec<PublishedResult>> {
    Ok(serde_json::from_str::<PublishedFile>(PUBLISHED_JSON)?.theorems)
}

pub fn published_result(id: &str) -> Result<PublishedResult> {
    published()?
        .into_iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::UnknownTheorem(id.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Confirmed,
    Refuted,
    UndecidableAtDeskScale,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// the listed character restricts irreducibly
    Irreducible,
    /// a listed character outside its ℓ-condition does not
    NotIrreducible,
    /// some nonlinear character restricts irreducibly (subgroup-only rows)
    SomeCharacter,
    /// no character besides the listed ones restricts irreducibly
    Exhaustive,
    /// an unlisted subgroup admits no irreducible restriction
    NoCharacter,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub subgroup: String,
    pub character: Option<String>,
    pub ell: u64,
    pub claim: Claim,
    pub outcome: Outcome,
    pub justification: Vec<Evidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub n: usize,
    pub q: u32,
    pub ells: Vec<u64>,
    pub summary: String,
    pub not_constructed: Vec<String>,
    pub triples: Vec<TripleReport>,
    /// subgroup → nonlinear characters with norm 1
    pub norm_one: BTreeMap<String, Vec<String>>,
    pub symbolic: Vec<SymbolicScreen>,
}

impl VerifyReport {
    pub fn count(&self, o: Outcome) -> usize {
        self.triples.iter().filter(|t| t.outcome == o).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Outcome::Refuted) == 0 && self.symbolic.iter().all(|s| s.holds)
    }

    pub fn find(&self, subgroup: &str, character: Option<&str>, ell: u64, claim: Claim) -> Option<&TripleReport> {
        self.triples
            .iter()
            .find(|t| t.subgroup == subgroup && t.character.as_deref() == character && t.ell == ell && t.claim == claim)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("theorem {} (Sp{}({})), l in {:?}\n{}\n", self.theorem, 2 * self.n, self.q, self.ells, self.summary);
        for t in &self.triples {
            let tag = match t.outcome {
                Outcome::Confirmed => "confirmed",
                Outcome::Refuted => "REFUTED",
                Outcome::UndecidableAtDeskScale => "undecidable",
            };
            let why: Vec<String> = t.justification.iter().map(|e| format!("{}: {}", e.test, e.detail)).collect();
            s += &format!(
                "  [{tag}] {} {} l={} {:?}: {}\n",
                t.subgroup,
                t.character.as_deref().unwrap_or("-"),
                t.ell,
                t.claim,
                why.join("; ")
            );
        }
        for (h, chars) in &self.norm_one {
            s += &format!("  norm-1 on {h}: {}\n", if chars.is_empty() { "none".into() } else { chars.join(", ") });
        }
        for x in &self.symbolic {
            s += &format!(
                "  symbolic screen {}: {} < {} for q >= {}: {}\n",
                x.subgroup, x.bound, x.smallest, x.q_min, if x.holds { "holds" } else { "FAILS" }
            );
        }
        for n in &self.not_constructed {
            s += &format!("  not constructed: {n}\n");
        }
        s += &format!(
            "  {} confirmed, {} refuted, {} undecidable\n",
            self.count(Outcome::Confirmed),
            self.count(Outcome::Refuted),
            self.count(Outcome::UndecidableAtDeskScale)
        );
        s
    }
}

enum Form {
    Plain(usize),
    MinusOne(usize),
}

fn form_of(ctx: &GroupContext, expr: &str) -> Result<Form> {
    let terms = parse_combination(expr)?;
    match terms.as_slice() {
        [(1, a)] => Ok(Form::Plain(ctx.resolve(a)?)),
        [(1, a), (-1, b)] if b == "1" => Ok(Form::MinusOne(ctx.resolve(a)?)),
        _ => Err(Error::Unsupported(format!("character expression `{expr}`"))),
    }
}

/// Per-subgroup restriction data used by the diff.
struct SubData {
    order: u128,
    lift: Vec<LiftFilters>,
}

impl SubData {
    /// Nonlinear rows whose χ̂|_H is certainly irreducible at ℓ.
    fn certain(&self, tg: &CharTable, ell: u64) -> Vec<usize> {
        (0..tg.len())
            .filter(|&i| {
                let d = tg.irreducibles()[i].degree();
                d > 1 && self.lift[i].restriction_irreducible && reduction_stays_irreducible(ell, self.order, d).is_some()
            })
            .collect()
    }
}

/// Checks a published statement at q against the computed groups.
pub fn verify_published(id: &str, q: u32, ells: Option<&[u64]>, budget: u64) -> Result<VerifyReport> {
    let res = published_result(id)?;
    if q < res.q_min || res.q_max.is_some_and(|m| q > m) {
        return Err(Error::Unsupported(format!("theorem {id} at q = {q}")));
    }
    let ells: Vec<u64> = ells.map(|e| e.to_vec()).unwrap_or_else(|| res.ells.clone());
    if ells.contains(&2) {
        return Err(Error::EvenEll);
    }
    let cat = Catalog::builtin();
    let symbolic = res
        .symbolic_screens
        .iter()
        .map(|s| symbolic_screen(cat, &s.subgroup, &s.bound, &s.smallest, s.q_min))
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerifyReport {
        theorem: id.into(),
        n: res.n,
        q,
        ells: ells.clone(),
        summary: res.summary.clone(),
        not_constructed: res.not_constructed.clone(),
        triples: vec![],
        norm_one: BTreeMap::new(),
        symbolic,
    };

    let need = symplectic_order(res.n as u32, q as u64);
    if need > budget as u128 {
        for t in &res.triples {
            for &ell in &ells {
                report.triples.push(TripleReport {
                    subgroup: t.subgroup.clone(),
                    character: t.character.clone(),
                    ell,
                    claim: Claim::Irreducible,
                    outcome: Outcome::UndecidableAtDeskScale,
                    justification: vec![ev("budget", format!("|Sp{}({q})| = {need} exceeds budget {budget}", 2 * res.n))],
                });
            }
        }
        return Ok(report);
    }

    let ctx = GroupContext::build(res.n, q, budget)?;
    let tg = &ctx.table;
    let mut subs: BTreeMap<String, SubData> = BTreeMap::new();
    for h in &res.subgroups {
        let sc = ctx.subgroup(h)?;
        let lift = tg
            .irreducibles()
            .par_iter()
            .map(|chi| lift_filters(chi, &sc.table, &sc.fusion))
            .collect::<Result<Vec<_>>>()?;
        let ones: Vec<String> = (0..tg.len())
            .filter(|&i| tg.irreducibles()[i].degree() > 1 && lift[i].restriction_irreducible)
            .map(|i| ctx.label(i))
            .collect();
        report.norm_one.insert(h.clone(), ones);
        subs.insert(h.clone(), SubData { order: sc.group.order() as u128, lift });
    }

    let listed_subgroups: BTreeSet<&str> = res.triples.iter().map(|t| t.subgroup.as_str()).collect();
    let push = |r: &mut VerifyReport, t: TripleReport| r.triples.push(t);

    for &ell in &ells {
        // Listed characters.
        for t in &res.triples {
            let sd = &subs[&t.subgroup];
            let Some(expr) = &t.character else {
                let hits = sd.certain(tg, ell);
                let names: Vec<String> = hits.iter().map(|&i| ctx.label(i)).collect();
                let (outcome, detail) = if !hits.is_empty() {
                    (Outcome::Confirmed, format!("irreducible on H: {}", names.join(", ")))
                } else if ell == 0 {
                    (Outcome::Refuted, "no nonlinear chi has norm 1".to_string())
                } else {
                    (Outcome::UndecidableAtDeskScale, "no lifted character is certain; needs IBr".to_string())
                };
                push(
                    &mut report,
                    TripleReport {
                        subgroup: t.subgroup.clone(),
                        character: None,
                        ell,
                        claim: Claim::SomeCharacter,
                        outcome,
                        justification: vec![ev("norm", detail)],
                    },
                );
                continue;
            };
            let form = form_of(&ctx, expr)?;
            let admits = t.ell.admits(ell);
            let (claim, outcome, just) = match form {
                Form::Plain(i) => {
                    let lf = &sd.lift[i];
                    let d = tg.irreducibles()[i].degree();
                    let mut j = vec![ev("norm", format!("<chi|H, chi|H> = {}", fmt_ratio(&lf.norm)))];
                    let certain = reduction_stays_irreducible(ell, sd.order, d);
                    let outcome = if !lf.restriction_irreducible {
                        if ell > 0 {
                            j.push(ev("lift filter (irreducible lift)", "chi|H is reducible, so chi^|H is reducible"));
                        }
                        if admits {
                            Outcome::Refuted
                        } else {
                            Outcome::Confirmed
                        }
                    } else if let Some(why) = certain {
                        if ell > 0 {
                            j.push(ev("reduction mod l", why));
                        }
                        if admits {
                            Outcome::Confirmed
                        } else {
                            Outcome::Refuted
                        }
                    } else {
                        j.push(ev("reduction mod l", "chi|H is irreducible; its reduction needs IBr(H)"));
                        Outcome::UndecidableAtDeskScale
                    };
                    (if admits { Claim::Irreducible } else { Claim::NotIrreducible }, outcome, j)
                }
                Form::MinusOne(i) => {
                    if !admits {
                        continue;
                    }
                    let lf = &sd.lift[i];
                    let mut j = vec![ev("norm", format!("<chi|H, chi|H> = {}", fmt_ratio(&lf.norm)))];
                    let outcome = if lf.minus_linear_excluded {
                        j.push(ev("lift filter (minus linear)", "chi|H - lambda is not irreducible for any linear lambda or 0"));
                        Outcome::Refuted
                    } else {
                        j.push(ev("lift filter (minus linear)", "passes; deciding chi^ - 1 needs IBr"));
                        Outcome::UndecidableAtDeskScale
                    };
                    (Claim::Irreducible, outcome, j)
                }
            };
            push(
                &mut report,
                TripleReport {
                    subgroup: t.subgroup.clone(),
                    character: Some(expr.clone()),
                    ell,
                    claim,
                    outcome,
                    justification: just,
                },
            );
        }

        // Nothing else on the listed subgroups.
        for h in &listed_subgroups {
            let named: Vec<&ExpectedTriple> =
                res.triples.iter().filter(|t| t.subgroup == *h && t.character.is_some()).collect();
            if named.is_empty() {
                continue;
            }
            let mut listed = BTreeSet::new();
            for t in named.iter().filter(|t| t.ell.admits(ell)) {
                if let Form::Plain(i) = form_of(&ctx, t.character.as_ref().unwrap())? {
                    listed.insert(i);
                }
            }
            let extra: Vec<String> =
                subs[*h].certain(tg, ell).into_iter().filter(|i| !listed.contains(i)).map(|i| ctx.label(i)).collect();
            let (outcome, detail) = if !extra.is_empty() {
                (Outcome::Refuted, format!("also irreducible on H: {}", extra.join(", ")))
            } else if ell == 0 {
                (Outcome::Confirmed, "every other nonlinear chi has norm >= 2".to_string())
            } else {
                (Outcome::UndecidableAtDeskScale, "non-lifting Brauer characters are not covered".to_string())
            };
            push(
                &mut report,
                TripleReport {
                    subgroup: h.to_string(),
                    character: None,
                    ell,
                    claim: Claim::Exhaustive,
                    outcome,
                    justification: vec![ev("norm", detail)],
                },
            );
        }

        // Subgroups the statement leaves out.
        for h in res.subgroups.iter().filter(|h| !listed_subgroups.contains(h.as_str())) {
            let hits: Vec<String> = subs[h].certain(tg, ell).into_iter().map(|i| ctx.label(i)).collect();
            let (outcome, detail) = if !hits.is_empty() {
                (Outcome::Refuted, format!("irreducible on H: {}", hits.join(", ")))
            } else if ell == 0 {
                (Outcome::Confirmed, "every nonlinear chi has norm >= 2".to_string())
            } else {
                (Outcome::UndecidableAtDeskScale, "non-lifting Brauer characters are not covered".to_string())
            };
            push(
                &mut report,
                TripleReport {
                    subgroup: h.clone(),
                    character: None,
                    ell,
                    claim: Claim::NoCharacter,
                    outcome,
                    justification: vec![ev("norm", detail)],
                },
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn screen_bounds() {
        // Weil degrees of Sp6(4) against H = Sp6(2): 𝔪(H) = 512.
        let cat = Catalog::builtin();
        let at4 = |n: &str| cat.get(n).unwrap().at(4) as u64;
        let degs: Vec<u64> = ["alpha_3", "beta_3", "rho1_3", "rho2_3", "zeta_3", "tau_3"].iter().map(|n| at4(n)).collect();
        assert_eq!(degs[0], 378);
        let h = SubgroupDescriptor { name: "Sp6(2)".into(), order: 1_451_520, centre: 1, max_degree: Some(512) };
        let s = degree_screen(&degs, &h);
        assert_eq!(s.survivors, vec![0, 1]);
        assert!(s.excluded.iter().all(|(_, e)| e.test == "degree screen m(H)"));

        let h = SubgroupDescriptor { name: "G".into(), order: 720, centre: 1, max_degree: None };
        assert_eq!(degree_screen(&[1, 5, 16, 27], &h).survivors, vec![0, 1, 2]);

        let sym = symbolic_screen(cat, "SL2(q^3).3", "m_SL2q3_3", "d_Sp6", 4).unwrap();
        assert!(sym.holds);
        assert!(!symbolic_screen(cat, "SL2(q^3).3", "m_SL2q3_3", "d_Sp6", 2).unwrap().holds);
    }

    #[test]
    fn reduction() {
        assert!(reduction_stays_irreducible(5, 12096, 7).is_some());
        assert!(reduction_stays_irreducible(7, 12096, 7).is_some());
        assert!(reduction_stays_irreducible(3, 12096, 7).is_none());
        assert!(reduction_stays_irreducible(3, 12096, 27).is_some());
        assert_eq!(ell_part(12096, 2), 64);
    }

    #[test]
    fn data_loads() {
        let p = published().unwrap();
        assert_eq!(p.iter().map(|t| t.id.as_str()).collect::<Vec<_>>(), ["1.2", "1.3", "1.4", "1.5"]);
        assert!(matches!(published_result("9.9"), Err(Error::UnknownTheorem(_))));
        let n = notation().unwrap();
        assert_eq!(n.sp6.len(), 6);
        assert_eq!(n.sp6[0].others["white"].as_deref(), Some("chi4"));
        assert!(EllCondition::Keyword("all".into()).admits(7));
        assert!(!EllCondition::List(vec![0, 5]).admits(7));
    }
}
