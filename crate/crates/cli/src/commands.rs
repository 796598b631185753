use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{Context, Result};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::Value;
use spweil::chartab::{dixon_character_table, dixon_with_ring, inner_product};
use spweil::classify::{
    brute_force_norm_one, classify_subgroup, ordinary_classification, verify_published, CandidateVerdict,
    Evidence, GroupContext, SubgroupContext, Verdict,
};
use spweil::fusion::table2::{check_table2, table2, ConsistencyItem, Status};
use spweil::fusion::{exact_fusion, integrality_audit, possible_fusions, structural_violations};
use spweil::grp::classes::conjugacy_classes;
use spweil::grp::parabolic::{parabolic_decomposition, z_character_orbits};
use spweil::grp::subgroups::{from_generator_file, maximal_subgroup_names, named_subgroup, GeneratorFile};
use spweil::grp::{symplectic_group, Group};
use spweil::qpoly::identities::verify_catalog_identities;
use spweil::qpoly::catalog_lookup;
use spweil::weil::{
    check_class_functions, constituent_residuals, identity_degrees, orbit_restriction_profile, weil_constituents,
    zeta2_named_check, NamedCheck, OrbitProfile, WeilContext,
};

use crate::config::{is_file_selector, RunConfig};

/// What a command produces: a JSON result, a text rendering, and whether
/// every check held. `table` also carries the serialized table itself.
pub struct Output {
    pub result: Value,
    pub text: String,
    pub passed: bool,
    pub table: Option<String>,
}

fn fmt_ratio(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn read_generator_file(path: &str) -> Result<GeneratorFile> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    serde_json::from_str(&s).with_context(|| format!("parsing generator file {path}"))
}

fn load_subgroup(g: &Group, selector: &str) -> Result<Group> {
    if is_file_selector(selector) {
        Ok(from_generator_file(g, &read_generator_file(selector)?)?)
    } else {
        Ok(named_subgroup(g, selector)?)
    }
}

fn subgroup_context(ctx: &GroupContext, selector: &str) -> Result<SubgroupContext> {
    if !is_file_selector(selector) {
        return Ok(ctx.subgroup(selector)?);
    }
    let group = load_subgroup(&ctx.group, selector)?;
    let classes = conjugacy_classes(&group);
    let table = dixon_with_ring(&group, &classes, ctx.table.ring().clone())?;
    let fusion = exact_fusion(&group, &classes, &ctx.group, &ctx.classes)?;
    Ok(SubgroupContext { name: group.name.clone(), group, classes, table, fusion, parabolic: None })
}

// ---------------------------------------------------------------------------
// table

#[derive(Serialize)]
struct TableSummary {
    group: String,
    order: u64,
    classes: usize,
    class_orders: Vec<u32>,
    centralizers: Vec<u64>,
    degrees: Vec<u64>,
    sum_of_squares: u128,
    row_orthogonality: bool,
    column_orthogonality: bool,
}

pub fn table(cfg: &RunConfig) -> Result<Output> {
    let g = symplectic_group(cfg.n, cfg.q, cfg.budget)?;
    let t = match &cfg.subgroup {
        None => dixon_character_table(&g, &conjugacy_classes(&g))?,
        Some(sel) => {
            let h = load_subgroup(&g, sel)?;
            dixon_character_table(&h, &conjugacy_classes(&h))?
        }
    };
    let info = t.info();
    let degrees = t.degrees();
    let s = TableSummary {
        group: info.group.clone(),
        order: info.order,
        classes: info.len(),
        class_orders: info.classes.iter().map(|c| c.order).collect(),
        centralizers: info.classes.iter().map(|c| c.centralizer).collect(),
        sum_of_squares: degrees.iter().map(|&d| d as u128 * d as u128).sum(),
        degrees,
        row_orthogonality: t.check_orthogonality().is_ok(),
        column_orthogonality: t.check_column_orthogonality().is_ok(),
    };
    let passed = s.row_orthogonality && s.column_orthogonality && s.sum_of_squares == s.order as u128;
    let mut text = format!("{} of order {}: {} classes\n", s.group, s.order, s.classes);
    let _ = writeln!(text, "degrees {:?}", s.degrees);
    let _ = writeln!(text, "sum of squared degrees {}", s.sum_of_squares);
    let _ = writeln!(
        text,
        "row orthogonality {}, column orthogonality {}",
        ok(s.row_orthogonality),
        ok(s.column_orthogonality)
    );
    Ok(Output { result: serde_json::to_value(&s)?, text, passed, table: Some(t.to_json()?) })
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

// ---------------------------------------------------------------------------
// weil

#[derive(Serialize)]
struct Constituent {
    name: String,
    row: usize,
    degree: u64,
    catalog_degree: Option<i64>,
    norm: String,
    profile: OrbitProfile,
}

#[derive(Serialize)]
struct IdentityDegree {
    q: u32,
    name: String,
    formula: i64,
    catalog: i64,
}

#[derive(Serialize)]
struct WeilResult {
    elements_checked: u64,
    constituents: Vec<Constituent>,
    residual_zeta0: String,
    residual_tau0: String,
    z_orbits: Vec<(String, u64)>,
    identity_degrees: Vec<IdentityDegree>,
    named_checks: Vec<NamedCheck>,
}

/// Catalog entry for the degree of a Weil name at rank n.
fn catalog_name(name: &str, n: usize) -> String {
    let base = name.trim_end_matches(|c: char| c.is_ascii_digit());
    match base {
        "zeta" | "tau" => format!("{base}_{n}"),
        _ => format!("{name}_{n}"),
    }
}

pub fn weil(cfg: &RunConfig) -> Result<Output> {
    let g = symplectic_group(cfg.n, cfg.q, cfg.budget)?;
    let cd = conjugacy_classes(&g);
    let t = dixon_character_table(&g, &cd)?;
    let ctx = WeilContext::new(cfg.n, cfg.q, t.ring().clone())?;
    let elements_checked = check_class_functions(&ctx, &g, &cd)?;
    let w = weil_constituents(&g, &cd, &t)?;
    let p = parabolic_decomposition(&g, cfg.n)?;
    let orbits = z_character_orbits(&p);

    let mut constituents = vec![];
    for (name, (row, chi)) in &w.named {
        let catalog_degree = catalog_lookup(&catalog_name(name, cfg.n)).ok().map(|e| e.at(cfg.q as i64) as i64);
        constituents.push(Constituent {
            name: name.clone(),
            row: *row,
            degree: chi.degree(),
            catalog_degree,
            norm: fmt_ratio(&inner_product(chi, chi)?),
            profile: orbit_restriction_profile(chi, &g, &cd, &p)?,
        });
    }
    let (rz, rt) = constituent_residuals(&w)?;

    let mut degrees = vec![];
    if cfg.n >= 2 {
        for q in [2u32, 4, 8, 16] {
            for (name, formula) in identity_degrees(cfg.n, q)? {
                let cat = match name.as_str() {
                    "zeta0" | "tau0" => format!("{name}_{}", cfg.n),
                    _ => catalog_name(&name, cfg.n),
                };
                let catalog = catalog_lookup(&cat)?.at(q as i64) as i64;
                degrees.push(IdentityDegree { q, name, formula, catalog });
            }
        }
    }
    let named_checks = if cfg.n == 2 { zeta2_named_check(&g, &cd, &t, &w, &p)? } else { vec![] };

    let r = WeilResult {
        elements_checked,
        constituents,
        residual_zeta0: fmt_ratio(&rz),
        residual_tau0: fmt_ratio(&rt),
        z_orbits: orbits.orbits.iter().map(|o| (o.label.clone(), o.size)).collect(),
        identity_degrees: degrees,
        named_checks,
    };
    let passed = r.elements_checked == g.order()
        && r.residual_zeta0 == "0"
        && r.residual_tau0 == "0"
        && r.constituents.iter().all(|c| {
            c.norm == "1" && c.catalog_degree.is_none_or(|d| d == c.degree as i64) && c.profile.total() == c.degree as i64
        })
        && r.identity_degrees.iter().all(|d| d.formula == d.catalog)
        && r.named_checks.iter().all(|c| c.passed);

    let mut text = format!("Sp{}({}): formulas are class functions on {} elements\n", 2 * cfg.n, cfg.q, r.elements_checked);
    let _ = writeln!(text, "zeta0 - alpha - beta has norm {}, tau0 - rho1 - rho2 has norm {}", r.residual_zeta0, r.residual_tau0);
    let _ = writeln!(text, "P{} orbits on Irr(Z): {:?}", cfg.n, r.z_orbits);
    for c in &r.constituents {
        let support: Vec<String> = c.profile.support().iter().map(|(l, m)| format!("{m}*{l}")).collect();
        let _ = writeln!(text, "  {:<7} row {:>3}  degree {:>6}  on Z: {}", c.name, c.row, c.degree, support.join(" + "));
    }
    for d in r.identity_degrees.iter().filter(|d| d.formula != d.catalog) {
        let _ = writeln!(text, "  MISMATCH {} at q={}: formula {} catalog {}", d.name, d.q, d.formula, d.catalog);
    }
    for c in &r.named_checks {
        let _ = writeln!(text, "  {}: {} ({})", c.name, ok(c.passed), c.detail);
    }
    let _ = writeln!(text, "{}", if passed { "all checks hold" } else { "SOME CHECKS FAILED" });
    Ok(Output { result: serde_json::to_value(&r)?, text, passed, table: None })
}

// ---------------------------------------------------------------------------
// fusion

#[derive(Serialize)]
struct FusionResult {
    subgroup: String,
    order: u64,
    fusion: Vec<usize>,
    structural_violations: Vec<String>,
    /// G-character label → ⟨χ|_H, χ|_H⟩
    norms: Vec<(String, String)>,
    audit_violations: usize,
    search_candidates: Vec<usize>,
    search_results: usize,
    search_leaves: u64,
    search_truncated: bool,
    exact_found_by_search: bool,
    table2: Vec<ConsistencyItem>,
}

pub fn fusion(cfg: &RunConfig) -> Result<Output> {
    let ctx = GroupContext::build(cfg.n, cfg.q, cfg.budget)?;
    let sel = cfg.subgroup.as_deref().context("fusion needs --subgroup")?;
    let sub = subgroup_context(&ctx, sel)?;
    let structural = structural_violations(&sub.fusion, sub.table.info(), ctx.table.info());
    let audit = integrality_audit(&sub.fusion, &ctx.table, &sub.table, true)?;
    let (found, stats) = possible_fusions(&sub.table, &ctx.table, cfg.max_leaves)?;
    let t2 = if (cfg.n, cfg.q) == (3, 2) && sub.name == "G2(2)" {
        check_table2(&table2()?, cfg.q, &sub.fusion, sub.table.info(), ctx.table.info())
    } else {
        vec![]
    };
    let r = FusionResult {
        subgroup: sub.name.clone(),
        order: sub.group.order(),
        fusion: sub.fusion.0.clone(),
        structural_violations: structural,
        norms: audit.norms.iter().enumerate().map(|(i, n)| (ctx.label(i), n.clone())).collect(),
        audit_violations: audit.violations.len(),
        search_candidates: stats.initial.clone(),
        search_results: found.len(),
        search_leaves: stats.leaves,
        search_truncated: stats.truncated,
        exact_found_by_search: found.contains(&sub.fusion),
        table2: t2,
    };
    let passed = r.structural_violations.is_empty()
        && r.audit_violations == 0
        && (r.exact_found_by_search || r.search_truncated)
        && r.table2.iter().all(|i| i.status != Status::Inconsistent);

    let mut text = format!("{} (order {}) into Sp{}({})\n", r.subgroup, r.order, 2 * cfg.n, cfg.q);
    let _ = writeln!(text, "exact fusion {:?}", r.fusion);
    let _ = writeln!(text, "structural violations: {}", r.structural_violations.len());
    let _ = writeln!(text, "integrality audit violations: {}", r.audit_violations);
    let _ = writeln!(
        text,
        "search: {} surviving maps from {} leaves{}, exact map {}",
        r.search_results,
        r.search_leaves,
        if r.search_truncated { " (truncated)" } else { "" },
        if r.exact_found_by_search { "found" } else { "not found" }
    );
    for i in &r.table2 {
        let _ = writeln!(text, "  table: {} {:?} {}", i.check, i.status, i.detail);
    }
    Ok(Output { result: serde_json::to_value(&r)?, text, passed, table: None })
}

// ---------------------------------------------------------------------------
// identities

pub fn identities(_cfg: &RunConfig) -> Result<Output> {
    let r = verify_catalog_identities()?;
    let mut by_group: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for c in &r.checks {
        let e = by_group.entry(c.group.as_str()).or_default();
        e.0 += 1;
        e.1 += c.passed as usize;
    }
    let mut text = format!("{} identity checks\n", r.checks.len());
    for (g, (n, p)) in &by_group {
        let _ = writeln!(text, "  {g:<24} {p}/{n}");
    }
    for f in r.failures() {
        let _ = writeln!(text, "  FAILED {} [{}]: {}", f.name, f.group, f.detail);
    }
    Ok(Output { result: serde_json::to_value(&r)?, text, passed: r.all_passed(), table: None })
}

// ---------------------------------------------------------------------------
// classify

#[derive(Serialize)]
struct SubgroupVerdicts {
    subgroup: String,
    order: u64,
    norm_one: Vec<String>,
    oracle_agrees: bool,
    verdicts: Vec<CandidateVerdict>,
}

/// The evidence line that settled a verdict. Orbit exclusions are decided
/// partway through the chain; everything else by the last step.
fn decisive(v: &CandidateVerdict) -> Option<&Evidence> {
    const FIRED: [&str; 4] = ["meets", "no orbit", "fixes a subspace", "exceeds"];
    if v.verdict == Verdict::ExcludedByOrbitTest {
        if let Some(e) = v.justification.iter().find(|e| FIRED.iter().any(|f| e.detail.contains(f))) {
            return Some(e);
        }
    }
    v.justification.last()
}

pub fn classify(cfg: &RunConfig) -> Result<Output> {
    let ctx = GroupContext::build(cfg.n, cfg.q, cfg.budget)?;
    let ells = cfg.ells_or(&[0]);
    let selectors: Vec<String> = match &cfg.subgroup {
        Some(s) => vec![s.clone()],
        None => maximal_subgroup_names(cfg.n, cfg.q).iter().map(|s| s.to_string()).collect(),
    };
    let mut out = vec![];
    for sel in &selectors {
        let sub = subgroup_context(&ctx, sel)?;
        let screened = ordinary_classification(&ctx.table, &sub.table, &sub.fusion)?;
        let oracle = brute_force_norm_one(&ctx.table, &sub.table, &sub.fusion)?;
        out.push(SubgroupVerdicts {
            subgroup: sub.name.clone(),
            order: sub.group.order(),
            norm_one: screened
                .iter()
                .filter(|&&i| ctx.table.irreducibles()[i].degree() > 1)
                .map(|&i| ctx.label(i))
                .collect(),
            oracle_agrees: screened == oracle,
            verdicts: classify_subgroup(&ctx, &sub, &ells)?,
        });
    }
    let passed = out.iter().all(|s| s.oracle_agrees);
    let mut text = format!("Sp{}({}), l in {:?}\n", 2 * cfg.n, cfg.q, ells);
    for s in &out {
        let _ = writeln!(
            text,
            "{} (order {}): norm one {:?}, oracle {}",
            s.subgroup,
            s.order,
            s.norm_one,
            if s.oracle_agrees { "agrees" } else { "DISAGREES" }
        );
        for v in &s.verdicts {
            let why = decisive(v).map(|e| format!("{}: {}", e.test, e.detail)).unwrap_or_default();
            let verdict = serde_json::to_value(v.verdict)?;
            let _ = writeln!(
                text,
                "  {:<10} {:>6}  l={:<3} {:<28} {}",
                v.character,
                v.degree,
                v.ell,
                verdict.as_str().unwrap_or_default(),
                why
            );
        }
    }
    Ok(Output { result: serde_json::to_value(&out)?, text, passed, table: None })
}

// ---------------------------------------------------------------------------
// verify

pub fn verify(cfg: &RunConfig) -> Result<Output> {
    let thm = cfg.thm.as_deref().context("verify needs --thm")?;
    let ells = (!cfg.ell.is_empty()).then_some(cfg.ell.as_slice());
    let r = verify_published(thm, cfg.q, ells, cfg.budget)?;
    Ok(Output { result: serde_json::to_value(&r)?, text: r.to_text(), passed: r.passed(), table: None })
}

