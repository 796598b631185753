//! Weil characters of Sp_2n(q), q even, from the kernel-dimension formulas
//!
//!   τ^i(g) = (1/(q−1)) Σ_j δ̃^{ij} q^{dim ker(g−δ^j)} − 2[i = 0]
//!   ζ^i(g) = (1/(q+1)) Σ_j ξ̃^{ij} (−q)^{dim ker(g−ξ^j)}
//!
//! with δ̃ = ζ_m^{m/(q−1)} and ξ̃ = ζ_m^{m/(q+1)} inside the table's ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::{inner_product, CharTable, ClassFunction, ClassInfo, CycInt, CycRing};
use crate::error::{Error, Result};
use crate::grp::parabolic::{z_character_orbits, ParabolicData, ZOrbits};
use crate::grp::{fingerprint, ClassData, Group};
use crate::qpoly::catalog_lookup;

/// Kernel dimensions of g − δ^j over GF(q) and of g − ξ^j over GF(q²).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelDims {
    pub base: Vec<u8>,
    pub ext: Vec<u8>,
}

pub fn kernel_dims(g: &Group, x: crate::grp::mat::Code) -> KernelDims {
    let fp = fingerprint(&g.space, x);
    KernelDims { base: fp.ker_base, ext: fp.ker_ext }
}

#[derive(Clone, Debug)]
pub struct WeilContext {
    pub n: usize,
    pub q: u32,
    pub ring: Arc<CycRing>,
}

impl WeilContext {
    pub fn new(n: usize, q: u32, ring: Arc<CycRing>) -> Result<WeilContext> {
        let m = ring.modulus();
        if !m.is_multiple_of(q - 1) || !m.is_multiple_of(q + 1) {
            return Err(Error::Unsupported(format!(
                "ring Z[ζ_{m}] lacks roots of unity of order {} and {}",
                q - 1,
                q + 1
            )));
        }
        Ok(WeilContext { n, q, ring })
    }

    /// δ̃^k.
    pub fn delta(&self, k: i64) -> CycInt {
        CycInt::root(&self.ring, k * (self.ring.modulus() / (self.q - 1)) as i64)
    }

    /// ξ̃^k.
    pub fn xi(&self, k: i64) -> CycInt {
        CycInt::root(&self.ring, k * (self.ring.modulus() / (self.q + 1)) as i64)
    }

    pub fn tau(&self, k: &KernelDims, i: u32) -> Result<CycInt> {
        let q = self.q;
        if i > q - 2 {
            return Err(Error::OutOfRange { what: "tau index", index: i as usize });
        }
        let mut acc = CycInt::zero(&self.ring);
        for j in 0..q - 1 {
            let term = self.delta((i * j) as i64).scale((q as i64).pow(k.base[j as usize] as u32));
            acc = acc.add(&term);
        }
        let mut v = exact_div(&acc, (q - 1) as i64)?;
        if i == 0 {
            v = v.sub(&CycInt::from_int(&self.ring, 2));
        }
        Ok(v)
    }

    pub fn zeta(&self, k: &KernelDims, i: u32) -> Result<CycInt> {
        let q = self.q;
        if i > q {
            return Err(Error::OutOfRange { what: "zeta index", index: i as usize });
        }
        let mut acc = CycInt::zero(&self.ring);
        for j in 0..=q {
            let term = self.xi((i * j) as i64).scale((-(q as i64)).pow(k.ext[j as usize] as u32));
            acc = acc.add(&term);
        }
        exact_div(&acc, (q + 1) as i64)
    }
}

fn exact_div(x: &CycInt, d: i64) -> Result<CycInt> {
    if x.coeffs().iter().any(|c| c % d != 0) {
        return Err(Error::NonIntegral(format!("Weil sum not divisible by {d}")));
    }
    CycInt::from_coeffs(x.ring(), x.coeffs().iter().map(|c| c / d).collect())
}

/// Which family a formula value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Tau,
    Zeta,
}

/// Evaluates the formula on class representatives.
pub fn weil_class_function(
    ctx: &WeilContext,
    g: &Group,
    cd: &ClassData,
    info: &Arc<ClassInfo>,
    family: Family,
    i: u32,
) -> Result<ClassFunction> {
    let values = cd
        .classes
        .iter()
        .map(|c| {
            let k = kernel_dims(g, c.rep);
            match family {
                Family::Tau => ctx.tau(&k, i),
                Family::Zeta => ctx.zeta(&k, i),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ClassFunction::new(info.clone(), values)
}

/// Evaluates every formula at every element of g and checks that the value
/// only depends on the conjugacy class. Returns the number of elements
/// checked, or the first offending (element ordinal, class).
pub fn check_class_functions(ctx: &WeilContext, g: &Group, cd: &ClassData) -> Result<u64> {
    let q = ctx.q;
    let profile = |k: &KernelDims| -> Result<Vec<CycInt>> {
        let mut out = vec![];
        for i in 0..=q - 2 {
            out.push(ctx.tau(k, i)?);
        }
        for i in 0..=q {
            out.push(ctx.zeta(k, i)?);
        }
        Ok(out)
    };
    let reps: Vec<Vec<CycInt>> = cd
        .classes
        .iter()
        .map(|c| profile(&kernel_dims(g, c.rep)))
        .collect::<Result<_>>()?;
    let dims: Vec<KernelDims> = (0..g.order() as usize)
        .into_par_iter()
        .map(|x| kernel_dims(g, g.element(x)))
        .collect();
    let mut cache: HashMap<KernelDims, Vec<CycInt>> = HashMap::new();
    for (x, k) in dims.iter().enumerate() {
        if !cache.contains_key(k) {
            cache.insert(k.clone(), profile(k)?);
        }
        let c = cd.class_of_ordinal(x);
        if cache[k] != reps[c] {
            return Err(Error::Data(format!(
                "Weil formula differs between element {x} and the representative of class {c}"
            )));
        }
    }
    Ok(dims.len() as u64)
}

/// The named Weil characters located in a computed table.
#[derive(Clone, Debug)]
pub struct WeilCharacters {
    pub n: usize,
    pub q: u32,
    /// name → (row in the table, character)
    pub named: BTreeMap<String, (usize, ClassFunction)>,
    pub zeta0: ClassFunction,
    pub tau0: ClassFunction,
}

impl WeilCharacters {
    pub fn get(&self, name: &str) -> Option<&ClassFunction> {
        self.named.get(name).map(|x| &x.1)
    }

    pub fn row(&self, name: &str) -> Option<usize> {
        self.named.get(name).map(|x| x.0)
    }
}

fn find_row(t: &CharTable, f: &ClassFunction, name: &str) -> Result<usize> {
    let hits: Vec<usize> = (0..t.len())
        .filter(|&r| t.irreducibles()[r].values() == f.values())
        .collect();
    match hits.len() {
        1 => Ok(hits[0]),
        0 => Err(Error::Unidentified(name.to_string())),
        k => Err(Error::Ambiguous(name.to_string(), k)),
    }
}

/// Splits τ^0 and ζ^0 into their two constituents by inner products with
/// the table and names everything by degree.
pub fn weil_constituents(g: &Group, cd: &ClassData, t: &CharTable) -> Result<WeilCharacters> {
    let (n, q) = (g.n(), g.q());
    let ctx = WeilContext::new(n, q, t.ring().clone())?;
    let info = t.info();
    let mut named = BTreeMap::new();

    let mut split = |f: &ClassFunction, names: [&str; 2]| -> Result<()> {
        let mults = t.decompose(f)?;
        let rows: Vec<usize> = (0..t.len()).filter(|&r| mults[r] != Ratio::from_integer(0)).collect();
        if rows.len() != 2 || rows.iter().any(|&r| mults[r] != Ratio::from_integer(1)) {
            return Err(Error::Unidentified(format!("{} + {}", names[0], names[1])));
        }
        for name in names {
            let want = catalog_lookup(&format!("{name}_{n}"))?.at(q as i64);
            let hit: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&r| t.irreducibles()[r].degree() as i128 == want)
                .collect();
            if hit.len() != 1 {
                return Err(Error::Unidentified(format!("{name}_{n}")));
            }
            named.insert(name.to_string(), (hit[0], t.irreducibles()[hit[0]].clone()));
        }
        Ok(())
    };
    let zeta0 = weil_class_function(&ctx, g, cd, info, Family::Zeta, 0)?;
    let tau0 = weil_class_function(&ctx, g, cd, info, Family::Tau, 0)?;
    split(&zeta0, ["alpha", "beta"])?;
    split(&tau0, ["rho1", "rho2"])?;
    for i in 1..=q / 2 {
        let f = weil_class_function(&ctx, g, cd, info, Family::Zeta, i)?;
        let row = find_row(t, &f, &format!("zeta{i}"))?;
        named.insert(format!("zeta{i}"), (row, f));
    }
    for i in 1..=(q - 2) / 2 {
        let f = weil_class_function(&ctx, g, cd, info, Family::Tau, i)?;
        let row = find_row(t, &f, &format!("tau{i}"))?;
        named.insert(format!("tau{i}"), (row, f));
    }
    Ok(WeilCharacters { n, q, named, zeta0, tau0 })
}

/// Multiplicity of each P_j-orbit of Irr(Z_j) in χ|_{Z_j}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitProfile {
    pub j: usize,
    /// (orbit label, orbit size, multiplicity), in orbit order
    pub entries: Vec<(String, u64, i64)>,
}

impl OrbitProfile {
    /// Σ multiplicity · |orbit|, which must equal χ(1).
    pub fn total(&self) -> i64 {
        self.entries.iter().map(|(_, s, m)| *s as i64 * m).sum()
    }

    pub fn multiplicity(&self, label: &str) -> i64 {
        self.entries
            .iter()
            .filter(|e| e.0 == label)
            .map(|e| e.2)
            .sum()
    }

    /// Nonzero multiplicities by label.
    pub fn support(&self) -> BTreeMap<String, i64> {
        let mut out = BTreeMap::new();
        for (l, _, m) in &self.entries {
            if *m != 0 {
                *out.entry(l.clone()).or_insert(0) += m;
            }
        }
        out
    }
}

/// The values of χ on the elements z_C of Z_j, indexed like `orbits.characters`.
fn values_on_z(
    chi: &ClassFunction,
    g: &Group,
    cd: &ClassData,
    p: &ParabolicData,
    orbits: &ZOrbits,
) -> Result<Vec<i64>> {
    orbits
        .characters
        .iter()
        .map(|c| {
            let z = crate::grp::parabolic::z_element(&g.space, p.j, c);
            let class = cd
                .class_of(g, z)
                .ok_or_else(|| Error::NotInGroup("Z element".into()))?;
            chi.value(class)
                .as_int()
                .ok_or_else(|| Error::NonIntegral("irrational value on a 2-element".into()))
        })
        .collect()
}

fn lambda(p: &ParabolicData, y: &[u8], c: &[u8]) -> i64 {
    let space = &p.p.space;
    let s = y.iter().zip(c).fold(0u8, |acc, (&a, &b)| acc ^ space.fmul(a, b));
    if space.field.base.trace_f2(crate::field::FieldElem(s as u16)) == 0 {
        1
    } else {
        -1
    }
}

/// Decomposes χ|_{Z_j} into P_j-orbit sums. Every λ_Y is tested, so the
/// result also certifies that the multiplicities are constant on orbits.
pub fn orbit_restriction_profile(
    chi: &ClassFunction,
    g: &Group,
    cd: &ClassData,
    p: &ParabolicData,
) -> Result<OrbitProfile> {
    let orbits = z_character_orbits(p);
    let vals = values_on_z(chi, g, cd, p, &orbits)?;
    let size = orbits.characters.len() as i64;
    let mult: Vec<i64> = orbits
        .characters
        .par_iter()
        .map(|y| {
            let s: i64 = orbits
                .characters
                .iter()
                .zip(&vals)
                .map(|(c, v)| v * lambda(p, y, c))
                .sum();
            if s % size != 0 {
                return Err(Error::NonIntegral(format!("multiplicity {s}/{size}")));
            }
            Ok(s / size)
        })
        .collect::<Result<_>>()?;
    let mut entries = vec![];
    for o in &orbits.orbits {
        let m = mult[o.members[0]];
        if o.members.iter().any(|&k| mult[k] != m) {
            return Err(Error::NonIntegral(format!("orbit {} is not uniform", o.label)));
        }
        entries.push((o.label.clone(), o.size, m));
    }
    Ok(OrbitProfile { j: p.j, entries })
}

/// Σ_{i=0}^{q} ζ^i, whose value is (−q)^{dim ker(g−1)}.
pub fn zeta_total(ctx: &WeilContext, g: &Group, cd: &ClassData, info: &Arc<ClassInfo>) -> Result<ClassFunction> {
    let mut acc = weil_class_function(ctx, g, cd, info, Family::Zeta, 0)?;
    for i in 1..=ctx.q {
        acc = acc.add(&weil_class_function(ctx, g, cd, info, Family::Zeta, i)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The two displayed identities for the unsuperscripted ζ_2 on Z = Z_2 of
/// Sp_4(q), read with ζ_2 = Σ_i ζ_2^i:
///   ζ_2|_Z = 1_Z + (q+1) ω_1 + (2q+2) ω_2^−
///   ζ_2|_Z = (q+1) α_2|_Z + (q+1) β_2|_Z − q 1_Z
pub fn zeta2_named_check(
    g: &Group,
    cd: &ClassData,
    t: &CharTable,
    w: &WeilCharacters,
    p2: &ParabolicData,
) -> Result<Vec<NamedCheck>> {
    if g.n() != 2 || p2.j != 2 {
        return Err(Error::Unsupported("the ζ_2 check lives on Z_2 of Sp_4(q)".into()));
    }
    let q = g.q() as i64;
    let ctx = WeilContext::new(2, g.q(), t.ring().clone())?;
    let total = zeta_total(&ctx, g, cd, t.info())?;
    let orbits = z_character_orbits(p2);
    let zt = values_on_z(&total, g, cd, p2, &orbits)?;
    let za = values_on_z(w.get("alpha").unwrap(), g, cd, p2, &orbits)?;
    let zb = values_on_z(w.get("beta").unwrap(), g, cd, p2, &orbits)?;

    // orbit sums ω on Z
    let omega = |label: &str| -> Vec<i64> {
        let o = orbits.orbits.iter().find(|o| o.label == label);
        orbits
            .characters
            .iter()
            .map(|c| {
                o.map_or(0, |o| {
                    o.members
                        .iter()
                        .map(|&k| lambda(p2, &orbits.characters[k], c))
                        .sum()
                })
            })
            .collect()
    };
    let (w1, w2m) = (omega("1"), omega("2-"));
    let first: Vec<i64> = (0..zt.len()).map(|k| 1 + (q + 1) * w1[k] + (2 * q + 2) * w2m[k]).collect();
    let second: Vec<i64> = (0..zt.len()).map(|k| (q + 1) * (za[k] + zb[k]) - q).collect();
    Ok(vec![
        NamedCheck {
            name: "zeta_2|Z = 1 + (q+1) w1 + (2q+2) w2-".into(),
            passed: zt == first,
            detail: format!("q={q}, |Z|={}", zt.len()),
        },
        NamedCheck {
            name: "zeta_2|Z = (q+1) alpha_2|Z + (q+1) beta_2|Z - q".into(),
            passed: zt == second,
            detail: format!("q={q}, |Z|={}", zt.len()),
        },
    ])
}

/// ⟨f, f⟩ for the difference ζ^0 − α − β (and τ^0 − ρ1 − ρ2), which must vanish.
pub fn constituent_residuals(w: &WeilCharacters) -> Result<(Ratio<i64>, Ratio<i64>)> {
    let diff = |f: &ClassFunction, a: &str, b: &str| -> Result<Ratio<i64>> {
        let d = f
            .add(&w.get(a).unwrap().scale(-1))?
            .add(&w.get(b).unwrap().scale(-1))?;
        inner_product(&d, &d)
    };
    Ok((diff(&w.zeta0, "alpha", "beta")?, diff(&w.tau0, "rho1", "rho2")?))
}

/// Degrees at the identity from the formulas, for any n and q (no group
/// needed): dim ker(1 − λ) = 2n for λ = 1 and 0 otherwise.
pub fn identity_degrees(n: usize, q: u32) -> Result<BTreeMap<String, i64>> {
    let m = num_integer::lcm(q - 1, q + 1);
    let ring = CycRing::new(m)?;
    let ctx = WeilContext::new(n, q, ring)?;
    let mut base = vec![0u8; (q - 1) as usize];
    base[0] = 2 * n as u8;
    let mut ext = vec![0u8; (q + 1) as usize];
    ext[0] = 2 * n as u8;
    let k = KernelDims { base, ext };
    let mut out = BTreeMap::new();
    let int = |v: CycInt| v.as_int().ok_or_else(|| Error::NonIntegral("degree".into()));
    out.insert("tau0".to_string(), int(ctx.tau(&k, 0)?)?);
    out.insert("zeta0".to_string(), int(ctx.zeta(&k, 0)?)?);
    if q > 2 {
        out.insert("tau1".to_string(), int(ctx.tau(&k, 1)?)?);
    }
    out.insert("zeta1".to_string(), int(ctx.zeta(&k, 1)?)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_values() {
        let d = identity_degrees(3, 4).unwrap();
        assert_eq!(d["tau0"], 1364);
        assert_eq!(d["tau1"], 1365);
        let d = identity_degrees(3, 2).unwrap();
        assert_eq!(d["tau0"], 62);
        assert_eq!(d["zeta0"], 22);
        assert_eq!(d["zeta1"], 21);
    }

    #[test]
    fn formula_degrees_match_catalog() {
        for q in [2u32, 4, 8, 16] {
            for n in [2usize, 3] {
                let d = identity_degrees(n, q).unwrap();
                let at = |s: &str| catalog_lookup(&format!("{s}_{n}")).unwrap().at(q as i64) as i64;
                assert_eq!(d["zeta0"], at("alpha") + at("beta"), "n={n} q={q}");
                assert_eq!(d["tau0"], at("rho1") + at("rho2"), "n={n} q={q}");
                assert_eq!(d["zeta1"], at("zeta"));
                if q > 2 {
                    assert_eq!(d["tau1"], at("tau"));
                }
            }
        }
    }
}
