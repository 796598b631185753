//! Subgroups of an enumerated symplectic group: stabilizers of subspaces and
//! quadratic forms, closures of generator lists, derived subgroups, the
//! field-extension subgroup Sp2(2^k).k, and subgroups shipped as data.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mat::{Code, Mat, MatSpace};
use super::Group;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Gf};

#[derive(Clone, Debug)]
pub enum SubgroupSpec {
    /// Stabilizer of the span of the given coordinate vectors.
    Subspace(Vec<Vec<u8>>),
    /// Stabilizer of the quadratic form polarizing to the symplectic form
    /// with the given values Q(b_i) on the basis e1..en, f1..fn.
    QuadraticForm(Vec<u8>),
    Generators(Vec<Code>),
    /// Normal closure of the commutators of the generators.
    Derived,
}

/// Builds a subgroup of `g` and checks Lagrange.
pub fn subgroup_construct(g: &Group, spec: &SubgroupSpec, name: &str) -> Result<Group> {
    let h = match spec {
        SubgroupSpec::Subspace(vs) => {
            let space = &g.space;
            let r = space.rank(vs);
            filter(g, name, |x| {
                vs.iter().all(|v| {
                    let mut rows = vs.clone();
                    rows.push(space.apply(x, v));
                    space.rank(&rows) == r
                })
            })?
        }
        SubgroupSpec::QuadraticForm(vals) => {
            if vals.len() != g.space.d {
                return Err(Error::Data("quadratic form needs one value per basis vector".into()));
            }
            let space = &g.space;
            let basis: Vec<Vec<u8>> = (0..space.d)
                .map(|i| (0..space.d).map(|j| (i == j) as u8).collect())
                .collect();
            filter(g, name, |x| {
                basis
                    .iter()
                    .zip(vals)
                    .all(|(b, &v)| quad_value(space, vals, &space.apply(x, b)) == v)
            })?
        }
        SubgroupSpec::Generators(gens) => {
            for &x in gens {
                if !g.contains(x) {
                    return Err(Error::NotInGroup(format!("{:?}", g.space.decode(x).rows())));
                }
            }
            Group::closure(g.space.clone(), name, gens.clone(), g.order())?
        }
        SubgroupSpec::Derived => derived(g, name)?,
    };
    debug_assert_eq!(g.order() % h.order(), 0);
    if !g.order().is_multiple_of(h.order()) {
        return Err(Error::Data(format!("|{}| does not divide |{}|", h.name, g.name)));
    }
    Ok(h)
}

/// Q(x) = Σ x_i² Q(b_i) + Σ_{i≤n} x_{e_i} x_{f_i}.
pub fn quad_value(space: &MatSpace, vals: &[u8], x: &[u8]) -> u8 {
    let n = space.n;
    let mut s = 0u8;
    for (i, &xi) in x.iter().enumerate() {
        s ^= space.fmul(space.fmul(xi, xi), vals[i]);
    }
    for i in 0..n {
        s ^= space.fmul(x[i], x[i + n]);
    }
    s
}

/// Q+ = Σ x_i y_i.
pub fn plus_form(space: &MatSpace) -> Vec<u8> {
    vec![0; space.d]
}

/// Q− = Σ_{i<n} x_i y_i + x_n² + x_n y_n + λ y_n², Tr(λ) = 1.
pub fn minus_form(space: &MatSpace) -> Vec<u8> {
    let f = &space.field.base;
    let lam = f.elements().find(|&x| f.trace_f2(x) == 1).expect("trace is onto");
    let mut v = vec![0; space.d];
    v[space.n - 1] = 1;
    v[space.d - 1] = lam.0 as u8;
    v
}

/// Number of singular vectors and the Witt type (+1 or −1) they imply.
pub fn form_type(space: &MatSpace, vals: &[u8]) -> (u64, i32) {
    let zeros = space.vectors().filter(|x| quad_value(space, vals, x) == 0).count() as u64;
    let (q, m) = (space.q() as u64, space.n as u32);
    let plus = q.pow(2 * m - 1) + q.pow(m) - q.pow(m - 1);
    (zeros, if zeros == plus { 1 } else { -1 })
}

fn filter(g: &Group, name: &str, pred: impl Fn(Code) -> bool + Sync) -> Result<Group> {
    let elements: Vec<Code> = g.elements().par_iter().copied().filter(|&x| pred(x)).collect();
    if elements.is_empty() {
        return Err(Error::EmptySubgroup);
    }
    let gens = greedy_generators(&g.space, &elements);
    Ok(Group::from_parts(g.space.clone(), name.to_string(), gens, elements))
}

/// A small generating set for a closed element list (identity first): scan
/// elements of decreasing order and keep any that enlarge the closure.
pub fn greedy_generators(space: &Arc<MatSpace>, elements: &[Code]) -> Vec<Code> {
    let mut by_order: Vec<(u32, Code)> = elements.iter().map(|&x| (space.order(x), x)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut gens = vec![];
    let mut cur = Group::closure(space.clone(), "", vec![], 1).unwrap();
    for (_, x) in by_order {
        if cur.order() as usize == elements.len() {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = Group::closure(space.clone(), "", gens.clone(), elements.len() as u64)
                .expect("generators lie in the subgroup");
        }
    }
    gens
}

fn derived(g: &Group, name: &str) -> Result<Group> {
    let space = &g.space;
    let comm = |a: Code, b: Code| space.mul(space.mul(space.inv(a), space.inv(b)), space.mul(a, b));
    let mut gens: Vec<Code> = vec![];
    for &a in &g.generators {
        for &b in &g.generators {
            let c = comm(a, b);
            if c != space.identity() && !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    loop {
        let h = Group::closure(space.clone(), name, gens.clone(), g.order())?;
        let mut grew = false;
        for &s in &g.generators {
            for &x in &h.generators.clone() {
                let y = space.mul(space.mul(s, x), space.inv(s));
                if !h.contains(y) && !gens.contains(&y) {
                    gens.push(y);
                    grew = true;
                }
            }
        }
        if !grew {
            let elements = h.elements().to_vec();
            let gens = greedy_generators(space, &elements);
            return Ok(Group::from_parts(space.clone(), name.to_string(), gens, elements));
        }
    }
}

/// Sp2(2^k).k inside Sp_{2k}(2): GF(2^k)² viewed over GF(2) with the form
/// Tr(u1 v2 + u2 v1), in the basis e_i = (b_i, 0), f_i = (0, b_i*) with b
/// the polynomial basis and b* its trace-dual basis.
pub fn field_extension_subgroup(g: &Group, name: &str) -> Result<Group> {
    let space = &g.space;
    if space.q() != 2 {
        return Err(Error::Unsupported("field-extension subgroup needs q = 2".into()));
    }
    let k = space.n as u32;
    let f = Gf::new(k)?;
    let basis: Vec<FieldElem> = (0..k).map(|i| FieldElem(1 << i)).collect();
    let dual: Vec<FieldElem> = basis
        .iter()
        .enumerate()
        .map(|(i, _)| {
            f.elements()
                .find(|&y| {
                    basis
                        .iter()
                        .enumerate()
                        .all(|(j, &b)| f.trace_f2(f.mul(b, y)) == (i == j) as u8)
                })
                .expect("trace form is nondegenerate")
        })
        .collect();
    let kk = k as usize;
    // coordinates of (u1, u2): x_i = Tr(u1 b_i*), y_i = Tr(u2 b_i)
    let coords = |u1: FieldElem, u2: FieldElem| -> Vec<u8> {
        let mut v = vec![0u8; 2 * kk];
        for i in 0..kk {
            v[i] = f.trace_f2(f.mul(u1, dual[i]));
            v[kk + i] = f.trace_f2(f.mul(u2, basis[i]));
        }
        v
    };
    let vector = |j: usize| -> (FieldElem, FieldElem) {
        if j < kk {
            (basis[j], FieldElem::ZERO)
        } else {
            (FieldElem::ZERO, dual[j - kk])
        }
    };
    let to_code = |map: &dyn Fn(FieldElem, FieldElem) -> (FieldElem, FieldElem)| -> Code {
        let mut m = Mat::zero(2 * kk);
        for j in 0..2 * kk {
            let (u1, u2) = vector(j);
            let (w1, w2) = map(u1, u2);
            for (r, &v) in coords(w1, w2).iter().enumerate() {
                m.set(r, j, v);
            }
        }
        space.encode(&m)
    };
    let mut gens = vec![];
    for &t in &basis {
        gens.push(to_code(&|u1, u2| (u1 + f.mul(t, u2), u2)));
        gens.push(to_code(&|u1, u2| (u1, u2 + f.mul(t, u1))));
    }
    gens.push(to_code(&|u1, u2| (u2, u1)));
    gens.push(to_code(&|u1, u2| (f.mul(u1, u1), f.mul(u2, u2))));
    for &x in &gens {
        if !space.is_symplectic(x) {
            return Err(Error::NotInGroup("field-extension generator".into()));
        }
    }
    let h = Group::closure(space.clone(), name, gens, g.order())?;
    let expected = (1u64 << k) * ((1u64 << (2 * k)) - 1) * k as u64;
    if h.order() != expected {
        return Err(Error::Data(format!("{name} has order {}, expected {expected}", h.order())));
    }
    Ok(h)
}

/// Generator file: `{version, name, q, n, order, generators, ...}` with
/// matrices given by log indices of their entries, −1 for zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub version: u32,
    pub name: String,
    pub q: u32,
    pub n: usize,
    pub order: u64,
    pub note: String,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub algebra_generators: Vec<Vec<Vec<u8>>>,
}

pub const G2_2_JSON: &str = include_str!("../../data/generators/g2_2.json");

pub fn g2_2_file() -> GeneratorFile {
    serde_json::from_str(G2_2_JSON).expect("shipped generator file parses")
}

/// Subgroup from a generator file; the closure must have the recorded order.
pub fn from_generator_file(g: &Group, file: &GeneratorFile) -> Result<Group> {
    if file.q != g.q() || file.n != g.n() {
        return Err(Error::Data(format!("{} is for Sp{}({})", file.name, 2 * file.n, file.q)));
    }
    let gens = file
        .generators
        .iter()
        .map(|m| g.space.from_log_rows(m))
        .collect::<Result<Vec<_>>>()?;
    let h = subgroup_construct(g, &SubgroupSpec::Generators(gens), &file.name)?;
    if h.order() != file.order {
        return Err(Error::Data(format!(
            "{} closes to order {}, file says {}",
            file.name,
            h.order(),
            file.order
        )));
    }
    Ok(h)
}

fn unit(space: &MatSpace, i: usize) -> Vec<u8> {
    (0..space.d).map(|j| (i == j) as u8).collect()
}

/// Stabilizer of ⟨e1..ej⟩.
pub fn parabolic_subgroup(g: &Group, j: usize) -> Result<Group> {
    if j == 0 || j > g.n() {
        return Err(Error::OutOfRange { what: "parabolic index", index: j });
    }
    let vs = (0..j).map(|i| unit(&g.space, i)).collect();
    subgroup_construct(g, &SubgroupSpec::Subspace(vs), &format!("P{j}"))
}

/// Maximal subgroups used by the classification, by group.
pub fn named_subgroup(g: &Group, name: &str) -> Result<Group> {
    let space = &g.space;
    let (n, q) = (g.n(), g.q());
    match (n, q, name) {
        (_, _, "P1") => parabolic_subgroup(g, 1),
        (_, _, "P2") => parabolic_subgroup(g, 2),
        (_, _, "P3") => parabolic_subgroup(g, 3),
        (_, _, "O+") => subgroup_construct(g, &SubgroupSpec::QuadraticForm(plus_form(space)), "O+"),
        (_, _, "O-") => subgroup_construct(g, &SubgroupSpec::QuadraticForm(minus_form(space)), "O-"),
        (2, 2, "A6") => subgroup_construct(g, &SubgroupSpec::Derived, "A6"),
        (2, 2, "Sp2(4):2") => field_extension_subgroup(g, "Sp2(4):2"),
        (2, _, "Sp2wrS2") => {
            let small = MatSpace::new(1, q)?;
            let mut gens = vec![];
            for t in super::symplectic_generators(&small) {
                let m = small.decode(t);
                let mut big = space.decode(space.identity());
                big.set(0, 0, m.get(0, 0));
                big.set(0, 2, m.get(0, 1));
                big.set(2, 0, m.get(1, 0));
                big.set(2, 2, m.get(1, 1));
                gens.push(space.encode(&big));
            }
            // swap (e1, f1) with (e2, f2)
            let mut s = Mat::zero(4);
            for (a, b) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
                s.set(a, b, 1);
            }
            gens.push(space.encode(&s));
            subgroup_construct(g, &SubgroupSpec::Generators(gens), "Sp2wrS2")
        }
        (3, 2, "G2(2)") => from_generator_file(g, &g2_2_file()),
        (3, 2, "L2(8).3") => field_extension_subgroup(g, "L2(8).3"),
        (3, 2, "Sp2xSp4") => {
            let vs = vec![unit(space, 0), unit(space, 3)];
            subgroup_construct(g, &SubgroupSpec::Subspace(vs), "Sp2xSp4")
        }
        _ => Err(Error::Unsupported(format!("subgroup {name} of {}", g.name))),
    }
}

/// Names accepted by [`named_subgroup`] for the given group.
pub fn maximal_subgroup_names(n: usize, q: u32) -> &'static [&'static str] {
    match (n, q) {
        (2, 2) => &["A6", "Sp2(4):2", "O-", "O+", "Sp2wrS2", "P1", "P2"],
        (3, 2) => &["O-", "O+", "P1", "P2", "P3", "G2(2)", "Sp2xSp4", "L2(8).3"],
        (2, 4) => &["P1", "P2", "O+", "O-", "Sp2wrS2"],
        _ => &[],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::symplectic_group;

    #[test]
    fn sp4_2_subgroups() {
        let g = symplectic_group(2, 2, 1000).unwrap();
        let orders: Vec<u64> = maximal_subgroup_names(2, 2)
            .iter()
            .map(|n| named_subgroup(&g, n).unwrap().order())
            .collect();
        assert_eq!(orders, vec![360, 120, 120, 72, 72, 48, 48]);
        let full = subgroup_construct(
            &g,
            &SubgroupSpec::Subspace((0..4).map(|i| unit(&g.space, i)).collect()),
            "all",
        )
        .unwrap();
        assert_eq!(full.order(), 720);
    }

    #[test]
    fn form_types() {
        for (n, q) in [(2, 2), (2, 4), (3, 2)] {
            let s = MatSpace::new(n, q).unwrap();
            assert_eq!(form_type(&s, &plus_form(&s)).1, 1);
            assert_eq!(form_type(&s, &minus_form(&s)).1, -1);
        }
    }

    #[test]
    fn generators_outside_are_rejected() {
        let g = symplectic_group(1, 2, 100).unwrap();
        let bad = g.space.encode(&{
            let mut m = Mat::zero(2);
            m.set(0, 0, 1);
            m
        });
        assert!(matches!(
            subgroup_construct(&g, &SubgroupSpec::Generators(vec![bad]), "x"),
            Err(Error::NotInGroup(_))
        ));
    }
}
