//! The parabolic P_j = Stab(⟨e1..ej⟩), its unipotent radical Q_j, the centre
//! Z_j of Q_j, a Levi complement L_j, and the P_j-orbits on Irr(Z_j).
//!
//! Basis order is e1..en, f1..fn throughout; no reordering is needed for the
//! block shapes below. Z_j consists of the maps f_k ↦ f_k + Σ_i C_ik e_i
//! (i, k ≤ j) with C symmetric, fixing every other basis vector.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::mat::{Code, MatSpace};
use super::subgroups::{greedy_generators, parabolic_subgroup};
use super::Group;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub j: usize,
    pub p: Group,
    pub q: Group,
    pub z: Group,
    pub l: Group,
    /// Always the identity permutation of e1..en, f1..fn.
    pub basis_order: Vec<usize>,
    /// Whether Z_j is all of Z(Q_j). In characteristic 2 this fails for
    /// j = 1 < n, where Q_1 is abelian.
    pub z_is_centre: bool,
}

fn in_span(v: &[u8], span: &[usize]) -> bool {
    v.iter().enumerate().all(|(i, &x)| x == 0 || span.contains(&i))
}

fn sub(v: &[u8], w: &[u8]) -> Vec<u8> {
    v.iter().zip(w).map(|(a, b)| a ^ b).collect()
}

fn unit(d: usize, i: usize) -> Vec<u8> {
    (0..d).map(|k| (k == i) as u8).collect()
}

/// Matrix of z_C for C symmetric j×j, given by its upper triangle.
pub fn z_element(space: &MatSpace, j: usize, upper: &[u8]) -> Code {
    let n = space.n;
    let mut m = space.decode(space.identity());
    let mut t = 0;
    for i in 0..j {
        for k in i..j {
            // f_k -> f_k + C_ik e_i and f_i -> f_i + C_ik e_k
            m.set(i, n + k, upper[t]);
            m.set(k, n + i, upper[t]);
            t += 1;
        }
    }
    space.encode(&m)
}

fn upper_triangles(q: u32, m: usize) -> Vec<Vec<u8>> {
    let total = (q as u64).pow(m as u32);
    (0..total)
        .map(|mut t| {
            (0..m)
                .map(|_| {
                    let x = (t % q as u64) as u8;
                    t /= q as u64;
                    x
                })
                .collect()
        })
        .collect()
}

fn subgroup_from(g: &Group, name: String, elements: Vec<Code>) -> Group {
    let id = g.space.identity();
    let mut els: Vec<Code> = vec![id];
    els.extend(elements.into_iter().filter(|&x| x != id));
    let gens = greedy_generators(&g.space, &els);
    Group::from_parts(g.space.clone(), name, gens, els)
}

pub fn parabolic_decomposition(g: &Group, j: usize) -> Result<ParabolicData> {
    let space = &g.space;
    let (n, d) = (space.n, space.d);
    if j == 0 || j > n {
        return Err(Error::OutOfRange { what: "parabolic index", index: j });
    }
    let p = parabolic_subgroup(g, j)?;
    let w: Vec<usize> = (0..j).collect();
    let wperp: Vec<usize> = (0..n).chain(n + j..d).collect();
    let fj: Vec<usize> = (n..n + j).collect();
    let rest: Vec<usize> = (j..n).chain(n + j..d).collect();

    let radical = |x: Code| {
        (0..d).all(|b| {
            let v = unit(d, b);
            let diff = sub(&space.apply(x, &v), &v);
            if w.contains(&b) {
                diff.iter().all(|&c| c == 0)
            } else if wperp.contains(&b) {
                in_span(&diff, &w)
            } else {
                in_span(&diff, &wperp)
            }
        })
    };
    let qs: Vec<Code> = p.elements().par_iter().copied().filter(|&x| radical(x)).collect();
    let q = subgroup_from(g, format!("Q{j}"), qs);

    let levi = |x: Code| {
        fj.iter()
            .all(|&b| in_span(&space.apply(x, &unit(d, b)), &fj))
            && rest
                .iter()
                .all(|&b| in_span(&space.apply(x, &unit(d, b)), &rest))
    };
    let ls: Vec<Code> = p.elements().par_iter().copied().filter(|&x| levi(x)).collect();
    let l = subgroup_from(g, format!("L{j}"), ls);

    let m = j * (j + 1) / 2;
    let zs: Vec<Code> = upper_triangles(space.q(), m)
        .iter()
        .map(|c| z_element(space, j, c))
        .collect();
    let z = subgroup_from(g, format!("Z{j}"), zs.clone());

    // Block shapes and the identification Z_j = Z(Q_j).
    if zs.iter().any(|&x| !q.contains(x)) {
        return Err(Error::Data(format!("Z{j} is not inside Q{j}")));
    }
    let centre: Vec<Code> = q
        .elements()
        .iter()
        .copied()
        .filter(|&x| q.generators.iter().all(|&s| space.mul(x, s) == space.mul(s, x)))
        .collect();
    if zs.iter().any(|x| !centre.contains(x)) {
        return Err(Error::Data(format!("Z{j} is not central in Q{j}")));
    }
    let z_is_centre = centre.len() as u64 == z.order();
    if p.order() != q.order() * l.order() {
        return Err(Error::Data(format!("|P{j}| != |Q{j}||L{j}|")));
    }
    let qq = space.q() as u128;
    let gl: u128 = (0..j as u32).map(|i| qq.pow(j as u32) - qq.pow(i)).product();
    let expected = gl * super::symplectic_order((n - j) as u32, qq as u64);
    if l.order() as u128 != expected {
        return Err(Error::Data(format!("|L{j}| = {}, expected {expected}", l.order())));
    }
    Ok(ParabolicData {
        j,
        p,
        q,
        z,
        l,
        basis_order: (0..d).collect(),
        z_is_centre,
    })
}

/// Rank and Witt type of the quadratic form q_Y(x) = Σ_{i≤k} Y_ik x_i x_k on
/// GF(q)^j. Labels: "0", "1", "2-", "2+", "3", ...
pub fn form_label(space: &MatSpace, j: usize, y: &[u8]) -> String {
    let idx = |i: usize, k: usize| -> usize {
        // position of (i, k), i <= k, in row-major upper-triangle order
        (0..i).map(|r| j - r).sum::<usize>() + (k - i)
    };
    let qv = |x: &[u8]| -> u8 {
        let mut s = 0u8;
        for i in 0..j {
            for k in i..j {
                s ^= space.fmul(y[idx(i, k)], space.fmul(x[i], x[k]));
            }
        }
        s
    };
    let b: Vec<Vec<u8>> = (0..j)
        .map(|i| {
            (0..j)
                .map(|k| match i.cmp(&k) {
                    std::cmp::Ordering::Less => y[idx(i, k)],
                    std::cmp::Ordering::Greater => y[idx(k, i)],
                    std::cmp::Ordering::Equal => 0,
                })
                .collect()
        })
        .collect();
    let rb = space.rank(&b);
    let q = space.q() as u64;
    let vectors: Vec<Vec<u8>> = (0..q.pow(j as u32))
        .map(|mut t| {
            (0..j)
                .map(|_| {
                    let x = (t % q) as u8;
                    t /= q;
                    x
                })
                .collect()
        })
        .collect();
    let in_radical = |x: &[u8]| {
        (0..j).all(|i| (0..j).fold(0u8, |s, k| s ^ space.fmul(b[i][k], x[k])) == 0)
    };
    let odd = vectors.iter().any(|x| in_radical(x) && qv(x) != 0);
    let r = rb + odd as usize;
    if r % 2 == 1 || r == 0 {
        return r.to_string();
    }
    let mm = (r / 2) as u32;
    let zeros = vectors.iter().filter(|x| qv(x) == 0).count() as u64;
    let plus = q.pow(j as u32 - 2 * mm) * (q.pow(2 * mm - 1) + q.pow(mm) - q.pow(mm - 1));
    format!("{r}{}", if zeros == plus { "+" } else { "-" })
}

#[derive(Clone, Debug, Serialize)]
pub struct CharOrbit {
    pub label: String,
    pub size: u64,
    /// Upper triangle of Y for the first member.
    pub rep: Vec<u8>,
    pub members: Vec<usize>,
}

/// Irr(Z_j) as {λ_Y}, λ_Y(z_C) = (−1)^{Tr Σ_{i≤k} Y_ik C_ik}, and its
/// partition into P_j-orbits computed from the conjugation action.
#[derive(Clone, Debug, Serialize)]
pub struct ZOrbits {
    pub j: usize,
    pub characters: Vec<Vec<u8>>,
    pub orbits: Vec<CharOrbit>,
}

pub fn z_character_orbits(data: &ParabolicData) -> ZOrbits {
    let space = &data.p.space;
    let j = data.j;
    let m = j * (j + 1) / 2;
    let tri = upper_triangles(space.q(), m);
    let zs: Vec<Code> = tri.iter().map(|c| z_element(space, j, c)).collect();
    let zpos: HashMap<Code, usize> = zs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let f = &space.field.base;
    let value = |y: &[u8], c: &[u8]| -> u8 {
        let s = y
            .iter()
            .zip(c)
            .fold(0u8, |acc, (&a, &b)| acc ^ space.fmul(a, b));
        f.trace_f2(crate::field::FieldElem(s as u16))
    };
    let table: Vec<Vec<u8>> = tri
        .iter()
        .map(|y| tri.iter().map(|c| value(y, c)).collect())
        .collect();
    let by_values: HashMap<Vec<u8>, usize> =
        table.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    // (g·λ)(z) = λ(g⁻¹ z g)
    let perms: Vec<Vec<usize>> = data
        .p
        .generators
        .iter()
        .map(|&g| {
            let gi = space.inv(g);
            let pull: Vec<usize> = zs
                .iter()
                .map(|&z| zpos[&space.mul(space.mul(gi, z), g)])
                .collect();
            table
                .iter()
                .map(|vals| {
                    let w: Vec<u8> = pull.iter().map(|&k| vals[k]).collect();
                    by_values[&w]
                })
                .collect()
        })
        .collect();
    let mut seen = vec![false; tri.len()];
    let mut orbits = vec![];
    for s in 0..tri.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orbit = vec![s];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for p in &perms {
                if !seen[p[x]] {
                    seen[p[x]] = true;
                    orbit.push(p[x]);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(CharOrbit {
            label: form_label(space, j, &tri[orbit[0]]),
            size: orbit.len() as u64,
            rep: tri[orbit[0]].clone(),
            members: orbit,
        });
    }
    ZOrbits {
        j,
        characters: tri,
        orbits,
    }
}
