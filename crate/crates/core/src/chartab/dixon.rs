//! Character tables by Dixon's method: simultaneous eigenvectors of the
//! class matrices over GF(p), then lifting to Z[ζ_m] by counting eigenvalue
//! multiplicities.

use std::sync::Arc;

use rayon::prelude::*;

use super::cycint::{CycInt, CycRing};
use super::{CharTable, ClassFunction, ClassInfo};
use crate::error::{Error, Result};
use crate::grp::{ClassData, Group};

pub const MAX_CLASSES: usize = 64;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime p ≡ 1 (mod m) with p > 2√|G|.
pub fn dixon_prime(m: u64, group_order: u64) -> Result<u64> {
    let bound = 2.0 * (group_order as f64).sqrt();
    let mut p = m + 1;
    while (p as f64) <= bound || !is_prime(p) {
        p += m;
        if p > 1 << 31 {
            return Err(Error::NoPrime);
        }
    }
    Ok(p)
}

/// An element of order exactly m in GF(p)^×.
pub fn root_of_unity(m: u64, p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    let g = (2..p)
        .find(|&g| fs.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("GF(p)^x is cyclic");
    pow_mod(g, (p - 1) / m, p)
}

pub fn exponent(cd: &ClassData) -> u64 {
    cd.classes
        .iter()
        .fold(1u64, |acc, c| num_integer::lcm(acc, c.order as u64))
}

/// a[(i*r + j)*r + k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j} for a fixed z_k ∈ C_k.
pub fn class_multiplication_coefficients(g: &Group, cd: &ClassData) -> Vec<u32> {
    let r = cd.len();
    let space = &g.space;
    let n = g.order() as usize;
    let inv: Vec<u32> = (0..n)
        .into_par_iter()
        .map(|x| g.ordinal(space.inv(g.element(x))).unwrap() as u32)
        .collect();
    let per_k: Vec<Vec<u32>> = (0..r)
        .into_par_iter()
        .map(|k| {
            let z = cd.classes[k].rep;
            let mut counts = vec![0u32; r * r];
            for (x, &xi) in inv.iter().enumerate().take(n) {
                let y = space.mul(g.element(xi as usize), z);
                let i = cd.class_of_ordinal(x);
                let j = cd.class_of_ordinal(g.ordinal(y).unwrap());
                counts[i * r + j] += 1;
            }
            counts
        })
        .collect();
    let mut a = vec![0u32; r * r * r];
    for (k, counts) in per_k.iter().enumerate() {
        for ij in 0..r * r {
            a[ij * r + k] = counts[ij];
        }
    }
    a
}

/// Reduced row echelon form of row vectors; returns (rows, pivot columns).
fn rref(rows: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let iv = inv_mod(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = *x * iv % p;
        }
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    m.truncate(rank);
    (m, pivots)
}

/// Basis of {v : M v = 0} for a square matrix M.
fn kernel(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let (r, piv) = rref(mat, p);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in r.iter().zip(&piv) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial det(xI − A) mod p, constant term first
/// (Berkowitz).
fn charpoly_mod(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let d = a.len();
    let neg = |x: u64| (p - x % p) % p;
    // v: highest degree first
    let mut v = vec![1u64, neg(a[0][0])];
    for r in 1..d {
        let mut t = vec![1u64, neg(a[r][r])];
        let mut w: Vec<u64> = (0..r).map(|i| a[i][r]).collect();
        for _ in 0..r {
            let s = (0..r).fold(0u64, |acc, k| (acc + a[r][k] * w[k]) % p);
            t.push(neg(s));
            w = (0..r)
                .map(|i| (0..r).fold(0u64, |acc, k| (acc + a[i][k] * w[k]) % p))
                .collect();
        }
        let mut nv = vec![0u64; r + 2];
        for (i, out) in nv.iter_mut().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                if j <= i {
                    *out = (*out + t[i - j] * vj) % p;
                }
            }
        }
        v = nv;
    }
    v.reverse();
    v
}

fn roots_mod(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
        .collect()
}

/// Splits GF(p)^r into the common eigenspaces of the class matrices.
fn split(a: &[u32], r: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let ident: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|k| (i == k) as u64).collect())
        .collect();
    let mut spaces = vec![ident];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let aj = |i: usize, k: usize| a[(i * r + j) * r + k] as u64 % p;
        let mut next = vec![];
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let (b, piv) = rref(&basis, p);
            let w = b.len();
            // image of each basis vector under A_j, in coordinates of b
            let coords: Vec<Vec<u64>> = b
                .iter()
                .map(|v| {
                    let img: Vec<u64> = (0..r)
                        .map(|i| (0..r).fold(0u64, |acc, k| (acc + aj(i, k) * v[k]) % p))
                        .collect();
                    piv.iter().map(|&c| img[c]).collect()
                })
                .collect();
            // matrix C with C[s][t] = coordinate s of A b_t
            let c: Vec<Vec<u64>> = (0..w).map(|s| (0..w).map(|t| coords[t][s]).collect()).collect();
            let cp = charpoly_mod(&c, p);
            let mut total = 0;
            for lam in roots_mod(&cp, p) {
                let shifted: Vec<Vec<u64>> = (0..w)
                    .map(|s| {
                        (0..w)
                            .map(|t| if s == t { (c[s][t] + p - lam) % p } else { c[s][t] })
                            .collect()
                    })
                    .collect();
                let ker = kernel(&shifted, p);
                total += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|kv| {
                        (0..r)
                            .map(|i| (0..w).fold(0u64, |acc, t| (acc + kv[t] * b[t][i]) % p))
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if total != w {
                return Err(Error::Splitting(format!(
                    "class matrix {j} is not diagonalizable on a {w}-dimensional space"
                )));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Splitting("eigenspaces did not separate".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

/// Character table with values in the ring of `m`-th roots of unity, where
/// m must be a multiple of the group exponent.
pub fn dixon_with_ring(g: &Group, cd: &ClassData, ring: Arc<CycRing>) -> Result<CharTable> {
    let r = cd.len();
    if r > MAX_CLASSES {
        return Err(Error::Unsupported(format!("{r} classes")));
    }
    let m = ring.modulus() as u64;
    let e = exponent(cd);
    if !m.is_multiple_of(e) {
        return Err(Error::Unsupported(format!("exponent {e} does not divide {m}")));
    }
    let order = g.order();
    let p = dixon_prime(m, order)?;
    let w = root_of_unity(m, p);
    let a = class_multiplication_coefficients(g, cd);
    let vecs = split(&a, r, p)?;

    // class of rep^s for s < order of rep
    let powers: Vec<Vec<usize>> = cd
        .classes
        .iter()
        .map(|c| {
            let mut out = vec![0usize];
            let mut x = c.rep;
            for _ in 1..c.order {
                out.push(cd.class_of(g, x).unwrap());
                x = g.mul(x, c.rep);
            }
            out
        })
        .collect();
    let sizes: Vec<u64> = cd.sizes();
    let info = Arc::new(ClassInfo::from_class_data(&g.name, cd));
    let mut irr = vec![];
    for v in vecs {
        if v[0] == 0 {
            return Err(Error::Splitting("eigenvector vanishes at the identity".into()));
        }
        let i0 = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| x * i0 % p).collect();
        let s = (0..r).fold(0u64, |acc, i| {
            (acc + omega[i] * omega[cd.inverse[i]] % p * inv_mod(sizes[i] % p, p)) % p
        });
        let target = order % p * inv_mod(s, p) % p;
        let deg = (1..=(order as f64).sqrt() as u64 + 1)
            .find(|&d| d * d % p == target)
            .ok_or_else(|| Error::Splitting("no degree fits".into()))?;
        let chi: Vec<u64> = (0..r)
            .map(|i| omega[i] * deg % p * inv_mod(sizes[i] % p, p) % p)
            .collect();
        let mut values = Vec::with_capacity(r);
        for i in 0..r {
            let o = cd.classes[i].order as u64;
            let step = m / o;
            let inv_o = inv_mod(o % p, p);
            let mut mult = vec![0i64; m as usize];
            for t in 0..o {
                let l = t * step;
                // μ_l = (1/o) Σ_s χ(g^s) w^{−l s}
                let mut acc = 0u64;
                for s in 0..o {
                    let e = (m - (l * s) % m) % m;
                    acc = (acc + chi[powers[i][s as usize]] * pow_mod(w, e, p)) % p;
                }
                let mu = acc * inv_o % p;
                if mu > deg {
                    return Err(Error::Splitting(format!(
                        "eigenvalue multiplicity {mu} exceeds degree {deg}"
                    )));
                }
                mult[l as usize] = mu as i64;
            }
            values.push(CycInt::from_exponents(&ring, &mult));
        }
        irr.push(ClassFunction::new(info.clone(), values)?);
    }
    let total: u64 = irr.iter().map(|c| c.degree().pow(2)).sum();
    if total != order {
        return Err(Error::Splitting(format!("sum of squared degrees {total} != {order}")));
    }
    CharTable::new(info, ring, irr)
}

/// Character table over Z[ζ_m] with m the group exponent.
pub fn dixon_character_table(g: &Group, cd: &ClassData) -> Result<CharTable> {
    let ring = CycRing::new(exponent(cd) as u32)?;
    dixon_with_ring(g, cd, ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        // |Sp6(2)| = 1451520, exponent 2520
        assert_eq!(dixon_prime(2520, 1_451_520).unwrap(), 2521);
        let w = root_of_unity(12, 13);
        assert_eq!(pow_mod(w, 12, 13), 1);
        assert!((1..12).all(|k| pow_mod(w, k, 13) != 1));
    }

    #[test]
    fn charpoly_mod_small() {
        // [[1,2],[3,4]] -> x^2 - 5x - 2
        let cp = charpoly_mod(&[vec![1, 2], vec![3, 4]], 101);
        assert_eq!(cp, vec![99, 96, 1]);
    }
}
