//! Conjugation-invariant data of a matrix: order, characteristic polynomial
//! and eigenspace dimensions for the q−1 roots δ^j in GF(q) and the q+1 roots
//! ξ^j in GF(q²).

use serde::{Deserialize, Serialize};

use super::mat::{Code, MatSpace};
use crate::field::{FieldElem, Gf};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u32,
    /// Coefficients of det(xI − g), constant term first, as field bits.
    pub charpoly: Vec<u16>,
    /// dim_{GF(q)} ker(g − δ^j), j = 0..q−2.
    pub ker_base: Vec<u8>,
    /// dim_{GF(q²)} ker(g − ξ^j), j = 0..q.
    pub ker_ext: Vec<u8>,
}

impl Fingerprint {
    /// dim ker(g − 1).
    pub fn fixed_dim(&self) -> u8 {
        self.ker_base[0]
    }
}

/// Rank over an arbitrary GF(2^k) by Gaussian elimination.
pub fn rank_over(f: &Gf, rows: &[Vec<FieldElem>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(m[rank][c]).unwrap();
        let pivot: Vec<FieldElem> = m[rank].iter().map(|&x| f.mul(x, inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let k = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = *x + f.mul(k, p);
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Characteristic polynomial by Berkowitz's division-free recursion. In
/// characteristic 2 all signs drop out. Returns coefficients constant term
/// first; the leading coefficient is 1.
pub fn charpoly(f: &Gf, a: &[Vec<FieldElem>]) -> Vec<FieldElem> {
    let d = a.len();
    if d == 0 {
        return vec![FieldElem::ONE];
    }
    // `v` holds coefficients highest degree first.
    let mut v = vec![FieldElem::ONE, a[0][0]];
    for r in 1..d {
        let row = &a[r][..r];
        let col: Vec<FieldElem> = (0..r).map(|i| a[i][r]).collect();
        // t = [1, a_rr, R C, R A C, R A^2 C, ...], length r+2
        let mut t = vec![FieldElem::ONE, a[r][r]];
        let mut w = col.clone();
        for _ in 0..r {
            let s = row
                .iter()
                .zip(&w)
                .fold(FieldElem::ZERO, |acc, (&x, &y)| acc + f.mul(x, y));
            t.push(s);
            w = (0..r)
                .map(|i| {
                    (0..r).fold(FieldElem::ZERO, |acc, k| acc + f.mul(a[i][k], w[k]))
                })
                .collect();
        }
        let mut nv = vec![FieldElem::ZERO; r + 2];
        for (i, out) in nv.iter_mut().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                if j <= i {
                    *out = *out + f.mul(t[i - j], vj);
                }
            }
        }
        v = nv;
    }
    v.reverse();
    v
}

pub fn fingerprint(space: &MatSpace, g: Code) -> Fingerprint {
    let d = space.d;
    let field = &space.field;
    let m = space.decode(g);
    let base: Vec<Vec<FieldElem>> = (0..d)
        .map(|r| (0..d).map(|c| FieldElem(m.get(r, c) as u16)).collect())
        .collect();
    let cp = charpoly(&field.base, &base);
    let q = field.q();
    let delta = field.delta();
    let ker_base = (0..q - 1)
        .map(|j| {
            let lam = field.base.pow(delta, j as u64);
            let rows: Vec<Vec<FieldElem>> = (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| if r == c { base[r][c] + lam } else { base[r][c] })
                        .collect()
                })
                .collect();
            (d - rank_over(&field.base, &rows)) as u8
        })
        .collect();
    let ext: Vec<Vec<FieldElem>> = base
        .iter()
        .map(|r| r.iter().map(|&x| field.embed(x)).collect())
        .collect();
    let xi = field.xi();
    let ker_ext = (0..=q)
        .map(|j| {
            let lam = field.ext.pow(xi, j as u64);
            let rows: Vec<Vec<FieldElem>> = (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| if r == c { ext[r][c] + lam } else { ext[r][c] })
                        .collect()
                })
                .collect();
            (d - rank_over(&field.ext, &rows)) as u8
        })
        .collect();
    Fingerprint {
        order: space.order(g),
        charpoly: cp.into_iter().map(|x| x.0).collect(),
        ker_base,
        ker_ext,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::mat::Root;

    // det(xI - A) by Laplace expansion over polynomials with field
    // coefficients, for small d.
    fn poly_mul(f: &Gf, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let mut r = vec![FieldElem::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = r[i + j] + f.mul(x, y);
            }
        }
        r
    }

    fn det_poly(f: &Gf, m: &[Vec<Vec<FieldElem>>]) -> Vec<FieldElem> {
        let d = m.len();
        if d == 1 {
            return m[0][0].clone();
        }
        let mut acc = vec![FieldElem::ZERO; d + 1];
        for c in 0..d {
            let minor: Vec<Vec<Vec<FieldElem>>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let term = poly_mul(f, &m[0][c], &det_poly(f, &minor));
            for (i, t) in term.into_iter().enumerate() {
                if i >= acc.len() {
                    acc.push(t);
                } else {
                    acc[i] = acc[i] + t;
                }
            }
        }
        while acc.len() > d + 1 {
            assert!(acc.pop().unwrap().is_zero());
        }
        acc
    }

    #[test]
    fn berkowitz_matches_laplace() {
        let s = MatSpace::new(2, 4).unwrap();
        let gens = crate::grp::symplectic_generators(&s);
        let mut x = s.identity();
        for k in 0..40 {
            x = s.mul(x, gens[k % gens.len()]);
            if k % 3 == 0 {
                x = s.mul(x, x);
            }
            let m = s.decode(x);
            let fe = |r, c| FieldElem(m.get(r, c) as u16);
            let pm: Vec<Vec<Vec<FieldElem>>> = (0..4)
                .map(|r| {
                    (0..4)
                        .map(|c| {
                            if r == c {
                                vec![fe(r, c), FieldElem::ONE]
                            } else {
                                vec![fe(r, c)]
                            }
                        })
                        .collect()
                })
                .collect();
            let want = det_poly(&s.field.base, &pm);
            assert_eq!(fingerprint(&s, x).charpoly, want.iter().map(|x| x.0).collect::<Vec<_>>());
        }
    }

    #[test]
    fn identity_and_transvection() {
        let s = MatSpace::new(3, 2).unwrap();
        let fp = fingerprint(&s, s.identity());
        assert_eq!(fp.fixed_dim(), 6);
        assert_eq!(fp.ker_ext, vec![6, 0, 0]);
        let t = s.root_element(Root::LongPos(0), 1);
        assert_eq!(fingerprint(&s, t).fixed_dim(), 5);
    }

    #[test]
    fn nonsplit_tori_have_eigenvalues_in_gf_q2() {
        // Sp2(2): order 3 = q+1, eigenvalues ξ and ξ² in GF(4).
        let g = crate::grp::symplectic_group(1, 2, 100).unwrap();
        let x = g.elements().iter().copied().find(|&x| g.space.order(x) == 3).unwrap();
        let fp = fingerprint(&g.space, x);
        assert_eq!(fp.ker_ext, vec![0, 1, 1]);
        assert_eq!(fp.fixed_dim(), 0);
        // Sp2(4): order 5 = q+1, eigenvalues ξ^j, ξ^{-j} in GF(16).
        let g = crate::grp::symplectic_group(1, 4, 100).unwrap();
        for &x in g.elements() {
            if g.space.order(x) != 5 {
                continue;
            }
            let fp = fingerprint(&g.space, x);
            let j = fp.ker_ext.iter().position(|&k| k == 1).unwrap();
            assert_eq!(fp.ker_ext[5 - j], 1);
            assert_eq!(fp.ker_ext.iter().map(|&k| k as u32).sum::<u32>(), 2);
            assert!(fp.ker_base.iter().all(|&k| k == 0));
        }
    }
}
