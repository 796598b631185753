//! Square matrices over GF(q) packed into a single `u64`.
//!
//! Entry (r, c) occupies `a` bits at offset `(r*d + c)*a`, holding the
//! polynomial-basis bits of the field element. Matrices act on column
//! vectors; the basis is e1..en, f1..fn and the Gram matrix of the
//! symplectic form is J = [[0, I], [I, 0]].

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

pub type Code = u64;

pub const MAX_DIM: usize = 8;

/// A decoded matrix, row-major, entries are field bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat {
    pub d: usize,
    pub e: [u8; MAX_DIM * MAX_DIM],
}

impl Mat {
    pub fn zero(d: usize) -> Mat {
        Mat { d, e: [0; MAX_DIM * MAX_DIM] }
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.e[r * self.d + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.e[r * self.d + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.d).map(|r| (0..self.d).map(|c| self.get(r, c)).collect()).collect()
    }
}

/// Matrices of a fixed size 2n over a fixed GF(q).
#[derive(Clone, Debug)]
pub struct MatSpace {
    pub field: Field,
    pub n: usize,
    pub d: usize,
    a: u32,
    q: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl MatSpace {
    pub fn new(n: usize, q: u32) -> Result<MatSpace> {
        let field = Field::with_order(q)?;
        let a = field.a();
        let d = 2 * n;
        if n == 0 || d > MAX_DIM || (d * d) as u32 * a > 64 {
            return Err(Error::Unsupported(format!(
                "{d}x{d} matrices over GF({q}) do not fit the packed encoding"
            )));
        }
        let mul = field.base.mul_table();
        let q = q as usize;
        let mut inv = vec![0u8; q];
        for (x, slot) in inv.iter_mut().enumerate().skip(1) {
            *slot = field.base.inv(FieldElem(x as u16)).unwrap().0 as u8;
        }
        Ok(MatSpace { field, n, d, a, q, mul, inv })
    }

    pub fn q(&self) -> u32 {
        self.q as u32
    }

    #[inline]
    pub fn fmul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.q + y as usize]
    }

    pub fn finv(&self, x: u8) -> Result<u8> {
        if x == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv[x as usize])
        }
    }

    pub fn decode(&self, x: Code) -> Mat {
        let mut m = Mat::zero(self.d);
        let mask = (1u64 << self.a) - 1;
        for i in 0..self.d * self.d {
            m.e[i] = ((x >> (i as u32 * self.a)) & mask) as u8;
        }
        m
    }

    pub fn encode(&self, m: &Mat) -> Code {
        debug_assert_eq!(m.d, self.d);
        let mut x = 0u64;
        for i in 0..self.d * self.d {
            x |= (m.e[i] as u64) << (i as u32 * self.a);
        }
        x
    }

    pub fn from_rows(&self, rows: &[Vec<u8>]) -> Result<Code> {
        if rows.len() != self.d || rows.iter().any(|r| r.len() != self.d) {
            return Err(Error::Data(format!("expected a {0}x{0} matrix", self.d)));
        }
        let mut m = Mat::zero(self.d);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v as usize >= self.q {
                    return Err(Error::Data(format!("entry {v} is not in GF({})", self.q)));
                }
                m.set(r, c, v);
            }
        }
        Ok(self.encode(&m))
    }

    /// Builds a matrix from log indices, -1 standing for zero.
    pub fn from_log_rows(&self, rows: &[Vec<i64>]) -> Result<Code> {
        let bits: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&l| if l < 0 { 0 } else { self.field.base.exp(l).0 as u8 })
                    .collect()
            })
            .collect();
        self.from_rows(&bits)
    }

    pub fn identity(&self) -> Code {
        let mut m = Mat::zero(self.d);
        for i in 0..self.d {
            m.set(i, i, 1);
        }
        self.encode(&m)
    }

    /// Gram matrix of the symplectic form.
    pub fn gram(&self) -> Code {
        let mut m = Mat::zero(self.d);
        for i in 0..self.n {
            m.set(i, i + self.n, 1);
            m.set(i + self.n, i, 1);
        }
        self.encode(&m)
    }

    #[inline]
    pub fn mul(&self, x: Code, y: Code) -> Code {
        if self.a == 1 {
            let d = self.d as u32;
            let rmask = (1u64 << d) - 1;
            let mut out = 0u64;
            for r in 0..d {
                let row = (x >> (r * d)) & rmask;
                let mut acc = 0u64;
                let mut bits = row;
                while bits != 0 {
                    let c = bits.trailing_zeros();
                    acc ^= (y >> (c * d)) & rmask;
                    bits &= bits - 1;
                }
                out |= acc << (r * d);
            }
            out
        } else {
            let (a, b) = (self.decode(x), self.decode(y));
            let mut m = Mat::zero(self.d);
            for r in 0..self.d {
                for c in 0..self.d {
                    let mut s = 0u8;
                    for k in 0..self.d {
                        s ^= self.fmul(a.get(r, k), b.get(k, c));
                    }
                    m.set(r, c, s);
                }
            }
            self.encode(&m)
        }
    }

    pub fn transpose(&self, x: Code) -> Code {
        let m = self.decode(x);
        let mut t = Mat::zero(self.d);
        for r in 0..self.d {
            for c in 0..self.d {
                t.set(c, r, m.get(r, c));
            }
        }
        self.encode(&t)
    }

    /// Inverse of a symplectic matrix, J xᵀ J.
    pub fn inv(&self, x: Code) -> Code {
        let j = self.gram();
        self.mul(self.mul(j, self.transpose(x)), j)
    }

    pub fn is_symplectic(&self, x: Code) -> bool {
        let j = self.gram();
        self.mul(self.mul(self.transpose(x), j), x) == j
    }

    pub fn pow(&self, x: Code, mut e: u64) -> Code {
        let mut r = self.identity();
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self, x: Code) -> u32 {
        let id = self.identity();
        let mut y = x;
        let mut k = 1;
        while y != id {
            y = self.mul(y, x);
            k += 1;
            assert!(k < 1 << 20, "matrix is not invertible");
        }
        k
    }

    /// Column action on a coordinate vector.
    pub fn apply(&self, x: Code, v: &[u8]) -> Vec<u8> {
        let m = self.decode(x);
        (0..self.d)
            .map(|r| (0..self.d).fold(0u8, |s, c| s ^ self.fmul(m.get(r, c), v[c])))
            .collect()
    }

    /// Value of the symplectic form on two coordinate vectors.
    pub fn form(&self, u: &[u8], v: &[u8]) -> u8 {
        let n = self.n;
        (0..n).fold(0u8, |s, i| {
            s ^ self.fmul(u[i], v[i + n]) ^ self.fmul(u[i + n], v[i])
        })
    }

    /// All vectors of GF(q)^d, in lexicographic order of their bits.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        let total = (self.q as u64).pow(self.d as u32);
        (0..total).map(move |mut t| {
            let mut v = vec![0u8; self.d];
            for x in v.iter_mut() {
                *x = (t % self.q as u64) as u8;
                t /= self.q as u64;
            }
            v
        })
    }

    /// Rank of a list of row vectors over GF(q).
    pub fn rank(&self, rows: &[Vec<u8>]) -> usize {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = self.inv[m[rank][c] as usize];
            let pivot: Vec<u8> = m[rank].iter().map(|&x| self.fmul(x, inv)).collect();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && row[c] != 0 {
                    let f = row[c];
                    for (x, &p) in row.iter_mut().zip(&pivot) {
                        *x ^= self.fmul(f, p);
                    }
                }
            }
            m[rank] = pivot;
            rank += 1;
        }
        rank
    }

    /// Root element x_r(t) for the roots ±(ε_i − ε_j) (i ≠ j) and ±2ε_i,
    /// given as a unit matrix plus t in the positions of the root.
    pub fn root_element(&self, root: Root, t: u8) -> Code {
        let n = self.n;
        let mut m = self.decode(self.identity());
        match root {
            Root::Short(i, j) => {
                // e_j -> e_j + t e_i, f_i -> f_i + t f_j
                m.set(i, j, t);
                m.set(n + j, n + i, t);
            }
            Root::LongPos(i) => m.set(i, n + i, t),
            Root::LongNeg(i) => m.set(n + i, i, t),
        }
        self.encode(&m)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Root {
    /// ε_i − ε_j, i ≠ j.
    Short(usize, usize),
    /// 2ε_i.
    LongPos(usize),
    /// −2ε_i.
    LongNeg(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_and_table_paths_agree() {
        let s = MatSpace::new(2, 2).unwrap();
        let x = s.root_element(Root::Short(0, 1), 1);
        let y = s.root_element(Root::LongNeg(1), 1);
        let m = s.mul(x, y);
        let (a, b) = (s.decode(x), s.decode(y));
        let mut want = Mat::zero(4);
        for r in 0..4 {
            for c in 0..4 {
                let v = (0..4).fold(0, |acc, k| acc ^ (a.get(r, k) & b.get(k, c)));
                want.set(r, c, v);
            }
        }
        assert_eq!(s.decode(m), want);
    }

    #[test]
    fn root_elements_are_symplectic() {
        for (n, q) in [(1, 4), (2, 2), (2, 4), (3, 2)] {
            let s = MatSpace::new(n, q).unwrap();
            for t in 0..q as u8 {
                for i in 0..n {
                    assert!(s.is_symplectic(s.root_element(Root::LongPos(i), t)));
                    assert!(s.is_symplectic(s.root_element(Root::LongNeg(i), t)));
                    for j in 0..n {
                        if i != j {
                            let x = s.root_element(Root::Short(i, j), t);
                            assert!(s.is_symplectic(x));
                            assert_eq!(s.mul(x, s.inv(x)), s.identity());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(MatSpace::new(3, 4).is_err());
        assert!(MatSpace::new(2, 16).is_ok());
    }
}
