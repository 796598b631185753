//! Table-driven arithmetic in GF(2^a) and its quadratic extension.
//!
//! Elements are stored as bit vectors in the polynomial basis over GF(2), so
//! addition is XOR. Multiplication goes through discrete-log tables built from
//! the Conway polynomial of each degree, which makes log indices (and therefore
//! the fixed roots δ and ξ) reproducible.

use crate::error::{Error, Result};

/// Conway polynomials over GF(2) for degrees 1..=16, as bit masks (bit i is the
/// coefficient of x^i).
pub const CONWAY: [u32; 17] = [
    0,
    0b11,
    0b111,
    0b1011,
    0b10011,
    0b100101,
    0b1011011,
    0b10000011,
    0b100011101,
    0b1000010001,
    0b10001101111,
    0b100000000101,
    0b1000011101011,
    0b10000000011011,
    0b100000010101001,
    0b1000000000110101,
    0b10000000000101101,
];

/// An element of some GF(2^k), as its coordinate bits in the polynomial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u16);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for FieldElem {
    type Output = FieldElem;
    // characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ rhs.0)
    }
}

/// A single finite field GF(2^k), 1 <= k <= 16.
#[derive(Clone, Debug)]
pub struct Gf {
    k: u32,
    size: u32,
    poly: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

fn mul_raw(mut x: u32, mut y: u32, k: u32, poly: u32) -> u32 {
    let mut r = 0;
    while y != 0 {
        if y & 1 != 0 {
            r ^= x;
        }
        y >>= 1;
        x <<= 1;
        if x >> k & 1 != 0 {
            x ^= poly;
        }
    }
    r
}

impl Gf {
    pub fn new(k: u32) -> Result<Gf> {
        if !(1..=16).contains(&k) {
            return Err(Error::FieldDegree(k));
        }
        let poly = CONWAY[k as usize];
        let size = 1u32 << k;
        let n = (size - 1) as usize;
        let mut exp = vec![0u16; 2 * n.max(1)];
        let mut log = vec![0u16; size as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            *slot = x as u16;
            log[x as usize] = i as u16;
            x = if k == 1 { 1 } else { mul_raw(x, 2, k, poly) };
        }
        debug_assert_eq!(x, 1, "Conway polynomial not primitive");
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        Ok(Gf {
            k,
            size,
            poly,
            exp,
            log,
        })
    }

    /// Extension degree over GF(2).
    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn defining_polynomial(&self) -> u32 {
        self.poly
    }

    /// Order of the multiplicative group.
    pub fn units(&self) -> u32 {
        self.size - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size).map(|x| FieldElem(x as u16))
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        (x.0 as u32) < self.size
    }

    /// The generator raised to the power `e` (any integer, reduced mod q-1).
    pub fn exp(&self, e: i64) -> FieldElem {
        let n = self.units() as i64;
        FieldElem(self.exp[e.rem_euclid(n) as usize])
    }

    /// Discrete log of a nonzero element, in [0, q-2].
    pub fn log(&self, x: FieldElem) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize] as u32)
        }
    }

    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        if x.is_zero() || y.is_zero() {
            return FieldElem::ZERO;
        }
        FieldElem(self.exp[self.log[x.0 as usize] as usize + self.log[y.0 as usize] as usize])
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        match self.log(x) {
            None => Err(Error::DivisionByZero),
            Some(l) => Ok(self.exp(-(l as i64))),
        }
    }

    pub fn pow(&self, x: FieldElem, e: u64) -> FieldElem {
        match self.log(x) {
            None if e == 0 => FieldElem::ONE,
            None => FieldElem::ZERO,
            Some(l) => {
                let n = self.units() as u64;
                FieldElem(self.exp[((l as u64 * (e % n)) % n) as usize])
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElem) -> Option<u32> {
        let l = self.log(x)?;
        let n = self.units();
        Some(n / num_integer::gcd(n, l))
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    pub fn trace_f2(&self, x: FieldElem) -> u8 {
        let mut t = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.k {
            t = t + y;
            y = self.mul(y, y);
        }
        debug_assert!(t.0 <= 1);
        t.0 as u8
    }

    /// Full multiplication table, row-major, entries as bits.
    pub fn mul_table(&self) -> Vec<u8> {
        assert!(self.size <= 256);
        let s = self.size as usize;
        let mut t = vec![0u8; s * s];
        for x in 0..s {
            for y in 0..s {
                t[x * s + y] = self.mul(FieldElem(x as u16), FieldElem(y as u16)).0 as u8;
            }
        }
        t
    }
}

/// GF(q), q = 2^a with a <= 8, together with GF(q^2) and the fixed embedding.
#[derive(Clone, Debug)]
pub struct Field {
    pub base: Gf,
    pub ext: Gf,
}

impl Field {
    pub fn new(a: u32) -> Result<Field> {
        if !(1..=8).contains(&a) {
            return Err(Error::FieldDegree(a));
        }
        Ok(Field {
            base: Gf::new(a)?,
            ext: Gf::new(2 * a)?,
        })
    }

    /// Builds the field of the given order q = 2^a.
    pub fn with_order(q: u32) -> Result<Field> {
        if q < 2 || !q.is_power_of_two() {
            return Err(Error::FieldOrder(q));
        }
        Field::new(q.trailing_zeros())
    }

    pub fn q(&self) -> u32 {
        self.base.size()
    }

    pub fn a(&self) -> u32 {
        self.base.degree()
    }

    /// Embeds GF(q) into GF(q^2) by scaling the log index by q+1.
    pub fn embed(&self, x: FieldElem) -> FieldElem {
        match self.base.log(x) {
            None => FieldElem::ZERO,
            Some(l) => self.ext.exp(l as i64 * (self.q() as i64 + 1)),
        }
    }

    /// δ: the element of smallest log index with order exactly q-1.
    pub fn delta(&self) -> FieldElem {
        let n = self.base.units();
        (0..n)
            .map(|l| self.base.exp(l as i64))
            .find(|&x| self.base.order(x) == Some(n))
            .expect("cyclic group has a generator")
    }

    /// ξ: the element of GF(q^2) of smallest log index with order exactly q+1.
    pub fn xi(&self) -> FieldElem {
        let n = self.q() + 1;
        (0..self.ext.units())
            .map(|l| self.ext.exp(l as i64))
            .find(|&x| self.ext.order(x) == Some(n))
            .expect("q+1 divides q^2-1")
    }

    /// The pair (δ, ξ) of fixed primitive roots.
    pub fn primitive_roots(&self) -> (FieldElem, FieldElem) {
        (self.delta(), self.xi())
    }

    pub fn trace_f2(&self, x: FieldElem) -> u8 {
        self.base.trace_f2(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_generator_cubes_to_one() {
        let f = Gf::new(2).unwrap();
        let g = f.exp(1);
        assert_ne!(g, FieldElem::ONE);
        assert_eq!(f.pow(g, 3), FieldElem::ONE);
        // g^2 + g + 1 = 0
        assert_eq!(f.mul(g, g) + g + FieldElem::ONE, FieldElem::ZERO);
    }

    #[test]
    fn gf16_generator_order() {
        let f = Gf::new(4).unwrap();
        assert_eq!(f.order(f.exp(1)), Some(15));
    }

    #[test]
    fn traces_small() {
        let f2 = Gf::new(1).unwrap();
        assert_eq!(f2.trace_f2(FieldElem::ONE), 1);
        let f4 = Gf::new(2).unwrap();
        assert_eq!(f4.trace_f2(FieldElem::ONE), 0);
        assert_eq!(f4.trace_f2(f4.exp(1)), 1);
    }

    #[test]
    fn roots() {
        let f = Field::new(1).unwrap();
        let (d, x) = f.primitive_roots();
        assert_eq!(d, FieldElem::ONE);
        assert_eq!(f.ext.order(x), Some(3));
        let f = Field::new(2).unwrap();
        let (d, x) = f.primitive_roots();
        assert_eq!(f.base.order(d), Some(3));
        assert_eq!(f.ext.order(x), Some(5));
        let f = Field::new(3).unwrap();
        assert_eq!(f.ext.order(f.xi()), Some(9));
    }

    #[test]
    fn rejects_bad_degree() {
        assert!(Field::new(0).is_err());
        assert!(Field::new(9).is_err());
        assert!(Gf::new(17).is_err());
    }
}
