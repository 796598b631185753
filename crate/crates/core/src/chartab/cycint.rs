//! Cyclotomic integers Z[ζ_m] in the power basis 1, ζ, …, ζ^{φ(m)−1}.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ring Z[ζ_m] = Z[x]/Φ_m(x).
#[derive(Debug)]
pub struct CycRing {
    m: u32,
    phi: usize,
    /// Nonzero coefficients of Φ_m below the leading term, as (degree, coeff).
    cyclo: Vec<(usize, i64)>,
    /// ζ^l reduced to the power basis, l = 0..m−1.
    powers: Vec<Vec<i64>>,
}

fn mobius(mut n: u32) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Coefficients of Φ_m, constant term first, from
/// Φ_m = Π_{d | m} (x^d − 1)^{μ(m/d)}.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    let divisors: Vec<u32> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut p = vec![1i64];
    for &d in &divisors {
        if mobius(m / d) == 1 {
            // multiply by x^d - 1
            let mut r = vec![0i64; p.len() + d as usize];
            for (i, &c) in p.iter().enumerate() {
                r[i + d as usize] += c;
                r[i] -= c;
            }
            p = r;
        }
    }
    for &d in &divisors {
        if mobius(m / d) == -1 {
            // p = q (x^d - 1), so q_i = q_{i-d} - p_i
            let d = d as usize;
            let n = p.len() - d;
            let mut q = vec![0i64; n];
            for i in 0..n {
                q[i] = -p[i] + if i >= d { q[i - d] } else { 0 };
            }
            p = q;
        }
    }
    if p.last() == Some(&-1) {
        p.iter_mut().for_each(|c| *c = -*c);
    }
    p
}

impl CycRing {
    pub fn new(m: u32) -> Result<Arc<CycRing>> {
        if m == 0 {
            return Err(Error::Unsupported("cyclotomic modulus 0".into()));
        }
        let phi_poly = cyclotomic_poly(m);
        let phi = phi_poly.len() - 1;
        let cyclo: Vec<(usize, i64)> = phi_poly[..phi]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let mut ring = CycRing {
            m,
            phi,
            cyclo,
            powers: vec![],
        };
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce
            let mut next = vec![0i64; phi + 1];
            next[1..].copy_from_slice(&cur);
            ring.reduce_top(&mut next);
            next.truncate(phi);
            cur = next;
        }
        ring.powers = powers;
        Ok(Arc::new(ring))
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Reduces a coefficient vector of any length modulo Φ_m in place.
    fn reduce_top(&self, v: &mut [i64]) {
        for e in (self.phi..v.len()).rev() {
            let c = v[e];
            if c != 0 {
                v[e] = 0;
                let shift = e - self.phi;
                for &(i, k) in &self.cyclo {
                    v[shift + i] -= c * k;
                }
            }
        }
    }
}

/// An element of Z[ζ_m].
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<CycRing>,
    c: Vec<i64>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &CycInt) -> bool {
        self.ring.m == other.ring.m && self.c == other.c
    }
}
impl Eq for CycInt {}

impl CycInt {
    pub fn zero(ring: &Arc<CycRing>) -> CycInt {
        CycInt {
            ring: ring.clone(),
            c: vec![0; ring.phi],
        }
    }

    pub fn from_int(ring: &Arc<CycRing>, n: i64) -> CycInt {
        let mut z = CycInt::zero(ring);
        z.c[0] = n;
        z
    }

    /// ζ_m^l.
    pub fn root(ring: &Arc<CycRing>, l: i64) -> CycInt {
        let m = ring.m as i64;
        CycInt {
            ring: ring.clone(),
            c: ring.powers[l.rem_euclid(m) as usize].clone(),
        }
    }

    /// Σ_l mult[l] ζ^l.
    pub fn from_exponents(ring: &Arc<CycRing>, mult: &[i64]) -> CycInt {
        let mut z = CycInt::zero(ring);
        for (l, &k) in mult.iter().enumerate() {
            if k != 0 {
                for (a, &b) in z.c.iter_mut().zip(&ring.powers[l % ring.m as usize]) {
                    *a += k * b;
                }
            }
        }
        z
    }

    /// Builds from power-basis coefficients (length φ(m)).
    pub fn from_coeffs(ring: &Arc<CycRing>, c: Vec<i64>) -> Result<CycInt> {
        if c.len() != ring.phi {
            return Err(Error::Data(format!(
                "expected {} coefficients, got {}",
                ring.phi,
                c.len()
            )));
        }
        Ok(CycInt { ring: ring.clone(), c })
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn as_int(&self) -> Option<i64> {
        self.c[1..].iter().all(|&x| x == 0).then_some(self.c[0])
    }

    pub fn add(&self, o: &CycInt) -> CycInt {
        CycInt {
            ring: self.ring.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &CycInt) -> CycInt {
        CycInt {
            ring: self.ring.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> CycInt {
        CycInt {
            ring: self.ring.clone(),
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, o: &CycInt) -> CycInt {
        if let Some(k) = self.as_int() {
            return o.scale(k);
        }
        if let Some(k) = o.as_int() {
            return self.scale(k);
        }
        let phi = self.ring.phi;
        let mut v = vec![0i64; 2 * phi];
        for (i, &a) in self.c.iter().enumerate() {
            if a != 0 {
                for (j, &b) in o.c.iter().enumerate() {
                    if b != 0 {
                        v[i + j] += a * b;
                    }
                }
            }
        }
        self.ring.reduce_top(&mut v);
        v.truncate(phi);
        CycInt {
            ring: self.ring.clone(),
            c: v,
        }
    }

    /// Image under ζ ↦ ζ^k, gcd(k, m) = 1.
    pub fn galois(&self, k: i64) -> CycInt {
        let mut z = CycInt::zero(&self.ring);
        let m = self.ring.m as i64;
        for (l, &a) in self.c.iter().enumerate() {
            if a != 0 {
                let p = &self.ring.powers[(l as i64 * k).rem_euclid(m) as usize];
                for (x, &y) in z.c.iter_mut().zip(p) {
                    *x += a * y;
                }
            }
        }
        z
    }

    /// Complex conjugate, ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> CycInt {
        self.galois(-1)
    }

    /// Value modulo a prime p in which ζ_m maps to `w`.
    pub fn reduce_mod(&self, p: u64, w: u64) -> u64 {
        let mut acc = 0u64;
        let mut wp = 1u64;
        for &a in &self.c {
            let a = a.rem_euclid(p as i64) as u64;
            acc = (acc + a * wp) % p;
            wp = wp * w % p;
        }
        acc
    }

    /// Approximate complex value with ζ_m = e^{2πi/m}.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.ring.m as f64;
        self.c.iter().enumerate().fold((0.0, 0.0), |(re, im), (l, &a)| {
            let t = 2.0 * std::f64::consts::PI * l as f64 / m;
            (re + a as f64 * t.cos(), im + a as f64 * t.sin())
        })
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_int() {
            return write!(f, "{k}");
        }
        let mut first = true;
        for (l, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 { "-" } else if first { "" } else { "+" };
            let mag = a.unsigned_abs();
            let coef = if mag == 1 && l > 0 { String::new() } else { mag.to_string() };
            let mon = match l {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{l}"),
            };
            let sep = if !coef.is_empty() && !mon.is_empty() { "*" } else { "" };
            write!(f, "{sign}{coef}{sep}{mon}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (z=E({}))", self.ring.m)
    }
}

/// Serialized form: the coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycCoeffs(pub Vec<i64>);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn roots_sum_to_mobius() {
        for m in [1u32, 2, 3, 4, 6, 12, 15, 30] {
            let r = CycRing::new(m).unwrap();
            let all: Vec<i64> = vec![1; m as usize];
            assert!(CycInt::from_exponents(&r, &all).is_zero() || m == 1);
            let prim: Vec<i64> = (0..m).map(|l| (num_integer::gcd(l, m) == 1) as i64).collect();
            let mu = CycInt::from_exponents(&r, &prim).as_int().unwrap();
            let expect = match m {
                1 => 1,
                2 | 3 => -1,
                4 | 12 => 0,
                6 => 1,
                15 => 1,
                30 => -1,
                _ => unreachable!(),
            };
            assert_eq!(mu, expect, "m={m}");
        }
    }

    #[test]
    fn root_arithmetic() {
        let r = CycRing::new(12).unwrap();
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(
                    CycInt::root(&r, a).mul(&CycInt::root(&r, b)),
                    CycInt::root(&r, a + b)
                );
            }
            assert_eq!(CycInt::root(&r, a).conj(), CycInt::root(&r, -a));
        }
        // (ζ_3 - ζ_3^2)^2 = -3
        let r3 = CycRing::new(3).unwrap();
        let s = CycInt::root(&r3, 1).sub(&CycInt::root(&r3, 2));
        assert_eq!(s.mul(&s).as_int(), Some(-3));
    }
}
