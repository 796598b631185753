//! Polynomials in q with rational coefficients, stored as an integer
//! numerator over a positive common denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub mod appendix;
pub mod catalog;
pub mod identities;

pub use catalog::{catalog_lookup, Catalog};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly {
            num: vec![],
            den: BigInt::one(),
        }
    }

    pub fn constant(c: i64) -> QPoly {
        QPoly::new(vec![BigInt::from(c)], BigInt::one())
    }

    /// The indeterminate q.
    pub fn q() -> QPoly {
        QPoly::new(vec![BigInt::zero(), BigInt::one()], BigInt::one())
    }

    pub fn from_coeffs(num: &[i64], den: i64) -> QPoly {
        QPoly::new(num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(den))
    }

    /// Builds and normalizes `num / den`. Panics if `den` is zero.
    pub fn new(mut num: Vec<BigInt>, mut den: BigInt) -> QPoly {
        assert!(!den.is_zero(), "zero denominator");
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return QPoly::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in &mut num {
                *c /= &g;
            }
            den /= &g;
        }
        QPoly { num, den }
    }

    fn from_rationals(coeffs: &[BigRational]) -> QPoly {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        QPoly::new(num, den)
    }

    fn to_rationals(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    /// The constant value, if the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut r = QPoly::constant(1);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(
            self.num.iter().map(|x| x * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn div_exact(&self, other: &QPoly) -> Result<QPoly> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.to_rationals();
        let d = other.to_rationals();
        let dl = d.len();
        let lead = d[dl - 1].clone();
        if rem.len() < dl {
            return if self.is_zero() {
                Ok(QPoly::zero())
            } else {
                Err(Error::InexactDivision)
            };
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dl - 1] / &lead;
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(QPoly::from_rationals(&quot))
    }

    pub fn eval(&self, q: &BigInt) -> BigRational {
        let mut acc = BigInt::zero();
        for c in self.num.iter().rev() {
            acc = acc * q + c;
        }
        BigRational::new(acc, self.den.clone())
    }

    /// Value at an integer q when it is an integer.
    pub fn eval_int(&self, q: i64) -> Option<BigInt> {
        let v = self.eval(&BigInt::from(q));
        v.is_integer().then(|| v.to_integer())
    }

    /// Value at q as i128, panicking if it is not an integer in range.
    pub fn at(&self, q: i64) -> i128 {
        self.eval_int(q)
            .and_then(|v| v.to_i128())
            .unwrap_or_else(|| panic!("{self} is not an integer at q={q}"))
    }

    /// The polynomial p(q + c).
    pub fn taylor_shift(&self, c: i64) -> QPoly {
        let shifted = &QPoly::q() + &QPoly::constant(c);
        let mut acc = QPoly::zero();
        for coef in self.num.iter().rev() {
            acc = &(&acc * &shifted) + &QPoly::new(vec![coef.clone()], BigInt::one());
        }
        QPoly::new(acc.num, &acc.den * &self.den)
    }

    /// Sufficient test for p(q) > 0 for every real q >= c: all coefficients of
    /// p(q + c) are nonnegative and the constant term is positive.
    pub fn positive_for_q_at_least(&self, c: i64) -> bool {
        let s = self.taylor_shift(c);
        !s.is_zero() && s.num[0].is_positive() && s.num.iter().all(|x| !x.is_negative())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = vec![];
        for (i, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "q".to_string(),
                (1, false) => format!("{mag}*q"),
                (_, true) => format!("q^{i}"),
                (_, false) => format!("{mag}*q^{i}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            terms.push((sign, body));
        }
        let mut s = String::new();
        for (k, (sign, body)) in terms.iter().enumerate() {
            if k == 0 {
                if *sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(body);
        }
        if self.den.is_one() {
            write!(f, "{s}")
        } else {
            write!(f, "({s})/{}", self.den)
        }
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let l = self.den.lcm(&rhs.den);
        let (a, b) = (&l / &self.den, &l / &rhs.den);
        let n = self.num.len().max(rhs.num.len());
        let num = (0..n)
            .map(|i| {
                let x = self.num.get(i).map_or_else(BigInt::zero, |c| c * &a);
                let y = rhs.num.get(i).map_or_else(BigInt::zero, |c| c * &b);
                x + y
            })
            .collect();
        QPoly::new(num, l)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.num.iter().map(|c| -c).collect(), self.den.clone())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut num = vec![BigInt::zero(); self.num.len() + rhs.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in rhs.num.iter().enumerate() {
                num[i + j] += a * b;
            }
        }
        QPoly::new(num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The j-th cyclotomic polynomial Φ_j(q), 1 <= j <= 12.
pub fn cyclotomic(j: u32) -> Result<QPoly> {
    if !(1..=12).contains(&j) {
        return Err(Error::CyclotomicIndex(j));
    }
    Ok(cyclotomic_any(j))
}

fn cyclotomic_any(j: u32) -> QPoly {
    let mut p = &QPoly::q().pow(j) - &QPoly::constant(1);
    for d in 1..j {
        if j.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic_any(d)).expect("cyclotomic factor");
        }
    }
    p
}

/// Resolves identifiers other than `q` and `phiN` while parsing.
pub type Env<'a> = &'a dyn Fn(&str) -> Option<QPoly>;

/// Parses a formula such as `(q^3-1)*(q^3-q)/(2*(q+1))`.
///
/// Grammar: sums and differences of products and quotients of powers of
/// atoms. Atoms are integers, `q`, `phiN`, parenthesized expressions and
/// identifiers looked up in `env`. Division by a nonconstant polynomial must
/// be exact.
pub fn parse(input: &str, env: Env) -> Result<QPoly> {
    let mut p = Parser {
        src: input,
        chars: input.char_indices().peekable(),
        env,
    };
    let v = p.expr()?;
    p.skip_ws();
    if let Some(&(i, c)) = p.chars.peek() {
        return Err(p.err(format!("unexpected `{c}` at {i}")));
    }
    Ok(v)
}

/// Parses a formula that only uses `q` and `phiN`.
pub fn parse_closed(input: &str) -> Result<QPoly> {
    parse(input, &|_| None)
}

struct Parser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    env: Env<'a>,
}

impl Parser<'_> {
    fn err(&self, msg: String) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            msg,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.peek().is_some_and(|&(_, x)| x == c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div_exact(&d).map_err(|e| self.err(e.to_string()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QPoly> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large".into()))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        s.parse().map_err(|_| self.err("expected integer".into()))
    }

    fn atom(&mut self) -> Result<QPoly> {
        self.skip_ws();
        let Some(&(pos, c)) = self.chars.peek() else {
            return Err(self.err("unexpected end of input".into()));
        };
        if c == '(' {
            self.chars.next();
            let v = self.expr()?;
            if !self.eat(')') {
                return Err(self.err(format!("missing `)` for `(` at {pos}")));
            }
            return Ok(v);
        }
        if c.is_ascii_digit() {
            let n = self.integer()?;
            return Ok(QPoly::new(vec![BigInt::from(n)], BigInt::one()));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut id = String::new();
            while let Some(&(_, c)) = self.chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    id.push(c);
                    self.chars.next();
                } else {
                    break;
                }
            }
            if id == "q" {
                return Ok(QPoly::q());
            }
            if let Some(k) = id.strip_prefix("phi").and_then(|k| k.parse::<u32>().ok()) {
                return cyclotomic(k);
            }
            return (self.env)(&id).ok_or_else(|| self.err(format!("unknown identifier `{id}`")));
        }
        Err(self.err(format!("unexpected `{c}` at {pos}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), QPoly::from_coeffs(&[-1, 1], 1));
        assert_eq!(cyclotomic(2).unwrap(), QPoly::from_coeffs(&[1, 1], 1));
        assert_eq!(cyclotomic(6).unwrap(), QPoly::from_coeffs(&[1, -1, 1], 1));
        assert!(cyclotomic(13).is_err());
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn parse_and_eval() {
        let a3 = parse_closed("(q^3-1)*(q^3-q)/(2*(q+1))").unwrap();
        assert_eq!(a3.at(2), 7);
        assert_eq!(a3.at(4), 378);
        assert_eq!(a3.denominator(), &BigInt::from(2));
        let z3 = parse_closed("(q^6-1)/(q+1)").unwrap();
        assert_eq!(z3.at(2), 21);
        assert_eq!(z3.denominator(), &BigInt::one());
    }

    #[test]
    fn inexact_division_is_an_error() {
        assert!(parse_closed("(q^2+1)/(q+1)").is_err());
        assert!(parse_closed("q^2 +").is_err());
        assert!(parse_closed("foo").is_err());
    }

    #[test]
    fn shift_positivity() {
        // q^2 - 3q - 1 is negative at q=3 but positive from q=4 on
        let p = parse_closed("q^2-3*q-1").unwrap();
        assert!(p.positive_for_q_at_least(4));
        assert!(!p.positive_for_q_at_least(3));
    }

    #[test]
    fn display_round_trips() {
        let p = parse_closed("q*(q-1)^2/2 - 3").unwrap();
        let again = parse_closed(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }
}
