//! Ordinary character tables with values in Z[ζ_m].

pub mod cycint;
pub mod dixon;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grp::ClassData;
pub use cycint::{CycInt, CycRing};
pub use dixon::{dixon_character_table, dixon_with_ring};

/// One conjugacy class as seen by a character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub order: u32,
    pub size: u64,
    pub centralizer: u64,
    /// prime → class of the p-th power
    pub powermaps: BTreeMap<u64, usize>,
}

/// The class data a table needs, detached from the enumerated group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub group: String,
    pub order: u64,
    pub classes: Vec<ClassRecord>,
    pub inverse: Vec<usize>,
}

impl ClassInfo {
    pub fn from_class_data(group: &str, cd: &ClassData) -> ClassInfo {
        let classes = cd
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| ClassRecord {
                order: c.order,
                size: c.size,
                centralizer: c.centralizer,
                powermaps: cd.power_maps.iter().map(|(&p, m)| (p, m[i])).collect(),
            })
            .collect();
        ClassInfo {
            group: group.to_string(),
            order: cd.group_order,
            classes,
            inverse: cd.inverse.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// A class function: one value per class of a fixed group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    info: Arc<ClassInfo>,
    values: Vec<CycInt>,
}

fn same_info(a: &Arc<ClassInfo>, b: &Arc<ClassInfo>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ClassFunction {
    pub fn new(info: Arc<ClassInfo>, values: Vec<CycInt>) -> Result<ClassFunction> {
        if values.len() != info.len() {
            return Err(Error::ClassMismatch);
        }
        Ok(ClassFunction { info, values })
    }

    pub fn info(&self) -> &Arc<ClassInfo> {
        &self.info
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycInt {
        &self.values[class]
    }

    /// Value at the identity class, assumed rational.
    pub fn degree(&self) -> u64 {
        self.values[0].as_int().expect("rational degree") as u64
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.as_int().is_some())
    }

    pub fn add(&self, o: &ClassFunction) -> Result<ClassFunction> {
        if !same_info(&self.info, &o.info) {
            return Err(Error::ClassMismatch);
        }
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect();
        Ok(ClassFunction { info: self.info.clone(), values })
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        ClassFunction {
            info: self.info.clone(),
            values: self.values.iter().map(|v| v.scale(k)).collect(),
        }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            info: self.info.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Pointwise product.
    pub fn tensor(&self, o: &ClassFunction) -> Result<ClassFunction> {
        if !same_info(&self.info, &o.info) {
            return Err(Error::ClassMismatch);
        }
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a.mul(b)).collect();
        Ok(ClassFunction { info: self.info.clone(), values })
    }

    pub fn as_ints(&self) -> Option<Vec<i64>> {
        self.values.iter().map(|v| v.as_int()).collect()
    }
}

/// (1/|G|) Σ_C |C| f(C) conj(h(C)).
pub fn inner_product(f: &ClassFunction, h: &ClassFunction) -> Result<Ratio<i64>> {
    if !same_info(&f.info, &h.info) {
        return Err(Error::ClassMismatch);
    }
    let ring = f.values[0].ring().clone();
    let mut acc = CycInt::zero(&ring);
    for (i, c) in f.info.classes.iter().enumerate() {
        let (a, b) = (&f.values[i], &h.values[i]);
        let term = if let (Some(x), Some(y)) = (a.as_int(), b.as_int()) {
            CycInt::from_int(&ring, x * y)
        } else {
            a.mul(&b.conj())
        };
        acc = acc.add(&term.scale(c.size as i64));
    }
    let s = acc
        .as_int()
        .ok_or_else(|| Error::NonIntegral("inner product is not rational".into()))?;
    Ok(Ratio::new(s, f.info.order as i64))
}

/// χ|_H where `fusion[c]` is the G-class containing H-class c.
pub fn restrict(chi: &ClassFunction, h: &Arc<ClassInfo>, fusion: &[usize]) -> Result<ClassFunction> {
    if fusion.len() != h.len() {
        return Err(Error::ClassMismatch);
    }
    let values = fusion
        .iter()
        .map(|&c| {
            chi.values
                .get(c)
                .cloned()
                .ok_or(Error::OutOfRange { what: "fusion target", index: c })
        })
        .collect::<Result<Vec<_>>>()?;
    ClassFunction::new(h.clone(), values)
}

/// A character table: irreducibles sorted by degree, trivial character first.
#[derive(Clone, Debug)]
pub struct CharTable {
    info: Arc<ClassInfo>,
    ring: Arc<CycRing>,
    irr: Vec<ClassFunction>,
}

fn sort_key(c: &ClassFunction) -> (u64, bool, Vec<Vec<i64>>) {
    let trivial = c.values.iter().all(|v| v.as_int() == Some(1));
    (c.degree(), !trivial, c.values.iter().map(|v| v.coeffs().to_vec()).collect())
}

impl CharTable {
    pub fn new(info: Arc<ClassInfo>, ring: Arc<CycRing>, mut irr: Vec<ClassFunction>) -> Result<CharTable> {
        if irr.len() != info.len() || irr.iter().any(|c| !same_info(&c.info, &info)) {
            return Err(Error::ClassMismatch);
        }
        irr.sort_by_cached_key(sort_key);
        Ok(CharTable { info, ring, irr })
    }

    pub fn info(&self) -> &Arc<ClassInfo> {
        &self.info
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irr
    }

    pub fn len(&self) -> usize {
        self.irr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irr.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irr.iter().map(|c| c.degree()).collect()
    }

    pub fn trivial(&self) -> &ClassFunction {
        &self.irr[0]
    }

    /// Multiplicities of the irreducibles in `f`, as exact rationals.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<Ratio<i64>>> {
        self.irr.iter().map(|chi| inner_product(f, chi)).collect()
    }

    /// Checks ⟨χ_i, χ_j⟩ = δ_ij. Returns the first failing pair.
    pub fn check_orthogonality(&self) -> std::result::Result<(), (usize, usize)> {
        for i in 0..self.len() {
            for j in i..self.len() {
                let ip = inner_product(&self.irr[i], &self.irr[j]).map_err(|_| (i, j))?;
                if ip != Ratio::from_integer((i == j) as i64) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// Checks Σ_χ χ(g) conj χ(h) = δ_gh |C_G(g)|.
    pub fn check_column_orthogonality(&self) -> std::result::Result<(), (usize, usize)> {
        let k = self.info.len();
        for a in 0..k {
            for b in a..k {
                let mut acc = CycInt::zero(&self.ring);
                for chi in &self.irr {
                    acc = acc.add(&chi.values[a].mul(&chi.values[b].conj()));
                }
                let want = if a == b { self.info.classes[a].centralizer as i64 } else { 0 };
                if acc.as_int() != Some(want) {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let j = CharTableJson {
            group: self.info.group.clone(),
            order: self.info.order,
            m: self.ring.modulus(),
            classes: self.info.classes.clone(),
            inverse: self.info.inverse.clone(),
            irreducibles: self
                .irr
                .iter()
                .map(|c| c.values.iter().map(|v| v.coeffs().to_vec()).collect())
                .collect(),
        };
        Ok(serde_json::to_string(&j)?)
    }

    pub fn from_json(s: &str) -> Result<CharTable> {
        let j: CharTableJson = serde_json::from_str(s)?;
        let ring = CycRing::new(j.m)?;
        let info = Arc::new(ClassInfo {
            group: j.group,
            order: j.order,
            classes: j.classes,
            inverse: j.inverse,
        });
        let irr = j
            .irreducibles
            .into_iter()
            .map(|row| {
                let values = row
                    .into_iter()
                    .map(|c| CycInt::from_coeffs(&ring, c))
                    .collect::<Result<Vec<_>>>()?;
                ClassFunction::new(info.clone(), values)
            })
            .collect::<Result<Vec<_>>>()?;
        CharTable::new(info, ring, irr)
    }
}

#[derive(Serialize, Deserialize)]
struct CharTableJson {
    group: String,
    order: u64,
    m: u32,
    classes: Vec<ClassRecord>,
    inverse: Vec<usize>,
    irreducibles: Vec<Vec<Vec<i64>>>,
}

/// Irreducibles restricted to the ℓ-regular classes.
#[derive(Clone, Debug)]
pub struct RegularProjection {
    pub ell: u64,
    pub classes: Vec<usize>,
    pub characters: Vec<Vec<CycInt>>,
}

pub fn l_regular_classes(info: &ClassInfo, ell: u64) -> Vec<usize> {
    (0..info.len())
        .filter(|&i| !(info.classes[i].order as u64).is_multiple_of(ell))
        .collect()
}

pub fn l_regular_projection(t: &CharTable, ell: u64) -> Result<RegularProjection> {
    if ell == 2 {
        return Err(Error::EvenEll);
    }
    let classes = l_regular_classes(&t.info, ell);
    let characters = t
        .irr
        .iter()
        .map(|c| classes.iter().map(|&i| c.values[i].clone()).collect())
        .collect();
    Ok(RegularProjection { ell, classes, characters })
}

/// An integer combination of irreducibles, evaluated on ℓ-regular classes.
#[derive(Clone, Debug)]
pub struct BrauerCandidate {
    pub expr: String,
    pub classes: Vec<usize>,
    pub values: Vec<CycInt>,
}

impl BrauerCandidate {
    pub fn degree(&self) -> i64 {
        self.values[0].as_int().expect("rational degree")
    }
}

/// Parses `c1*name1 + c2*name2 - name3 ...` into (coefficient, name) terms.
pub fn parse_combination(expr: &str) -> Result<Vec<(i64, String)>> {
    let err = |msg: &str| Error::Parse { input: expr.to_string(), msg: msg.to_string() };
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty expression"));
    }
    let mut terms = vec![];
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if terms.is_empty() => (1, rest),
            _ => return Err(err("expected + or -")),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (c.parse::<i64>().map_err(|_| err("bad coefficient"))?, n),
            None => {
                let digits = term.len() - term.trim_start_matches(|c: char| c.is_ascii_digit()).len();
                if digits == term.len() {
                    (term.parse::<i64>().map_err(|_| err("bad term"))?, "1")
                } else if digits > 0 {
                    return Err(err("use `*` between coefficient and name"));
                } else {
                    (1, term)
                }
            }
        };
        if name.is_empty() {
            return Err(err("missing name"));
        }
        terms.push((sign * coef, name.to_string()));
    }
    Ok(terms)
}

/// Evaluates an integer combination of named irreducibles on the ℓ-regular
/// classes. `names` maps each name to a row of `t`; the name `1` always
/// means the trivial character.
pub fn brauer_candidate(
    t: &CharTable,
    ell: u64,
    expr: &str,
    names: &HashMap<String, usize>,
) -> Result<BrauerCandidate> {
    let proj = l_regular_projection(t, ell)?;
    let mut values: Vec<CycInt> = proj.classes.iter().map(|_| CycInt::zero(&t.ring)).collect();
    for (coef, name) in parse_combination(expr)? {
        let row = if name == "1" {
            0
        } else {
            *names.get(&name).ok_or_else(|| Error::Unidentified(name.clone()))?
        };
        let chi = proj
            .characters
            .get(row)
            .ok_or(Error::OutOfRange { what: "character row", index: row })?;
        for (v, x) in values.iter_mut().zip(chi) {
            *v = v.add(&x.scale(coef));
        }
    }
    Ok(BrauerCandidate { expr: expr.to_string(), classes: proj.classes, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_parser() {
        let t = parse_combination("chi6 - chi3-chi2 + 1").unwrap();
        assert_eq!(
            t,
            vec![(1, "chi6".into()), (-1, "chi3".into()), (-1, "chi2".into()), (1, "1".into())]
        );
        assert_eq!(parse_combination("2*a-b").unwrap(), vec![(2, "a".into()), (-1, "b".into())]);
        assert!(parse_combination("").is_err());
        assert!(parse_combination("2a").is_err());
    }
}
