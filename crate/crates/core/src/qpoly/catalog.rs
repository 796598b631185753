//! The shipped catalog of named degree, bound and orbit-size polynomials.
//!
//! File format (`data/catalog.json`, version 1):
//! `{"version": 1, "entries": [{"name", "formula", "numerator", "denominator", "source"}]}`
//! where `numerator` lists integer coefficients from the constant term up and
//! `formula` is the same polynomial in the syntax accepted by [`super::parse`].

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::QPoly;
use crate::error::{Error, Result};

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");
pub const CATALOG_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawEntry {
    pub name: String,
    pub formula: String,
    pub numerator: Vec<i64>,
    pub denominator: i64,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogFile {
    pub version: u32,
    pub entries: Vec<RawEntry>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub formula: String,
    pub poly: QPoly,
    pub source: String,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: HashMap<String, usize>,
}

impl Catalog {
    pub fn from_json(s: &str) -> Result<Catalog> {
        let file: CatalogFile = serde_json::from_str(s)?;
        if file.version != CATALOG_VERSION {
            return Err(Error::Data(format!("catalog version {}", file.version)));
        }
        let mut entries = Vec::with_capacity(file.entries.len());
        let mut index = HashMap::new();
        for raw in file.entries {
            if raw.denominator <= 0 {
                return Err(Error::Data(format!("{}: bad denominator", raw.name)));
            }
            if index.insert(raw.name.clone(), entries.len()).is_some() {
                return Err(Error::Data(format!("duplicate name {}", raw.name)));
            }
            let poly = QPoly::new(
                raw.numerator.iter().map(|&c| BigInt::from(c)).collect(),
                BigInt::from(raw.denominator),
            );
            entries.push(CatalogEntry {
                name: raw.name,
                formula: raw.formula,
                poly,
                source: raw.source,
            });
        }
        Ok(Catalog { entries, index })
    }

    /// The catalog compiled into the library.
    pub fn builtin() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("shipped catalog parses"))
    }

    pub fn get(&self, name: &str) -> Result<&QPoly> {
        self.index
            .get(name)
            .map(|&i| &self.entries[i].poly)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// A copy with one entry's polynomial swapped out; used to check that the
    /// identity suite notices a wrong entry.
    pub fn with_replaced(&self, name: &str, poly: QPoly) -> Catalog {
        let mut c = self.clone();
        if let Some(&i) = c.index.get(name) {
            c.entries[i].poly = poly;
        }
        c
    }

    /// Parses a formula in which catalog names may appear as identifiers.
    pub fn eval_formula(&self, formula: &str) -> Result<QPoly> {
        super::parse(formula, &|id| self.get(id).ok().cloned())
    }
}

/// Looks up a name in the builtin catalog.
pub fn catalog_lookup(name: &str) -> Result<QPoly> {
    Catalog::builtin().get(name).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_examples() {
        assert_eq!(catalog_lookup("alpha_3").unwrap().at(2), 7);
        assert_eq!(catalog_lookup("zeta_3").unwrap().at(2), 21);
        let b3 = catalog_lookup("B_3").unwrap();
        assert_eq!(b3, super::super::parse_closed("q^2*(q^2-1)*(q^3-1)").unwrap());
        assert!(matches!(catalog_lookup("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn stored_coefficients_match_formulas() {
        for e in Catalog::builtin().entries() {
            let parsed = super::super::parse_closed(&e.formula).unwrap();
            assert_eq!(parsed, e.poly, "{}", e.name);
        }
    }
}
