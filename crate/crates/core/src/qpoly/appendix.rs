//! Brauer characters of unipotent blocks written as integer combinations of
//! ordinary characters, with their degree columns, and the consistency check
//! that each stated combination reproduces the stated degree.
//!
//! Rows live in `data/appendix.json`. Each row has one or more equivalent
//! `forms` (linear in atoms `chiN`), a `degree` formula, and optional
//! `params` mapping a parameter name to the values at which to test.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{catalog::Catalog, parse, QPoly};
use crate::error::{Error, Result};

const APPENDIX_JSON: &str = include_str!("../../data/appendix.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AppendixRow {
    pub table: String,
    pub block: String,
    pub label: String,
    pub forms: Vec<String>,
    pub degree: String,
    #[serde(default)]
    pub params: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AppendixFile {
    version: u32,
    rows: Vec<AppendixRow>,
}

pub fn appendix_rows() -> &'static [AppendixRow] {
    static ROWS: OnceLock<Vec<AppendixRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let f: AppendixFile = serde_json::from_str(APPENDIX_JSON).expect("shipped appendix parses");
        f.rows
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub table: String,
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// Result of checking all rows: per-row verdicts plus the degrees implied for
/// the characters that only appear inside combinations.
#[derive(Debug, Clone)]
pub struct AppendixCheck {
    pub rows: Vec<RowCheck>,
    pub implied: BTreeMap<String, QPoly>,
}

fn identifiers(s: &str) -> Vec<String> {
    let mut out = vec![];
    let mut cur = String::new();
    for c in s.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() || c == '_' {
            cur.push(c);
        } else if !cur.is_empty() {
            if cur.starts_with(|c: char| c.is_ascii_alphabetic()) && !out.contains(&cur) {
                out.push(cur.clone());
            }
            cur.clear();
        } else {
            cur.clear();
        }
    }
    out
}

fn white_degrees(cat: &Catalog) -> BTreeMap<String, QPoly> {
    (1..=12)
        .map(|i| {
            (
                format!("chi{i}"),
                cat.get(&format!("White_chi_{i}")).unwrap().clone(),
            )
        })
        .collect()
}

fn assignments(params: &BTreeMap<String, Vec<String>>) -> Result<Vec<BTreeMap<String, QPoly>>> {
    let mut out = vec![BTreeMap::new()];
    for (name, values) in params {
        let mut next = vec![];
        for base in &out {
            for v in values {
                let mut m = base.clone();
                m.insert(name.clone(), super::parse_closed(v)?);
                next.push(m);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Checks every row. Atoms `chi1..chi12` take the catalog's degrees; any other
/// `chiN` is solved from the first form in which it is the only unknown and
/// must come out independent of the row parameters.
pub fn check_appendix(cat: &Catalog) -> Result<AppendixCheck> {
    let mut known = white_degrees(cat);
    let mut rows = vec![];
    for row in appendix_rows() {
        let grid = assignments(&row.params)?;
        let mut solved: BTreeMap<String, Vec<QPoly>> = BTreeMap::new();
        let mut problems = vec![];
        let mut checked_forms = 0;
        for asg in &grid {
            let lookup = |id: &str, extra: Option<(&str, &QPoly)>| -> Option<QPoly> {
                if let Some((n, v)) = extra {
                    if n == id {
                        return Some(v.clone());
                    }
                }
                asg.get(id).or_else(|| known.get(id)).cloned()
            };
            let deg = parse(&row.degree, &|id| lookup(id, None))?;
            for form in &row.forms {
                let unknown: Vec<String> = identifiers(form)
                    .into_iter()
                    .filter(|id| lookup(id, None).is_none())
                    .collect();
                match unknown.len() {
                    0 => {
                        let v = parse(form, &|id| lookup(id, None))?;
                        checked_forms += 1;
                        if v != deg {
                            problems.push(format!("`{form}` gives {v}, degree column is {deg}"));
                        }
                    }
                    1 => {
                        let u = unknown[0].as_str();
                        let zero = QPoly::zero();
                        let one = QPoly::constant(1);
                        let r0 = parse(form, &|id| lookup(id, Some((u, &zero))))?;
                        let r1 = parse(form, &|id| lookup(id, Some((u, &one))))?;
                        let c = &r1 - &r0;
                        let Some(cv) = c.as_constant().filter(|c| !num_traits::Zero::is_zero(c))
                        else {
                            problems.push(format!("`{form}`: coefficient of {u} is not a nonzero constant"));
                            continue;
                        };
                        let value = (&deg - &r0).scale(&cv.recip());
                        solved.entry(u.to_string()).or_default().push(value);
                    }
                    _ => problems.push(format!("`{form}` has several unknowns {unknown:?}")),
                }
            }
        }
        let mut solved_desc = vec![];
        for (name, values) in solved {
            if values.windows(2).any(|w| w[0] != w[1]) {
                problems.push(format!("implied degree of {name} depends on the parameters"));
            } else {
                solved_desc.push(format!("{name} = {}", values[0]));
                known.insert(name, values[0].clone());
            }
        }
        let passed = problems.is_empty();
        let detail = if passed {
            let mut d = format!("{checked_forms} form evaluation(s) match over {} parameter point(s)", grid.len());
            if !solved_desc.is_empty() {
                d.push_str(&format!("; implied {}", solved_desc.join(", ")));
            }
            d
        } else {
            problems.join("; ")
        };
        rows.push(RowCheck {
            table: row.table.clone(),
            label: row.label.clone(),
            passed,
            detail,
        });
    }
    let implied = known
        .into_iter()
        .filter(|(k, _)| k.trim_start_matches("chi").parse::<u32>().is_ok_and(|i| i > 12))
        .collect();
    Ok(AppendixCheck { rows, implied })
}

/// Degree of a Brauer combination such as `chi6 - chi3 - chi2 + chi1`, using
/// the catalog degrees plus any implied ones.
pub fn combination_degree(expr: &str, implied: &BTreeMap<String, QPoly>, cat: &Catalog) -> Result<QPoly> {
    let white = white_degrees(cat);
    parse(expr, &|id| white.get(id).or_else(|| implied.get(id)).cloned())
        .map_err(|e| match e {
            Error::Parse { .. } => e,
            other => other,
        })
}
