//! The published G2(q) → Sp6(q) fusion (symbolic class labels, with the ε
//! branches spelled out) and a consistency check against a computed fusion.
//!
//! Labels are matched to computed classes only through element orders, so a
//! block of rows is compared only when it has exactly as many rows as there
//! are computed classes of that order. Everything else is reported as
//! ambiguous.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::FusionMap;
use crate::chartab::ClassInfo;
use crate::error::Result;

pub const TABLE2_JSON: &str = include_str!("../../data/table2.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2Row {
    pub h: String,
    /// "eps=1" / "eps=-1" → Sp6 label
    pub g: BTreeMap<String, String>,
    pub family: String,
    #[serde(default)]
    pub order: Option<u32>,
    #[serde(default)]
    pub order_q2: Option<u32>,
    #[serde(default)]
    pub note: Option<String>,
}

impl Table2Row {
    pub fn g_label(&self, eps: i32) -> &str {
        &self.g[if eps == 1 { "eps=1" } else { "eps=-1" }]
    }

    fn order_at(&self, q: u32) -> Option<u32> {
        self.order.or(if q == 2 { self.order_q2 } else { None })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2 {
    pub version: u32,
    pub description: String,
    pub order_q2_note: String,
    pub g_unipotent_orders: BTreeMap<String, u32>,
    pub rows: Vec<Table2Row>,
}

pub fn table2() -> Result<Table2> {
    Ok(serde_json::from_str(TABLE2_JSON)?)
}

/// q ≡ ε (mod 3).
pub fn epsilon(q: u32) -> i32 {
    if q % 3 == 1 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Consistent,
    Inconsistent,
    Ambiguous,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyItem {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

fn block_pattern<T: Ord + Clone>(labels: &[T]) -> Vec<usize> {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for l in labels {
        *counts.entry(l.clone()).or_default() += 1;
    }
    let mut v: Vec<usize> = counts.into_values().collect();
    v.sort_unstable();
    v
}

fn fourth_power(info: &ClassInfo, c: usize) -> Option<usize> {
    let sq = |x: usize| info.classes[x].powermaps.get(&2).copied();
    sq(c).and_then(sq)
}

/// Compares the table at `q` (only meaningful as a hint outside q ≥ 4) with
/// a computed fusion of G2(q) into Sp6(q).
pub fn check_table2(t: &Table2, q: u32, f: &FusionMap, h: &ClassInfo, g: &ClassInfo) -> Vec<ConsistencyItem> {
    let eps = epsilon(q);
    let mut out = vec![];

    // Unipotent class counts in G.
    let mut want: BTreeMap<u32, usize> = BTreeMap::new();
    for &o in t.g_unipotent_orders.values() {
        *want.entry(o).or_default() += 1;
    }
    let mut got: BTreeMap<u32, usize> = BTreeMap::new();
    for c in &g.classes {
        if c.order.is_power_of_two() {
            *got.entry(c.order).or_default() += 1;
        }
    }
    out.push(ConsistencyItem {
        check: "Sp6 unipotent classes by order".into(),
        status: if want == got { Status::Consistent } else { Status::Inconsistent },
        detail: format!("labels {want:?}, computed {got:?}"),
    });

    // Blocks of rows with a known element order.
    let mut by_order: BTreeMap<u32, Vec<&Table2Row>> = BTreeMap::new();
    for r in &t.rows {
        if let Some(o) = r.order_at(q) {
            by_order.entry(o).or_default().push(r);
        }
    }
    for (o, rows) in &by_order {
        let classes: Vec<usize> = (0..h.len()).filter(|&c| h.classes[c].order == *o).collect();
        let names: Vec<&str> = rows.iter().map(|r| r.h.as_str()).collect();
        let check = format!("order {o}: {}", names.join(", "));
        if classes.len() != rows.len() {
            out.push(ConsistencyItem {
                check,
                status: Status::Ambiguous,
                detail: format!("{} rows but {} computed classes", rows.len(), classes.len()),
            });
            continue;
        }
        let labels: Vec<&str> = rows.iter().map(|r| r.g_label(eps)).collect();
        let images: Vec<usize> = classes.iter().map(|&c| f.image(c)).collect();
        let (pl, pi) = (block_pattern(&labels), block_pattern(&images));
        out.push(ConsistencyItem {
            check,
            status: if pl == pi { Status::Consistent } else { Status::Inconsistent },
            detail: format!("label blocks {pl:?} ({}), image blocks {pi:?} {images:?}", labels.join(", ")),
        });
    }

    // A1 is the class of 4th powers of order-8 elements, in both groups.
    let h8: Vec<usize> = (0..h.len()).filter(|&c| h.classes[c].order == 8).collect();
    let g8: Vec<usize> = (0..g.len()).filter(|&c| g.classes[c].order == 8).collect();
    let ha: Vec<Option<usize>> = h8.iter().map(|&c| fourth_power(h, c)).collect();
    let ga: Vec<Option<usize>> = g8.iter().map(|&c| fourth_power(g, c)).collect();
    let anchor = match (ha.first().copied().flatten(), ga.first().copied().flatten()) {
        (Some(a), Some(b)) if ha.iter().all(|&x| x == Some(a)) && ga.iter().all(|&x| x == Some(b)) => {
            ConsistencyItem {
                check: "A1 -> c_{1,2} (4th powers of order-8 elements)".into(),
                status: if f.image(a) == b { Status::Consistent } else { Status::Inconsistent },
                detail: format!("H class {a} maps to {}, G class of 4th powers is {b}", f.image(a)),
            }
        }
        _ => ConsistencyItem {
            check: "A1 -> c_{1,2} (4th powers of order-8 elements)".into(),
            status: Status::Ambiguous,
            detail: "4th powers of order-8 elements do not form one class".into(),
        },
    };
    out.push(anchor);

    for r in t.rows.iter().filter(|r| r.order_at(q).is_none()) {
        out.push(ConsistencyItem {
            check: format!("{} -> {}", r.h, r.g_label(eps)),
            status: Status::Ambiguous,
            detail: format!("no order-based alignment at q={q}"),
        });
    }
    out
}
