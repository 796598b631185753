//! Class fusion H → G: exact (through the element index) and by constraint
//! search over candidate maps, pruned by orders, centralizers, power maps and
//! integrality of restricted characters.

pub mod table2;

use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{inner_product, restrict, CharTable, ClassFunction, ClassInfo};
use crate::error::{Error, Result};
use crate::grp::{ClassData, Group};

/// `0[c]` is the G-class containing H-class c.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FusionMap(pub Vec<usize>);

impl FusionMap {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, c: usize) -> usize {
        self.0[c]
    }

    /// The map with the images of H-classes a and b exchanged.
    pub fn swapped(&self, a: usize, b: usize) -> FusionMap {
        let mut v = self.0.clone();
        v.swap(a, b);
        FusionMap(v)
    }
}

/// Fusion through G's element index. H must live in the same matrix space.
pub fn exact_fusion(h: &Group, ch: &ClassData, g: &Group, cg: &ClassData) -> Result<FusionMap> {
    if h.space.d != g.space.d || h.space.q() != g.space.q() {
        return Err(Error::NotInGroup(format!("{} is over a different space", h.name)));
    }
    let map = ch
        .classes
        .iter()
        .map(|c| {
            cg.class_of(g, c.rep)
                .ok_or_else(|| Error::NotInGroup(format!("class representative of {}", h.name)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionMap(map))
}

/// Violations of the structural invariants of a fusion map.
pub fn structural_violations(f: &FusionMap, h: &ClassInfo, g: &ClassInfo) -> Vec<String> {
    let mut out = vec![];
    if f.len() != h.len() {
        out.push(format!("map has {} entries for {} classes", f.len(), h.len()));
        return out;
    }
    for (c, &d) in f.0.iter().enumerate() {
        let (hc, gc) = (&h.classes[c], &g.classes[d]);
        if hc.order != gc.order {
            out.push(format!("class {c}: order {} maps to order {}", hc.order, gc.order));
        }
        if gc.centralizer % hc.centralizer != 0 {
            out.push(format!(
                "class {c}: |C_H| = {} does not divide |C_G| = {}",
                hc.centralizer, gc.centralizer
            ));
        }
        for (p, &hp) in &hc.powermaps {
            match gc.powermaps.get(p) {
                Some(&gp) if gp == f.0[hp] => {}
                _ => out.push(format!("class {c}: {p}-th power map does not commute")),
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// G-irreducible index
    pub chi: usize,
    /// H-irreducible index, or None for the norm ⟨χ∘f, χ∘f⟩
    pub psi: Option<usize>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Audit {
    /// ⟨χ∘f, χ∘f⟩ for every G-irreducible χ, as "a/b" or "irrational"
    pub norms: Vec<String>,
    pub violations: Vec<Violation>,
}

impl Audit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn norm_violations(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.psi.is_none())
    }
}

fn fmt_ratio(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An irrational inner product is recorded as a violation, not an error.
fn checked_product(f: &ClassFunction, h: &ClassFunction) -> Result<Option<Ratio<i64>>> {
    match inner_product(f, h) {
        Ok(r) => Ok(Some(r)),
        Err(Error::NonIntegral(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn restrictions(tg: &CharTable, h: &Arc<ClassInfo>, f: &FusionMap) -> Result<Vec<ClassFunction>> {
    tg.irreducibles().iter().map(|chi| restrict(chi, h, &f.0)).collect()
}

/// For each G-irreducible χ: ⟨χ∘f, χ∘f⟩ must be a positive integer, and when
/// `with_products` is set, ⟨χ∘f, ψ⟩ must be a nonnegative integer for every
/// H-irreducible ψ.
pub fn integrality_audit(f: &FusionMap, tg: &CharTable, th: &CharTable, with_products: bool) -> Result<Audit> {
    if f.len() != th.info().len() {
        return Err(Error::ClassMismatch);
    }
    let res = restrictions(tg, th.info(), f)?;
    let per_chi: Vec<(Option<Ratio<i64>>, Vec<Violation>)> = res
        .par_iter()
        .enumerate()
        .map(|(i, r)| -> Result<_> {
            let mut v = vec![];
            let norm = checked_product(r, r)?;
            match &norm {
                Some(n) if n.is_integer() && *n > Ratio::from_integer(0) => {}
                Some(n) => v.push(Violation { chi: i, psi: None, value: fmt_ratio(n) }),
                None => v.push(Violation { chi: i, psi: None, value: "irrational".into() }),
            }
            if with_products {
                for (j, psi) in th.irreducibles().iter().enumerate() {
                    match checked_product(r, psi)? {
                        Some(ip) if ip.is_integer() && ip >= Ratio::from_integer(0) => {}
                        Some(ip) => v.push(Violation { chi: i, psi: Some(j), value: fmt_ratio(&ip) }),
                        None => v.push(Violation { chi: i, psi: Some(j), value: "irrational".into() }),
                    }
                }
            }
            Ok((norm, v))
        })
        .collect::<Result<_>>()?;
    Ok(Audit {
        norms: per_chi
            .iter()
            .map(|x| x.0.as_ref().map_or_else(|| "irrational".to_string(), fmt_ratio))
            .collect(),
        violations: per_chi.into_iter().flat_map(|x| x.1).collect(),
    })
}

/// Per-class candidate images from orders and centralizer divisibility.
pub fn initial_candidates(h: &ClassInfo, g: &ClassInfo) -> Vec<Vec<usize>> {
    h.classes
        .iter()
        .map(|hc| {
            (0..g.len())
                .filter(|&d| {
                    let gc = &g.classes[d];
                    gc.order == hc.order && gc.centralizer.is_multiple_of(hc.centralizer)
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchStats {
    pub initial: Vec<usize>,
    pub leaves: u64,
    pub rejected_by_characters: u64,
    pub truncated: bool,
}

/// All fusion maps surviving the constraints, in lexicographic order.
pub fn possible_fusions(th: &CharTable, tg: &CharTable, max_leaves: u64) -> Result<(Vec<FusionMap>, SearchStats)> {
    let (h, g) = (th.info(), tg.info());
    let cands = initial_candidates(h, g);
    let k = h.len();
    // Assign classes in order of increasing element order so power images
    // (which have smaller order) are fixed first.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| (h.classes[c].order, c));
    let mut stats = SearchStats {
        initial: cands.iter().map(|c| c.len()).collect(),
        leaves: 0,
        rejected_by_characters: 0,
        truncated: false,
    };
    let mut assign: Vec<Option<usize>> = vec![None; k];
    let mut out = vec![];
    search(0, &order, &cands, h, g, &mut assign, &mut |f: &[Option<usize>]| -> Result<bool> {
        stats.leaves += 1;
        if stats.leaves > max_leaves {
            stats.truncated = true;
            return Ok(false);
        }
        let map = FusionMap(f.iter().map(|x| x.unwrap()).collect());
        if integrality_audit(&map, tg, th, true)?.passed() {
            out.push(map);
        } else {
            stats.rejected_by_characters += 1;
        }
        Ok(true)
    })?;
    out.sort();
    Ok((out, stats))
}

fn consistent(c: usize, d: usize, h: &ClassInfo, g: &ClassInfo, assign: &[Option<usize>]) -> bool {
    for (p, &hp) in &h.classes[c].powermaps {
        let Some(&gp) = g.classes[d].powermaps.get(p) else {
            return false;
        };
        if hp == c {
            if gp != d {
                return false;
            }
        } else if let Some(img) = assign[hp] {
            if img != gp {
                return false;
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    cands: &[Vec<usize>],
    h: &ClassInfo,
    g: &ClassInfo,
    assign: &mut Vec<Option<usize>>,
    leaf: &mut dyn FnMut(&[Option<usize>]) -> Result<bool>,
) -> Result<bool> {
    if depth == order.len() {
        return leaf(assign);
    }
    let c = order[depth];
    for &d in &cands[c] {
        if !consistent(c, d, h, g, assign) {
            continue;
        }
        assign[c] = Some(d);
        if !search(depth + 1, order, cands, h, g, assign, leaf)? {
            assign[c] = None;
            return Ok(false);
        }
    }
    assign[c] = None;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_with_ring;
    use crate::grp::classes::conjugacy_classes;
    use crate::grp::subgroups::{subgroup_construct, SubgroupSpec};
    use crate::grp::{symplectic_group, DEFAULT_BUDGET};

    #[test]
    fn c2_into_s3() {
        let g = symplectic_group(1, 2, DEFAULT_BUDGET).unwrap();
        let cg = conjugacy_classes(&g);
        let tg = crate::chartab::dixon_character_table(&g, &cg).unwrap();
        let inv = cg.classes.iter().find(|c| c.order == 2).unwrap().rep;
        let h = subgroup_construct(&g, &SubgroupSpec::Generators(vec![inv]), "C2").unwrap();
        let ch = conjugacy_classes(&h);
        let th = dixon_with_ring(&h, &ch, tg.ring().clone()).unwrap();
        let f = exact_fusion(&h, &ch, &g, &cg).unwrap();
        assert!(structural_violations(&f, th.info(), tg.info()).is_empty());
        let (all, _) = possible_fusions(&th, &tg, 1000).unwrap();
        assert_eq!(all, vec![f.clone()]);
        assert!(integrality_audit(&f, &tg, &th, true).unwrap().passed());

        let id = exact_fusion(&g, &cg, &g, &cg).unwrap();
        assert_eq!(id.0, (0..cg.len()).collect::<Vec<_>>());
        assert!(integrality_audit(&id, &tg, &tg, true).unwrap().passed());
    }
}
