//! Small symplectic groups over GF(q), q even, fully enumerated.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

pub mod classes;
pub mod fingerprint;
pub mod mat;
pub mod parabolic;
pub mod subgroups;

pub use classes::{conjugacy_classes, ClassData, ConjClass};
pub use fingerprint::{fingerprint, Fingerprint};
pub use mat::{Code, Mat, MatSpace, Root};
pub use parabolic::{parabolic_decomposition, ParabolicData};
pub use subgroups::{subgroup_construct, SubgroupSpec};

pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// A finite matrix group with a complete element index.
#[derive(Clone, Debug)]
pub struct Group {
    pub space: Arc<MatSpace>,
    pub name: String,
    pub generators: Vec<Code>,
    elements: Vec<Code>,
    index: FxHashMap<Code, u32>,
}

impl Group {
    /// Closes `generators` under multiplication. The identity gets ordinal 0.
    pub fn closure(
        space: Arc<MatSpace>,
        name: impl Into<String>,
        generators: Vec<Code>,
        budget: u64,
    ) -> Result<Group> {
        let id = space.identity();
        let mut elements = vec![id];
        let mut index = FxHashMap::default();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            head += 1;
            for &g in &generators {
                let y = space.mul(x, g);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                    if elements.len() as u64 >= budget {
                        return Err(Error::Budget {
                            required: elements.len() as u128 + 1,
                            budget,
                        });
                    }
                    e.insert(elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        Ok(Group {
            space,
            name: name.into(),
            generators,
            elements,
            index,
        })
    }

    /// A group from an already closed element list (identity first).
    pub(crate) fn from_parts(
        space: Arc<MatSpace>,
        name: String,
        generators: Vec<Code>,
        elements: Vec<Code>,
    ) -> Group {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as u32))
            .collect();
        Group {
            space,
            name,
            generators,
            elements,
            index,
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Code] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Code {
        self.elements[i]
    }

    pub fn ordinal(&self, x: Code) -> Option<usize> {
        self.index.get(&x).map(|&i| i as usize)
    }

    pub fn contains(&self, x: Code) -> bool {
        self.index.contains_key(&x)
    }

    pub fn mul(&self, x: Code, y: Code) -> Code {
        self.space.mul(x, y)
    }

    pub fn inv(&self, x: Code) -> Code {
        self.space.inv(x)
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    pub fn n(&self) -> usize {
        self.space.n
    }
}

/// q^{n^2} Π_{i=1..n} (q^{2i} − 1).
pub fn symplectic_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    (1..=n).fold(q.pow(n * n), |acc, i| acc * (q.pow(2 * i) - 1))
}

/// Generators of Sp_{2n}(q): root elements x_r(t) for the simple roots and
/// their negatives, t running over the additive basis 1, δ, …, δ^{a−1}.
pub fn symplectic_generators(space: &MatSpace) -> Vec<Code> {
    let n = space.n;
    let f = &space.field.base;
    let delta = space.field.delta();
    let ts: Vec<u8> = (0..space.field.a() as u64)
        .map(|k| f.pow(delta, k).0 as u8)
        .collect();
    let mut roots = vec![];
    for i in 0..n.saturating_sub(1) {
        roots.push(Root::Short(i, i + 1));
        roots.push(Root::Short(i + 1, i));
    }
    roots.push(Root::LongPos(n - 1));
    roots.push(Root::LongNeg(n - 1));
    let mut gens = vec![];
    for r in roots {
        for &t in &ts {
            gens.push(space.root_element(r, t));
        }
    }
    gens
}

/// Enumerates Sp_{2n}(q), failing before any work if the order exceeds the
/// budget.
pub fn symplectic_group(n: usize, q: u32, budget: u64) -> Result<Group> {
    let required = symplectic_order(n as u32, q as u64);
    if required > budget as u128 {
        return Err(Error::Budget { required, budget });
    }
    let space = Arc::new(MatSpace::new(n, q)?);
    let gens = symplectic_generators(&space);
    for &g in &gens {
        if !space.is_symplectic(g) {
            return Err(Error::NotInGroup(format!("{:?}", space.decode(g).rows())));
        }
    }
    let g = Group::closure(space, format!("Sp{}({q})", 2 * n), gens, budget)?;
    if g.order() as u128 != required {
        return Err(Error::Data(format!(
            "closure has order {}, expected {required}",
            g.order()
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(symplectic_group(1, 2, DEFAULT_BUDGET).unwrap().order(), 6);
        assert_eq!(symplectic_group(1, 4, DEFAULT_BUDGET).unwrap().order(), 60);
        assert_eq!(symplectic_group(2, 2, DEFAULT_BUDGET).unwrap().order(), 720);
    }

    #[test]
    fn budget_is_reported() {
        match symplectic_group(3, 4, DEFAULT_BUDGET) {
            Err(Error::Budget { required, .. }) => {
                assert_eq!(required, symplectic_order(3, 4))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            symplectic_group(2, 2, 100),
            Err(Error::Budget { .. })
        ));
    }
}
