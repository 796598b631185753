//! Conjugacy classes of an enumerated group.
//!
//! Classes are the orbits of conjugation by the generators, found by a
//! breadth-first sweep over element ordinals; this is linear in |G| and
//! never needs fingerprint buckets to be split afterwards.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::fingerprint::{fingerprint, Fingerprint};
use super::mat::Code;
use super::Group;

#[derive(Clone, Debug, Serialize)]
pub struct ConjClass {
    /// Member with the smallest code.
    pub rep: Code,
    pub size: u64,
    pub centralizer: u64,
    pub order: u32,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<ConjClass>,
    /// Class index of each element, by group ordinal.
    class_of: Vec<u32>,
    /// Ordinals of the members of each class, ascending.
    members: Vec<Vec<u32>>,
    /// p ↦ (class i ↦ class of x^p), for primes p dividing |G|.
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub inverse: Vec<usize>,
    pub group_order: u64,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of_ordinal(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    pub fn class_of(&self, g: &Group, x: Code) -> Option<usize> {
        g.ordinal(x).map(|i| self.class_of[i] as usize)
    }

    pub fn members(&self, c: usize) -> &[u32] {
        &self.members[c]
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn centralizers(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.centralizer).collect()
    }

    pub fn orders(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c.order).collect()
    }

    /// Class of x^k for x in class `c`.
    pub fn power_class(&self, g: &Group, c: usize, k: u64) -> usize {
        let x = g.space.pow(self.classes[c].rep, k);
        self.class_of(g, x).expect("powers stay in the group")
    }

    /// Pairs of distinct classes with identical fingerprints.
    pub fn fingerprint_collisions(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.classes[i].fingerprint == self.classes[j].fingerprint {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn conjugacy_classes(g: &Group) -> ClassData {
    let space = &g.space;
    let n = g.order() as usize;
    let conj: Vec<(Code, Code)> = g.generators.iter().map(|&s| (s, space.inv(s))).collect();
    const NONE: u32 = u32::MAX;
    let mut raw = vec![NONE; n];
    let mut orbits: Vec<Vec<u32>> = vec![];
    for start in 0..n {
        if raw[start] != NONE {
            continue;
        }
        let id = orbits.len() as u32;
        raw[start] = id;
        let mut orbit = vec![start as u32];
        let mut head = 0;
        while head < orbit.len() {
            let x = g.element(orbit[head] as usize);
            head += 1;
            for &(s, si) in &conj {
                let y = space.mul(space.mul(s, x), si);
                let j = g.ordinal(y).expect("conjugate lies in the group");
                if raw[j] == NONE {
                    raw[j] = id;
                    orbit.push(j as u32);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }

    let mut classes: Vec<(ConjClass, Vec<u32>)> = orbits
        .into_par_iter()
        .map(|members| {
            let rep = members.iter().map(|&i| g.element(i as usize)).min().unwrap();
            let fp = fingerprint(space, rep);
            let size = members.len() as u64;
            (
                ConjClass {
                    rep,
                    size,
                    centralizer: n as u64 / size,
                    order: fp.order,
                    fingerprint: fp,
                },
                members,
            )
        })
        .collect();
    classes.sort_by(|(a, _), (b, _)| {
        (a.order, a.size, &a.fingerprint, a.rep).cmp(&(b.order, b.size, &b.fingerprint, b.rep))
    });

    let mut class_of = vec![0u32; n];
    for (c, (_, members)) in classes.iter().enumerate() {
        for &i in members {
            class_of[i as usize] = c as u32;
        }
    }
    let (classes, members): (Vec<ConjClass>, Vec<Vec<u32>>) = classes.into_iter().unzip();
    let lookup = |x: Code| class_of[g.ordinal(x).unwrap()] as usize;
    let power_maps = prime_divisors(n as u64)
        .into_iter()
        .map(|p| {
            let m = classes.iter().map(|c| lookup(space.pow(c.rep, p))).collect();
            (p, m)
        })
        .collect();
    let inverse = classes.iter().map(|c| lookup(space.inv(c.rep))).collect();
    ClassData {
        classes,
        class_of,
        members,
        power_maps,
        inverse,
        group_order: n as u64,
    }
}
