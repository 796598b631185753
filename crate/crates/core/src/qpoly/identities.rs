//! Self-consistency checks over the catalog: orbit sums, orbit-stabilizer
//! products, bound comparisons, Brauer-row degrees and the degree matches
//! between named characters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::appendix::{appendix_rows, check_appendix};
use super::{cyclotomic, parse, Catalog, QPoly};
use crate::error::Result;

/// Field sizes at which numeric comparisons are made.
pub const SAMPLE_Q: [i64; 4] = [4, 8, 16, 32];

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub group: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn group(&self, g: &str) -> impl Iterator<Item = &IdentityCheck> + '_ {
        let g = g.to_string();
        self.checks.iter().filter(move |c| c.group == g)
    }
}

struct Suite<'a> {
    cat: &'a Catalog,
    group: &'static str,
    out: Vec<IdentityCheck>,
}

impl Suite<'_> {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(IdentityCheck {
            name: name.into(),
            group: self.group.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn eval(&self, f: &str) -> Result<QPoly> {
        self.cat.eval_formula(f)
    }

    /// Symbolic equality of two formulas over catalog names.
    fn eq(&mut self, lhs: &str, rhs: &str) -> Result<()> {
        let (a, b) = (self.eval(lhs)?, self.eval(rhs)?);
        let ok = a == b;
        let detail = if ok {
            format!("both sides equal {a}")
        } else {
            format!("lhs {a}, rhs {b}")
        };
        self.push(format!("{lhs} = {rhs}"), ok, detail);
        Ok(())
    }

    fn eq_poly(&mut self, name: impl Into<String>, a: &QPoly, b: &QPoly) {
        let ok = a == b;
        let detail = if ok {
            format!("{a}")
        } else {
            format!("lhs {a}, rhs {b}")
        };
        self.push(name, ok, detail);
    }

    /// `lhs > rhs` at each sample q.
    fn gt_at(&mut self, lhs: &QPoly, rhs: &QPoly, name: &str, qs: &[i64]) {
        for &q in qs {
            let (a, b) = (lhs.eval(&BigInt::from(q)), rhs.eval(&BigInt::from(q)));
            self.push(format!("{name} at q={q}"), a > b, format!("{a} vs {b}"));
        }
    }
}

fn orbit_checks(s: &mut Suite) -> Result<()> {
    s.group = "orbit sums";
    s.eq("1 + O1_Z3 + O2m_Z3 + O2p_Z3 + O3_Z3", "q^6")?;
    s.eq("1 + O1_Z2 + O2m_Z2 + O2p_Z2", "q^3")?;
    s.group = "orbit-stabilizer";
    for o in ["O1", "O2m", "O2p", "O3"] {
        s.eq(&format!("{o}_Z3 * stab_{o}_Z3"), "GL3_order")?;
    }
    s.eq("P3_index_Z3", "GL3_order")?;
    Ok(())
}

fn bound_checks(s: &mut Suite) -> Result<()> {
    s.group = "bounds";
    s.eq("B_3", "B_2p")?;
    s.eq("B_2p", "B_2p_from_orbit")?;
    s.eq("B_3", "B_3_from_orbit")?;
    s.eq("B_1_sq", "B_1_sq_from_orbit")?;
    s.eq("B_2m_sq", "B_2m_sq_from_orbit")?;
    let b3sq = s.eval("B_3^2")?;
    let b2m = s.eval("B_2m_sq")?;
    let b1 = s.eval("B_1_sq")?;
    s.gt_at(&b3sq, &b2m, "B_3^2 > B_2m_sq", &SAMPLE_Q);
    s.gt_at(&b2m, &b1, "B_2m_sq > B_1_sq", &SAMPLE_Q);

    let nonu = s.eval("B_nonunipotent")?;
    let b3 = s.eval("B_3")?;
    for (name, f) in [
        ("smallest other semisimple index", "(q-1)^2*(q^2+1)*(q^4+q^2+1)"),
        ("GU3/GL3 family times q^2-q", "B_c6_degree*(q^2-q)"),
    ] {
        let diff = &s.eval(f)? - &nonu;
        s.push(
            format!("{name} > B_nonunipotent for q >= 4"),
            diff.positive_for_q_at_least(4),
            format!("difference {diff}"),
        );
    }
    let nonu_sq = nonu.pow(2);
    s.gt_at(&nonu_sq, &b2m, "B_nonunipotent^2 > B_2m_sq", &SAMPLE_Q);
    // Holds from q = 8 on; at q = 4 the non-unipotent bound is the smaller one.
    s.gt_at(&nonu, &b3, "B_nonunipotent > B_3", &[8, 16, 32]);
    let (n4, b4) = (nonu.at(4), b3.at(4));
    s.push(
        "B_nonunipotent < B_3 at q=4",
        n4 < b4,
        format!("{n4} vs {b4}"),
    );

    let m = s.eval("alpha_3 - m_SL2q3_3")?;
    s.push(
        "alpha_3 - m_SL2q3_3 > 0 for q >= 4",
        m.positive_for_q_at_least(4),
        format!("difference {m}"),
    );
    Ok(())
}

fn appendix_checks(s: &mut Suite) -> Result<()> {
    s.group = "brauer rows";
    let res = check_appendix(s.cat)?;
    for r in &res.rows {
        s.push(format!("{} / {}", r.table, r.label), r.passed, r.detail.clone());
    }

    // Lower bound for the phi10 degree over the whole range of the unknowns
    // 1 <= beta2 <= q/2+1, 1 <= beta3 <= q/2.
    let implied = &res.implied;
    let row10 = appendix_rows()
        .iter()
        .find(|r| r.table == "l | q+1" && r.label == "phi10")
        .expect("phi10 row");
    let written = super::parse_closed("phi1^2*phi3*(q^3*phi4-q^5/4+q/2-phi4-q^2*phi1*phi6/4)")?;
    for q in SAMPLE_Q {
        let mut min: Option<i128> = None;
        for b2 in 1..=q / 2 + 1 {
            for b3 in 1..=q / 2 {
                let deg = parse(&row10.degree, &|id| match id {
                    "beta2" => Some(QPoly::constant(b2)),
                    "beta3" => Some(QPoly::constant(b3)),
                    _ => None,
                })?;
                let v = deg.at(q);
                min = Some(min.map_or(v, |m: i128| m.min(v)));
            }
        }
        let (min, bound) = (min.unwrap(), written.at(q));
        s.push(
            format!("phi10 degree >= lower bound over the beta range at q={q}"),
            min >= bound,
            format!("minimum {min}, bound {bound}"),
        );
    }
    let d6 = s.eval("D_l_divides_phi6")?;
    let d134 = s.eval("D_l_divides_phi1phi3phi4")?;
    s.gt_at(&written, &d6, "phi10 upper degree > D(l | q^2-q+1)", &SAMPLE_Q);
    s.gt_at(&written, &d134, "phi10 upper degree > D(l | q^3-1)", &SAMPLE_Q);

    let row7 = appendix_rows()
        .iter()
        .find(|r| r.table == "l | q+1" && r.label == "phi7")
        .expect("phi7 row");
    for (a, name) in [("2", "D_l_divides_phi2_not3"), ("1", "D_l_divides_phi2_3")] {
        let deg = parse(&row7.degree, &|id| (id == "alpha").then(|| QPoly::constant(a.parse().unwrap())))?;
        let d = s.eval(name)?;
        s.eq_poly(format!("{name} = phi7 degree at alpha={a}"), &d, &deg);
    }

    s.group = "row consistency";
    let chi = |k: &str| implied.get(k).cloned();
    if let Some(c28) = chi("chi28") {
        let a = s.eval("A2_chi28")?;
        s.eq_poly("A2_chi28 = implied chi28", &a, &c28);
    } else {
        s.push("A2_chi28 = implied chi28", false, "chi28 not implied by the rows");
    }
    s.eq("A2_chi28", "White_chi_6 - White_chi_3 - White_chi_2 + 1")?;
    s.eq("A2_chi6_minus_1", "White_chi_6 - 1")?;
    s.eq("A3_chi7_minus_chi4", "White_chi_7 - White_chi_4")?;
    s.eq("A3_chi35_minus_chi5", "White_chi_7 - White_chi_6 + White_chi_3 - 1")?;
    s.eq("A3_chi35_minus_chi5", "A3_chi35_minus_chi5_factored")?;
    let v = s.eval("A3_chi35_minus_chi5")?.at(4);
    s.push("A3_chi35_minus_chi5 at q=4 is 13545 and odd", v == 13545 && v % 2 == 1, format!("{v}"));
    Ok(())
}

fn degree_matches(s: &mut Suite) -> Result<()> {
    s.group = "centralizers";
    for c in ["c3_0", "c4_0", "c5_0", "c6_0", "c8_0", "c10_0"] {
        s.eq(&format!("index_{c} * centralizer_{c}"), "Sp6_order_odd")?;
    }
    s.group = "weil degrees";
    for n in [2, 3] {
        s.eq(&format!("zeta0_{n}"), &format!("alpha_{n} + beta_{n}"))?;
        s.eq(&format!("tau0_{n}"), &format!("rho1_{n} + rho2_{n}"))?;
    }
    s.eq("tau_3", "index_c3_0")?;
    s.eq("zeta_3", "index_c4_0")?;
    for c in ["c5", "c6", "c8", "c10"] {
        s.eq(&format!("B_{c}_degree"), &format!("index_{c}_0"))?;
    }
    s.eq("alpha_3", "O2m_Z3")?;
    s.eq("alpha_2", "O2m_Z2")?;
    s.eq("d_Sp6", "alpha_3")?;
    s.eq("d_Sp4", "alpha_2")?;

    s.group = "defect bounds";
    s.eq("D_l_divides_phi6", "D_l_divides_phi6_closed")?;
    s.eq("D_l_divides_phi6", "White_chi_11 - White_chi_5")?;
    s.eq("D_l_divides_phi1phi3phi4", "White_chi_11")?;

    s.group = "named characters";
    s.eq("White_chi_2", "rho2_3")?;
    s.eq("White_chi_3", "beta_3")?;
    s.eq("White_chi_4", "rho1_3")?;
    s.eq("White_chi_5", "alpha_3")?;
    s.eq("rho2_3", "G2_theta1 + G2_theta4")?;
    s.eq("beta_3", "G2_theta1p + G2_theta4")?;
    s.eq("G2_main_rho1", "rho1_3")?;
    s.eq("G2_main_tau", "tau_3")?;
    s.eq("G2_main_alpha", "alpha_3")?;
    s.eq("G2_main_zeta", "zeta_3")?;
    s.eq("G2_theta2", "rho1_3")?;
    s.eq("G2_theta2p", "alpha_3")?;
    let whites: Vec<QPoly> = (1..=12)
        .map(|i| s.eval(&format!("White_chi_{i}")))
        .collect::<Result<_>>()?;
    let distinct = (0..12).all(|i| (i + 1..12).all(|j| whites[i] != whites[j]));
    s.push("White_chi_1..12 pairwise distinct", distinct, "");

    s.group = "orders";
    s.eq("Sp6_order", "q^9 * Sp6_order_odd")?;
    let o2 = s.eval("Sp6_order")?.at(2);
    s.push("Sp6_order at q=2", o2 == 1_451_520, format!("{o2}"));
    let o4 = s.eval("Sp4_order")?.at(4);
    s.push("Sp4_order at q=4", o4 == 979_200, format!("{o4}"));
    Ok(())
}

fn structural_checks(s: &mut Suite) -> Result<()> {
    s.group = "cyclotomic";
    for k in 1..=12u32 {
        let mut prod = QPoly::constant(1);
        for j in (1..=k).filter(|j| k % j == 0) {
            prod = &prod * &cyclotomic(j)?;
        }
        let target = &QPoly::q().pow(k) - &QPoly::constant(1);
        s.eq_poly(format!("prod_(j | {k}) phi_j = q^{k} - 1"), &prod, &target);
    }

    s.group = "integrality";
    let mut bad = BTreeMap::new();
    for e in s.cat.entries() {
        let den = e.poly.denominator();
        if !(BigInt::from(6u32).is_multiple_of(den)) {
            bad.insert(e.name.clone(), format!("denominator {den}"));
        }
        for q in [2i64, 4, 8, 16, 32] {
            if e.poly.eval_int(q).is_none() {
                bad.insert(e.name.clone(), format!("not an integer at q={q}"));
            }
        }
    }
    let n = s.cat.entries().len();
    let detail = if bad.is_empty() {
        format!("{n} entries integral at q=2..32 with denominators dividing 6")
    } else {
        format!("{bad:?}")
    };
    s.push("catalog entries integral", bad.is_empty(), detail);
    Ok(())
}

/// Runs every check against `cat`.
pub fn verify_identities(cat: &Catalog) -> Result<IdentityReport> {
    let mut s = Suite {
        cat,
        group: "",
        out: vec![],
    };
    orbit_checks(&mut s)?;
    bound_checks(&mut s)?;
    appendix_checks(&mut s)?;
    degree_matches(&mut s)?;
    structural_checks(&mut s)?;
    Ok(IdentityReport { checks: s.out })
}

/// Runs every check against the builtin catalog.
pub fn verify_catalog_identities() -> Result<IdentityReport> {
    verify_identities(Catalog::builtin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_is_consistent() {
        let r = verify_catalog_identities().unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert!(fails.is_empty(), "{fails:#?}");
        assert!(r.checks.len() > 100);
    }

    #[test]
    fn a_broken_catalog_is_caught() {
        let cat = Catalog::builtin().with_replaced("O3_Z3", super::super::parse_closed("q^2*(q-1)*(q^3-1)+1").unwrap());
        let r = verify_identities(&cat).unwrap();
        let names: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"1 + O1_Z3 + O2m_Z3 + O2p_Z3 + O3_Z3 = q^6"));
        assert!(names.contains(&"O3_Z3 * stab_O3_Z3 = GL3_order"));
    }
}
