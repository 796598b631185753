use std::collections::BTreeSet;
use std::sync::OnceLock;

use spweil::classify::*;
use spweil::grp::subgroups::maximal_subgroup_names;
use spweil::grp::DEFAULT_BUDGET;
use spweil::qpoly::Catalog;

fn sp6() -> &'static GroupContext {
    static CELL: OnceLock<GroupContext> = OnceLock::new();
    CELL.get_or_init(|| GroupContext::build(3, 2, DEFAULT_BUDGET).unwrap())
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn sp6_2_norm_one_sets_agree_with_oracle() {
    let ctx = sp6();
    let expected: &[(&str, &[&str])] = &[
        ("G2(2)", &["alpha", "zeta1", "rho1", "chi9"]),
        ("O-", &["beta"]),
        ("O+", &["alpha", "chi7", "chi4"]),
        ("P3", &["alpha", "chi4"]),
        ("L2(8).3", &["alpha", "zeta1", "rho1", "chi4"]),
        ("P1", &[]),
        ("P2", &[]),
        ("Sp2xSp4", &[]),
    ];
    assert_eq!(expected.len(), maximal_subgroup_names(3, 2).len());
    assert_eq!(ctx.table.degrees()[ctx.resolve("chi9").unwrap()], 56);
    assert_ne!(ctx.resolve("chi4").unwrap(), ctx.resolve("zeta1").unwrap());
    for (h, want) in expected {
        let sub = ctx.subgroup(h).unwrap();
        let screened = ordinary_classification(&ctx.table, &sub.table, &sub.fusion).unwrap();
        let oracle = brute_force_norm_one(&ctx.table, &sub.table, &sub.fusion).unwrap();
        assert_eq!(screened, oracle, "{h}");
        let got: BTreeSet<String> = screened
            .iter()
            .filter(|&&i| ctx.table.irreducibles()[i].degree() > 1)
            .map(|&i| ctx.label(i))
            .collect();
        assert_eq!(got, set(want), "{h}");
    }
}

#[test]
fn sp6_2_pipeline_on_p3() {
    let ctx = sp6();
    let sub = ctx.subgroup("P3").unwrap();
    let p = sub.parabolic.as_ref().unwrap();
    let cat = Catalog::builtin();

    let alpha = ctx.weil.get("alpha").unwrap();
    let ct = clifford_orbit_test(alpha, &ctx.group, &ctx.classes, p, cat).unwrap();
    assert_eq!(ct.verdict, None);
    let support: Vec<_> = ct.profile.iter().filter(|e| e.2 != 0).collect();
    assert_eq!(support.len(), 1);
    assert_eq!((support[0].0.as_str(), support[0].1, support[0].2), ("2-", 7, 1));
    assert!(ct.evidence.iter().any(|e| e.test == "Ito" && e.detail.contains("divides [P_3:Z_3] = 168")));

    // Nontrivial orbit sizes on Irr(Z_3) are 7, 7, 21, 28, so a degree prime to 7 fails.
    let beta = ctx.weil.get("beta").unwrap();
    let ct = clifford_orbit_test(beta, &ctx.group, &ctx.classes, p, cat).unwrap();
    assert_eq!(ct.verdict, Some(Verdict::ExcludedByOrbitTest));
    assert!(ct.evidence.iter().any(|e| e.test == "orbit-size divisibility" && e.detail.starts_with("no orbit")));

    let verdicts = classify_subgroup(ctx, &sub, &[0, 7]).unwrap();
    let irr: BTreeSet<String> = verdicts
        .iter()
        .filter(|v| v.ell == 0 && v.verdict == Verdict::Irreducible)
        .map(|v| v.character.clone())
        .collect();
    assert_eq!(irr, set(&["alpha", "chi4"]));
    assert!(verdicts.iter().all(|v| !v.justification.is_empty()));
    let at7 = verdicts.iter().find(|v| v.ell == 7 && v.character == "alpha").unwrap();
    assert_eq!(at7.verdict, Verdict::Irreducible);
}

#[test]
fn sp6_2_p1_is_excluded_by_long_root_fixed_points() {
    let ctx = sp6();
    let sub = ctx.subgroup("P1").unwrap();
    for v in classify_subgroup(ctx, &sub, &[0]).unwrap() {
        assert!(
            matches!(v.verdict, Verdict::ExcludedByOrbitTest | Verdict::ExcludedByScreen),
            "{} {:?}",
            v.character,
            v.verdict
        );
    }
    let alpha = ctx.weil.get("alpha").unwrap();
    let ct = clifford_orbit_test(alpha, &ctx.group, &ctx.classes, sub.parabolic.as_ref().unwrap(), Catalog::builtin())
        .unwrap();
    assert!(ct.evidence[0].detail.starts_with("Z_1 fixes"));
}

#[test]
fn sp6_2_lift_filters() {
    let ctx = sp6();
    let rho2 = ctx.weil.get("rho2").unwrap();
    for h in ["O+", "O-"] {
        let sub = ctx.subgroup(h).unwrap();
        let lf = lift_filters(rho2, &sub.table, &sub.fusion).unwrap();
        assert!(!lf.restriction_irreducible, "{h}");
        assert!(lf.minus_linear_excluded, "{h}");
    }
    let g2 = ctx.subgroup("G2(2)").unwrap();
    let lf = lift_filters(ctx.weil.get("alpha").unwrap(), &g2.table, &g2.fusion).unwrap();
    assert!(lf.restriction_irreducible && !lf.minus_linear_excluded);
    assert_eq!(lf.witness, Some(None));

    // Refuted candidates have integral norm at least 2, and the screen is never
    // overturned downstream.
    for v in classify_subgroup(ctx, &g2, &[0, 3]).unwrap() {
        if v.verdict == Verdict::Reducible {
            let n = v.justification.last().unwrap().detail.rsplit(' ').next().unwrap().to_string();
            let n: i64 = n.parse().unwrap();
            assert!(n >= 2);
        }
        if v.justification.iter().any(|e| e.test.starts_with("degree screen")) {
            assert_eq!(v.verdict, Verdict::ExcludedByScreen);
        }
    }
}

#[test]
fn sp6_2_white_labels() {
    let w = sp6().white_names().unwrap();
    let ctx = sp6();
    assert_eq!(w["chi5"], vec![ctx.resolve("alpha").unwrap()]);
    assert_eq!(w["chi4"], vec![ctx.resolve("rho1").unwrap()]);
    assert_eq!(w["chi8"].len(), 2);
    for (k, rows) in &w {
        if k != "chi8" {
            assert_eq!(rows.len(), 1, "{k}");
        }
    }
    assert_eq!(w["chi11"], vec![ctx.resolve("chi9").unwrap()]);
}

#[test]
fn published_sp6_2_classification_holds() {
    let r = verify_published("1.5", 2, Some(&[0, 7]), DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(
        r.find("G2(2)", Some("rho1 - 1"), 7, Claim::Irreducible).unwrap().outcome,
        Outcome::UndecidableAtDeskScale
    );
    assert_eq!(r.find("G2(2)", Some("alpha"), 7, Claim::Irreducible).unwrap().outcome, Outcome::Confirmed);
    assert_eq!(r.find("P3", None, 0, Claim::Exhaustive).unwrap().outcome, Outcome::Confirmed);
}

#[test]
fn published_s6_classification_holds() {
    let r = verify_published("1.4", 2, Some(&[0]), DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let with: BTreeSet<String> = r.norm_one.iter().filter(|(_, v)| !v.is_empty()).map(|(k, _)| k.clone()).collect();
    assert_eq!(with, set(&["A6", "Sp2(4):2", "O-"]));
}

/// The statement names P2 only, but α_2 also restricts irreducibly to P1:
/// the graph automorphism of Sp4(2^a) swaps the two parabolic classes and
/// fixes the unique degree-18 character.
#[test]
fn published_sp4_4_parabolic_claim_fails_on_p1() {
    let r = verify_published("1.3", 4, Some(&[0]), DEFAULT_BUDGET).unwrap();
    assert_eq!(r.find("P2", Some("alpha"), 0, Claim::Irreducible).unwrap().outcome, Outcome::Confirmed);
    assert_eq!(r.find("P2", None, 0, Claim::Exhaustive).unwrap().outcome, Outcome::Confirmed);
    assert_eq!(r.find("P1", None, 0, Claim::NoCharacter).unwrap().outcome, Outcome::Refuted);
    assert_eq!(r.norm_one["P1"], vec!["alpha".to_string()]);
    assert_eq!(r.count(Outcome::Refuted), 1);
    assert!(!r.passed());
}

#[test]
fn published_sp6_q_claim_is_out_of_reach() {
    let r = verify_published("1.2", 4, None, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.count(Outcome::UndecidableAtDeskScale), r.triples.len());
    assert!(r.symbolic.iter().all(|s| s.holds));
    assert!(matches!(verify_published("1.2", 2, None, DEFAULT_BUDGET), Err(spweil::Error::Unsupported(_))));
    assert!(matches!(verify_published("1.5", 2, Some(&[2]), DEFAULT_BUDGET), Err(spweil::Error::EvenEll)));
    assert!(matches!(verify_published("7.7", 2, None, DEFAULT_BUDGET), Err(spweil::Error::UnknownTheorem(_))));
}
