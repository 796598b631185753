use std::collections::BTreeMap;

use num_rational::Ratio;
use spweil::chartab::{dixon_character_table, inner_product, CharTable};
use spweil::grp::classes::conjugacy_classes;
use spweil::grp::parabolic::parabolic_decomposition;
use spweil::grp::{symplectic_group, ClassData, Group, DEFAULT_BUDGET};
use spweil::weil::{
    check_class_functions, constituent_residuals, orbit_restriction_profile, weil_constituents,
    zeta2_named_check, WeilContext,
};

fn setup(n: usize, q: u32) -> (Group, ClassData, CharTable) {
    let g = symplectic_group(n, q, DEFAULT_BUDGET).unwrap();
    let c = conjugacy_classes(&g);
    let t = dixon_character_table(&g, &c).unwrap();
    (g, c, t)
}

fn profile(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(l, m)| (l.to_string(), *m)).collect()
}

fn check_sp4(q: u32) {
    let (g, c, t) = setup(2, q);
    let ctx = WeilContext::new(2, q, t.ring().clone()).unwrap();
    assert_eq!(check_class_functions(&ctx, &g, &c).unwrap(), g.order());
    let w = weil_constituents(&g, &c, &t).unwrap();
    let qi = q as i64;
    if q == 4 {
        assert_eq!(w.get("alpha").unwrap().degree(), 18);
    }
    let p2 = parabolic_decomposition(&g, 2).unwrap();
    let mut expected = vec![
        ("alpha", profile(&[("2-", 1)])),
        ("beta", profile(&[("0", 1), ("1", 1), ("2-", 1)])),
        ("rho1", profile(&[("0", qi), ("2+", 1)])),
        ("rho2", profile(&[("0", qi + 1), ("1", 1), ("2+", 1)])),
    ];
    for i in 1..=q / 2 {
        expected.push((
            Box::leak(format!("zeta{i}").into_boxed_str()),
            profile(&[("1", 1), ("2-", 2)]),
        ));
    }
    for i in 1..=(q - 2) / 2 {
        expected.push((
            Box::leak(format!("tau{i}").into_boxed_str()),
            profile(&[("0", 2 * qi + 2), ("1", 1), ("2+", 2)]),
        ));
    }
    for (name, want) in expected {
        let chi = w.get(name).unwrap();
        let p = orbit_restriction_profile(chi, &g, &c, &p2).unwrap();
        assert_eq!(p.total(), chi.degree() as i64, "{name}");
        assert_eq!(p.support(), want, "{name} at q={q}");
    }
    for chk in zeta2_named_check(&g, &c, &t, &w, &p2).unwrap() {
        assert!(chk.passed, "{} ({})", chk.name, chk.detail);
    }
}

#[test]
fn sp4_2_weil_profiles_on_z2() {
    check_sp4(2);
}

#[test]
fn sp4_4_weil_profiles_on_z2() {
    check_sp4(4);
}

#[test]
fn sp6_2_weil_characters() {
    let (g, c, t) = setup(3, 2);
    let ctx = WeilContext::new(3, 2, t.ring().clone()).unwrap();
    assert_eq!(check_class_functions(&ctx, &g, &c).unwrap(), 1_451_520);
    let w = weil_constituents(&g, &c, &t).unwrap();
    let deg = |s: &str| w.get(s).unwrap().degree();
    assert_eq!((deg("alpha"), deg("beta"), deg("rho1"), deg("rho2"), deg("zeta1")), (7, 15, 27, 35, 21));
    let (a, b) = constituent_residuals(&w).unwrap();
    assert_eq!(a, Ratio::from_integer(0));
    assert_eq!(b, Ratio::from_integer(0));
    for (name, (_, chi)) in &w.named {
        assert_eq!(inner_product(chi, chi).unwrap(), Ratio::from_integer(1), "{name}");
    }
    let p3 = parabolic_decomposition(&g, 3).unwrap();
    let alpha = orbit_restriction_profile(w.get("alpha").unwrap(), &g, &c, &p3).unwrap();
    assert_eq!(alpha.support(), profile(&[("2-", 1)]));
    for (name, (_, chi)) in &w.named {
        let p = orbit_restriction_profile(chi, &g, &c, &p3).unwrap();
        assert_eq!(p.total(), chi.degree() as i64, "{name}");
    }
}
