use std::sync::OnceLock;

use num_rational::Ratio;
use spweil::chartab::{dixon_character_table, dixon_with_ring, inner_product, restrict, CharTable};
use spweil::fusion::table2::{check_table2, table2, Status};
use spweil::fusion::{exact_fusion, integrality_audit, possible_fusions, structural_violations, FusionMap};
use spweil::grp::classes::conjugacy_classes;
use spweil::grp::subgroups::{maximal_subgroup_names, named_subgroup};
use spweil::grp::{symplectic_group, ClassData, Group, DEFAULT_BUDGET};
use spweil::qpoly::catalog_lookup;
use spweil::weil::{weil_constituents, WeilCharacters};

struct Sp6 {
    g: Group,
    cg: ClassData,
    tg: CharTable,
    w: WeilCharacters,
}

fn sp6() -> &'static Sp6 {
    static CELL: OnceLock<Sp6> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = symplectic_group(3, 2, DEFAULT_BUDGET).unwrap();
        let cg = conjugacy_classes(&g);
        let tg = dixon_character_table(&g, &cg).unwrap();
        let w = weil_constituents(&g, &cg, &tg).unwrap();
        Sp6 { g, cg, tg, w }
    })
}

struct Sub {
    th: CharTable,
    f: FusionMap,
}

fn sub(name: &str) -> Sub {
    let s = sp6();
    let h = named_subgroup(&s.g, name).unwrap();
    let ch = conjugacy_classes(&h);
    let th = dixon_with_ring(&h, &ch, s.tg.ring().clone()).unwrap();
    let f = exact_fusion(&h, &ch, &s.g, &s.cg).unwrap();
    Sub { th, f }
}

fn g2() -> &'static Sub {
    static CELL: OnceLock<Sub> = OnceLock::new();
    CELL.get_or_init(|| sub("G2(2)"))
}

#[test]
fn g2_exact_fusion_is_clean_and_found_by_search() {
    let (s, h) = (sp6(), g2());
    assert_eq!(h.f.0, vec![0, 2, 4, 6, 7, 8, 8, 11, 16, 20, 21, 22, 23, 28, 28, 28]);
    assert!(structural_violations(&h.f, h.th.info(), s.tg.info()).is_empty());
    let audit = integrality_audit(&h.f, &s.tg, &h.th, true).unwrap();
    assert!(audit.passed(), "{:?}", audit.violations);
    let (all, stats) = possible_fusions(&h.th, &s.tg, 100_000).unwrap();
    assert!(!stats.truncated);
    assert!(all.contains(&h.f));
}

#[test]
fn perturbed_g2_fusions_are_rejected() {
    let (s, h) = (sp6(), g2());
    let alpha = s.w.row("alpha").unwrap();

    // Class 7 (order 4) sent to G-class 8 instead of 11: α_3 picks up norm 5/4.
    let mut p = h.f.clone();
    p.0[7] = 8;
    let audit = integrality_audit(&p, &s.tg, &h.th, false).unwrap();
    let v = audit.norm_violations().find(|v| v.chi == alpha).unwrap();
    assert_eq!(v.value, "5/4");

    // The two order-8 classes exchanged: every norm stays integral, only the
    // products ⟨χ∘f, ψ⟩ detect it.
    let sw = h.f.swapped(11, 12);
    let audit = integrality_audit(&sw, &s.tg, &h.th, true).unwrap();
    assert_eq!(audit.norm_violations().count(), 0);
    assert!(!audit.passed());
    assert!(audit.violations.iter().all(|v| v.value.ends_with("/2")));
}

#[test]
fn rho2_and_beta_have_norm_two_on_g2() {
    let (s, h) = (sp6(), g2());
    let info = h.th.info();
    for (name, parts) in [("rho2", ["G2_theta1", "G2_theta4"]), ("beta", ["G2_theta1p", "G2_theta4"])] {
        let r = restrict(s.w.get(name).unwrap(), info, &h.f.0).unwrap();
        assert_eq!(inner_product(&r, &r).unwrap(), Ratio::from_integer(2), "{name}");
        let mult = h.th.decompose(&r).unwrap();
        let mut degs: Vec<u64> = mult
            .iter()
            .enumerate()
            .filter(|(_, m)| **m != Ratio::from_integer(0))
            .map(|(i, m)| {
                assert_eq!(*m, Ratio::from_integer(1));
                h.th.irreducibles()[i].degree()
            })
            .collect();
        degs.sort_unstable();
        let mut want: Vec<u64> = parts.iter().map(|p| catalog_lookup(p).unwrap().at(2) as u64).collect();
        want.sort_unstable();
        assert_eq!(degs, want, "{name}");
    }
}

#[test]
fn table2_consistent_at_q2() {
    let (s, h) = (sp6(), g2());
    let items = check_table2(&table2().unwrap(), 2, &h.f, h.th.info(), s.tg.info());
    let bad: Vec<_> = items.iter().filter(|i| i.status == Status::Inconsistent).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert!(items.iter().filter(|i| i.status == Status::Consistent).count() >= 4);
}

#[test]
fn p3_order7_elements_fuse_to_one_class() {
    let s = sp6();
    let h = named_subgroup(&s.g, "P3").unwrap();
    let ch = conjugacy_classes(&h);
    let f = exact_fusion(&h, &ch, &s.g, &s.cg).unwrap();
    let images: std::collections::BTreeSet<usize> =
        (0..ch.len()).filter(|&c| ch.classes[c].order == 7).map(|c| f.image(c)).collect();
    assert_eq!(images.len(), 1);
}

#[test]
fn restricted_norms_are_positive_integers_on_every_maximal_subgroup() {
    let s = sp6();
    for name in maximal_subgroup_names(3, 2) {
        let h = sub(name);
        assert!(structural_violations(&h.f, h.th.info(), s.tg.info()).is_empty(), "{name}");
        let audit = integrality_audit(&h.f, &s.tg, &h.th, true).unwrap();
        assert!(audit.passed(), "{name}: {:?}", audit.violations);
    }
}
