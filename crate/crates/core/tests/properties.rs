use std::sync::OnceLock;

use num_rational::Ratio;
use proptest::prelude::*;
use spweil::chartab::{inner_product, restrict, ClassFunction, CycInt, CycRing};
use spweil::classify::{degree_screen, ordinary_classification, GroupContext, SubgroupContext, SubgroupDescriptor};
use spweil::fusion::{integrality_audit, possible_fusions, structural_violations, FusionMap};
use spweil::grp::subgroups::maximal_subgroup_names;
use spweil::grp::DEFAULT_BUDGET;
use spweil::qpoly::{parse_closed, QPoly};

struct Sp4 {
    ctx: GroupContext,
    subs: Vec<SubgroupContext>,
    /// every map the search accepts, per subgroup
    fusions: Vec<Vec<FusionMap>>,
}

fn sp4() -> &'static Sp4 {
    static CELL: OnceLock<Sp4> = OnceLock::new();
    CELL.get_or_init(|| {
        let ctx = GroupContext::build(2, 2, DEFAULT_BUDGET).unwrap();
        let subs: Vec<SubgroupContext> =
            maximal_subgroup_names(2, 2).iter().map(|h| ctx.subgroup(h).unwrap()).collect();
        let fusions = subs
            .iter()
            .map(|s| {
                let (all, stats) = possible_fusions(&s.table, &ctx.table, 1_000_000).unwrap();
                assert!(!stats.truncated);
                all
            })
            .collect();
        Sp4 { ctx, subs, fusions }
    })
}

const MODULI: [u32; 6] = [3, 5, 8, 9, 12, 15];

fn cyc(ring: &std::sync::Arc<CycRing>, exps: &[i64]) -> CycInt {
    exps.iter().fold(CycInt::zero(ring), |acc, &e| acc.add(&CycInt::root(ring, e)))
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

fn poly() -> impl Strategy<Value = QPoly> {
    (prop::collection::vec(-20i64..20, 1..6), prop_oneof![Just(1i64), Just(2), Just(3), Just(6)])
        .prop_map(|(c, d)| QPoly::from_coeffs(&c, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Exact products agree with floating-point evaluation at ζ = e^{2πi/m}.
    #[test]
    fn cycint_ring_laws(
        mi in 0usize..MODULI.len(),
        a in prop::collection::vec(-30i64..30, 0..6),
        b in prop::collection::vec(-30i64..30, 0..6),
        c in prop::collection::vec(-30i64..30, 0..6),
        k in 1i64..40,
    ) {
        let ring = CycRing::new(MODULI[mi]).unwrap();
        let (x, y, z) = (cyc(&ring, &a), cyc(&ring, &b), cyc(&ring, &c));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.sub(&x), CycInt::zero(&ring));
        if num_integer::gcd(k, MODULI[mi] as i64) == 1 {
            prop_assert_eq!(x.mul(&y).galois(k), x.galois(k).mul(&y.galois(k)));
        }
        let (xf, yf) = (x.to_complex(), y.to_complex());
        let prod = (xf.0 * yf.0 - xf.1 * yf.1, xf.0 * yf.1 + xf.1 * yf.0);
        prop_assert!(close(x.mul(&y).to_complex(), prod));
        // |x|^2 = x * conj(x) is real and nonnegative.
        let n = x.mul(&x.conj()).to_complex();
        prop_assert!(n.1.abs() < 1e-6 && n.0 > -1e-6);
    }

    #[test]
    fn qpoly_evaluation_is_a_ring_map(a in poly(), b in poly(), q in -6i64..40, s in -3i64..4) {
        let ev = |p: &QPoly, q: i64| p.eval(&q.into());
        prop_assert_eq!(ev(&(&a * &b), q), ev(&a, q) * ev(&b, q));
        prop_assert_eq!(ev(&(&a + &b), q), ev(&a, q) + ev(&b, q));
        prop_assert_eq!(ev(&a.taylor_shift(s), q), ev(&a, q + s));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a.clone());
        }
        prop_assert_eq!(parse_closed(&a.to_string()).unwrap(), a);
    }

    /// Random integer combinations of irreducibles of S6 decompose back to
    /// their coefficients, and every restriction has integral norm.
    #[test]
    fn class_function_decomposition(coeffs in prop::collection::vec(-3i64..=3, 11), h in 0usize..7) {
        let s = sp4();
        let t = &s.ctx.table;
        prop_assert_eq!(t.len(), coeffs.len());
        let f = t
            .irreducibles()
            .iter()
            .zip(&coeffs)
            .fold(t.trivial().scale(0), |acc: ClassFunction, (chi, &c)| acc.add(&chi.scale(c)).unwrap());
        let back = t.decompose(&f).unwrap();
        prop_assert_eq!(back, coeffs.iter().map(|&c| Ratio::from_integer(c)).collect::<Vec<_>>());
        let norm: i64 = coeffs.iter().map(|c| c * c).sum();
        prop_assert_eq!(inner_product(&f, &f).unwrap(), Ratio::from_integer(norm));
        let sub = &s.subs[h];
        let r = restrict(&f, sub.table.info(), &sub.fusion.0).unwrap();
        prop_assert!(inner_product(&r, &r).unwrap().is_integer());
    }

    /// Moving one H-class to another G-class of the same element order gives a
    /// map that passes the audit exactly when the search also accepts it.
    #[test]
    fn audit_agrees_with_search(h in 0usize..7, c in 0usize..64, pick in 0usize..64) {
        let s = sp4();
        let sub = &s.subs[h];
        let (hi, gi) = (sub.table.info(), s.ctx.table.info());
        let c = c % hi.len();
        let same: Vec<usize> = (0..gi.len()).filter(|&d| gi.classes[d].order == hi.classes[c].order).collect();
        let mut f = sub.fusion.clone();
        f.0[c] = same[pick % same.len()];
        let clean = structural_violations(&f, hi, gi).is_empty()
            && integrality_audit(&f, &s.ctx.table, &sub.table, true).unwrap().passed();
        prop_assert_eq!(clean, s.fusions[h].contains(&f), "{} class {}", sub.name, c);
    }
}

#[test]
fn exact_fusions_are_found_by_search() {
    let s = sp4();
    for (sub, all) in s.subs.iter().zip(&s.fusions) {
        assert!(all.contains(&sub.fusion), "{}", sub.name);
    }
}

/// The degree screen never discards a character that restricts irreducibly.
#[test]
fn degree_screen_is_sound() {
    let s = sp4();
    let degrees = s.ctx.table.degrees();
    for sub in &s.subs {
        let irr = ordinary_classification(&s.ctx.table, &sub.table, &sub.fusion).unwrap();
        let out = degree_screen(&degrees, &SubgroupDescriptor::from_table(&sub.name, &sub.table));
        for (i, why) in &out.excluded {
            assert!(!irr.contains(i), "{}: {} excluded by {:?}", sub.name, i, why);
        }
    }
}
