use std::sync::OnceLock;

use spweil::grp::classes::conjugacy_classes;
use spweil::grp::parabolic::{parabolic_decomposition, z_character_orbits};
use spweil::grp::subgroups::{g2_2_file, maximal_subgroup_names, named_subgroup};
use spweil::grp::{fingerprint, symplectic_group, ClassData, Group, DEFAULT_BUDGET};
use spweil::qpoly::catalog_lookup;

fn sp6_2() -> &'static (Group, ClassData) {
    static G: OnceLock<(Group, ClassData)> = OnceLock::new();
    G.get_or_init(|| {
        let g = symplectic_group(3, 2, DEFAULT_BUDGET).unwrap();
        let c = conjugacy_classes(&g);
        (g, c)
    })
}

#[test]
fn sp6_2_order_and_classes() {
    let (g, c) = sp6_2();
    assert_eq!(g.order(), 1_451_520);
    assert_eq!(c.len(), 30);
    assert_eq!(c.sizes().iter().sum::<u64>(), g.order());
    for cl in &c.classes {
        assert_eq!(cl.size * cl.centralizer, g.order());
    }
}

#[test]
fn fingerprints_are_class_functions() {
    let (g, c) = sp6_2();
    for (i, _) in c.classes.iter().enumerate() {
        let ms = c.members(i);
        // a spread of members of every class
        for k in [0, ms.len() / 3, ms.len() / 2, ms.len() - 1] {
            let x = g.element(ms[k] as usize);
            assert_eq!(fingerprint(&g.space, x), c.classes[i].fingerprint);
        }
    }
}

#[test]
fn fourth_powers_of_order_eight_elements_share_a_class() {
    let (g, c) = sp6_2();
    let targets: Vec<usize> = (0..c.len())
        .filter(|&i| c.classes[i].order == 8)
        .map(|i| c.power_class(g, i, 4))
        .collect();
    assert!(!targets.is_empty());
    assert!(targets.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(c.classes[targets[0]].order, 2);
}

#[test]
fn sp6_2_maximal_subgroup_orders() {
    let (g, _) = sp6_2();
    let orders: Vec<u64> = maximal_subgroup_names(3, 2)
        .iter()
        .map(|n| named_subgroup(g, n).unwrap().order())
        .collect();
    assert_eq!(orders, vec![51840, 40320, 23040, 4608, 10752, 12096, 4320, 1512]);
}

#[test]
fn sp6_2_parabolics_and_orbits() {
    let (g, _) = sp6_2();
    let p3 = parabolic_decomposition(g, 3).unwrap();
    assert_eq!(p3.z.order(), 64);
    assert_eq!(p3.q.order(), 64);
    assert!(p3.z_is_centre);
    // Q_3 is abelian, so it equals its centre, and every element squares to 1.
    for &x in p3.q.elements() {
        assert_eq!(g.space.mul(x, x), g.space.identity());
    }
    let p1 = parabolic_decomposition(g, 1).unwrap();
    assert_eq!(p1.z.order(), 2);

    let orb = z_character_orbits(&p3);
    let mut got: Vec<(String, u64)> = orb.orbits.iter().map(|o| (o.label.clone(), o.size)).collect();
    got.sort();
    let want: Vec<(String, u64)> = [("0", "1"), ("1", "O1_Z3"), ("2+", "O2p_Z3"), ("2-", "O2m_Z3"), ("3", "O3_Z3")]
        .iter()
        .map(|(l, n)| {
            let v = if *n == "1" { 1 } else { catalog_lookup(n).unwrap().at(2) as u64 };
            (l.to_string(), v)
        })
        .collect();
    assert_eq!(got, want);
    let sizes: Vec<u64> = got.iter().map(|x| x.1).collect();
    assert_eq!(sizes, vec![1, 7, 21, 7, 28]);
}

#[test]
fn g2_generators_are_octonion_automorphisms() {
    // Independent check of the shipped data: the 8x8 matrices preserve the
    // split octonion product and induce the 6x6 generators.
    let f = g2_2_file();
    let mul = |x: &[u8; 8], y: &[u8; 8]| -> [u8; 8] {
        let (a, u, v, b) = (x[0], &x[1..4], &x[4..7], x[7]);
        let (a2, u2, v2, b2) = (y[0], &y[1..4], &y[4..7], y[7]);
        let dot = |p: &[u8], q: &[u8]| (p[0] & q[0]) ^ (p[1] & q[1]) ^ (p[2] & q[2]);
        let cross = |p: &[u8], q: &[u8]| {
            [
                (p[1] & q[2]) ^ (p[2] & q[1]),
                (p[2] & q[0]) ^ (p[0] & q[2]),
                (p[0] & q[1]) ^ (p[1] & q[0]),
            ]
        };
        let cv = cross(v, v2);
        let cu = cross(u, u2);
        let mut r = [0u8; 8];
        r[0] = (a & a2) ^ dot(u, v2);
        for i in 0..3 {
            r[1 + i] = (a & u2[i]) ^ (b2 & u[i]) ^ cv[i];
            r[4 + i] = (a2 & v[i]) ^ (b & v2[i]) ^ cu[i];
        }
        r[7] = (b & b2) ^ dot(v, u2);
        r
    };
    let apply = |m: &Vec<Vec<u8>>, x: &[u8; 8]| -> [u8; 8] {
        let mut r = [0u8; 8];
        for i in 0..8 {
            r[i] = (0..8).fold(0, |s, k| s ^ (m[i][k] & x[k]));
        }
        r
    };
    let unit = |i: usize| {
        let mut e = [0u8; 8];
        e[i] = 1;
        e
    };
    for (m, six) in f.algebra_generators.iter().zip(&f.generators) {
        for i in 0..8 {
            for j in 0..8 {
                let lhs = apply(m, &mul(&unit(i), &unit(j)));
                let rhs = mul(&apply(m, &unit(i)), &apply(m, &unit(j)));
                assert_eq!(lhs, rhs);
            }
        }
        for c in 0..6 {
            for r in 0..6 {
                let bit = if six[r][c] < 0 { 0 } else { 1 };
                assert_eq!(m[1 + r][1 + c], bit);
            }
        }
    }
}

#[test]
fn sp4_4_subgroups_and_z2_orbits() {
    let g = symplectic_group(2, 4, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.order(), 979_200);
    let orders: Vec<u64> = maximal_subgroup_names(2, 4)
        .iter()
        .map(|n| named_subgroup(&g, n).unwrap().order())
        .collect();
    assert_eq!(orders, vec![11520, 11520, 7200, 8160, 7200]);
    let p2 = parabolic_decomposition(&g, 2).unwrap();
    assert_eq!(p2.z.order(), 64);
    let orb = z_character_orbits(&p2);
    let mut got: Vec<(String, u64)> = orb.orbits.iter().map(|o| (o.label.clone(), o.size)).collect();
    got.sort();
    let at4 = |n: &str| catalog_lookup(n).unwrap().at(4) as u64;
    assert_eq!(
        got,
        vec![
            ("0".into(), 1),
            ("1".into(), at4("O1_Z2")),
            ("2+".into(), at4("O2p_Z2")),
            ("2-".into(), at4("O2m_Z2")),
        ]
    );
}
