use num_rational::BigRational;
use tqft_core::cochains::{coboundary, cyclic_cocycle, Cochain};
use tqft_core::dcomplex::{
    ball, cut_along, disjoint_union, glue_along_boundary, meridian_longitude_matching, preset_manifold, solid_torus,
    three_torus, three_torus_fiber, FaceRef,
};
use tqft_core::error::{ComplexError, PathIntegralError};
use tqft_core::gauge::DEFAULT_NODE_CAP;
use tqft_core::groups::{cyclic_group, group_from_table, is_homomorphism, preset_group, FiniteGroup, Presentation};
use tqft_core::pathintegral::*;
use tqft_core::phase::{rational, PhaseQ, PhaseSum};

fn zero(g: &FiniteGroup) -> Cochain {
    Cochain::zero(g.order(), 3)
}

fn groups() -> Vec<FiniteGroup> {
    ["Z/2", "Z/3", "Z/4", "S3"]
        .iter()
        .map(|n| preset_group(n).unwrap())
        .collect()
}

/// Nontrivial homomorphisms to Z/2.
fn sign_maps(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let z2 = cyclic_group(2);
    (1u32..1 << g.order())
        .map(|bits| (0..g.order()).map(|i| ((bits >> i) & 1) as usize).collect::<Vec<_>>())
        .filter(|m| is_homomorphism(g, &z2, m))
        .collect()
}

fn ball_identity() -> Vec<(FaceRef, FaceRef)> {
    (0..4).map(|f| (FaceRef::new(0, f), FaceRef::new(0, f))).collect()
}

#[test]
fn ball_to_itself_needs_reversal() {
    let b = ball();
    assert!(matches!(
        glue_along_boundary(&b, &b, &ball_identity()),
        Err(ComplexError::OrientationClash(_))
    ));
    let s3 = glue_along_boundary(&b, &b.reversed(), &ball_identity()).unwrap();
    let g = preset_group("S3").unwrap();
    assert_eq!(
        partition_closed(&s3, &g, &zero(&g)).unwrap(),
        PhaseSum::from_rational(rational(1, 6))
    );
}

#[test]
fn gluing_two_balls() {
    let b = ball();
    for g in groups() {
        for w in [zero(&g), twisted(&g)] {
            let r = glue_identity_check(&b, &b.reversed(), &ball_identity(), &g, &w, DEFAULT_NODE_CAP).unwrap();
            assert!(r.equal, "{} {} vs {}", g.label(), r.glued, r.pieces);
        }
    }
}

fn twisted(g: &FiniteGroup) -> Cochain {
    if g.is_abelian() && g.order() <= 4 {
        cyclic_cocycle(g.order(), 1)
    } else {
        cyclic_cocycle(2, 1).pullback(&sign_maps(g)[0])
    }
}

#[test]
fn gluing_solid_tori() {
    let st = solid_torus();
    for g in groups() {
        for w in [zero(&g), twisted(&g)] {
            let r = glue_identity_check(&st, &st, &meridian_longitude_matching(), &g, &w, DEFAULT_NODE_CAP).unwrap();
            assert!(r.equal, "{} {} vs {}", g.label(), r.glued, r.pieces);
            let id: Vec<_> = meridian_longitude_matching().iter().map(|&(a, _)| (a, a)).collect();
            let r = glue_identity_check(&st, &st.reversed(), &id, &g, &w, DEFAULT_NODE_CAP).unwrap();
            assert!(r.equal);
            assert_eq!(r.glued, PhaseSum::one());
        }
    }
}

#[test]
fn solid_tori_with_swapped_curves_make_a_sphere() {
    let st = solid_torus();
    let x = glue_along_boundary(&st, &st, &meridian_longitude_matching()).unwrap();
    for g in groups() {
        let n = g.order() as i64;
        assert_eq!(
            partition_closed(&x, &g, &zero(&g)).unwrap(),
            PhaseSum::from_rational(rational(1, n))
        );
    }
}

#[test]
fn cutting_three_torus_along_fiber() {
    let x = three_torus();
    let cut = cut_along(&x, &three_torus_fiber(&x)).unwrap();
    for g in [cyclic_group(2), cyclic_group(3), preset_group("S3").unwrap()] {
        for w in [zero(&g), twisted(&g)] {
            let r = glue_self_identity_check(&cut.complex, &cut.matching, &g, &w, DEFAULT_NODE_CAP).unwrap();
            assert!(r.equal, "{} {} vs {}", g.label(), r.glued, r.pieces);
        }
    }
}

#[test]
fn two_conventions_agree() {
    for name in ["S3_2tet", "S3_bd4simplex", "S2xS1", "T3_6tet", "L(3,1)", "L(4,1)"] {
        let x = preset_manifold(name).unwrap();
        for g in groups() {
            for w in [zero(&g), twisted(&g)] {
                let r = partition_report(&x, &g, &w, DEFAULT_NODE_CAP).unwrap();
                assert_eq!(r.z, r.z_groupoid, "{name} {}", g.label());
            }
        }
    }
}

#[test]
fn untwisted_values_count_homomorphisms() {
    for name in ["S3_2tet", "S2xS1", "T3_6tet", "L(2,1)", "L(5,1)"] {
        let x = preset_manifold(name).unwrap();
        let p = x.presentation().cloned().unwrap_or_else(Presentation::trivial);
        for g in ["Z/2", "Z/6", "S3", "D4", "Q8"].map(|n| preset_group(n).unwrap()) {
            let oracle = partition_counting_oracle(&p, &g, DEFAULT_NODE_CAP).unwrap();
            assert_eq!(
                partition_closed(&x, &g, &zero(&g)).unwrap(),
                PhaseSum::from_rational(oracle),
                "{name} {}",
                g.label()
            );
        }
    }
}

#[test]
fn three_torus_counts_torus_sectors() {
    for name in ["Z/2", "Z/3", "S3", "D4"] {
        let g = preset_group(name).unwrap();
        let e = hilbert_space(1, &g, &zero(&g), DEFAULT_NODE_CAP).unwrap();
        let z = partition_closed(&three_torus(), &g, &zero(&g)).unwrap();
        assert_eq!(z, PhaseSum::from_int(e.dim() as i64), "{name}");
    }
}

#[test]
fn twisted_three_torus_counts_regular_sectors() {
    let mut cases = Vec::new();
    for n in 2..=5 {
        for p in 0..n as i64 {
            cases.push((cyclic_group(n), cyclic_cocycle(n, p)));
        }
    }
    for name in ["S3", "D4"] {
        let g = preset_group(name).unwrap();
        for m in sign_maps(&g) {
            cases.push((g.clone(), cyclic_cocycle(2, 1).pullback(&m)));
        }
    }
    for (g, w) in cases {
        let r = verlinde_check(1, &g, &w, DEFAULT_NODE_CAP).unwrap();
        assert!(r.equal, "{} dim {} paths {:?}", g.label(), r.dim, r.paths);
    }
}

#[test]
fn twisted_cyclic_torus_keeps_every_sector() {
    let g = cyclic_group(4);
    let e = hilbert_space(1, &g, &cyclic_cocycle(4, 1), DEFAULT_NODE_CAP).unwrap();
    assert_eq!(e.dim(), 16);
}

/// `(χ1 ∪ χ2 ∪ χ3) / 2` for homomorphisms `χi: G → Z/2`.
fn cup(g: &FiniteGroup, x: &[usize], y: &[usize], z: &[usize]) -> Cochain {
    Cochain::from_fn(g.order(), 3, |a| PhaseQ::new((x[a[0]] * y[a[1]] * z[a[2]]) as i128, 2)).unwrap()
}

#[test]
fn sign_pullbacks_keep_every_torus_sector() {
    for name in ["S3", "D4"] {
        let g = preset_group(name).unwrap();
        let untwisted = hilbert_space(1, &g, &zero(&g), DEFAULT_NODE_CAP).unwrap().dim();
        for m in sign_maps(&g) {
            let w = cyclic_cocycle(2, 1).pullback(&m);
            assert_eq!(hilbert_space(1, &g, &w, DEFAULT_NODE_CAP).unwrap().dim(), untwisted);
        }
    }
}

#[test]
fn type_three_twist_kills_torus_sectors() {
    let table: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| a ^ b).collect()).collect();
    let g = group_from_table(&table).unwrap();
    let coord = |i: usize| (0..8).map(|a| (a >> i) & 1).collect::<Vec<_>>();
    let w = cup(&g, &coord(0), &coord(1), &coord(2));
    let e = hilbert_space(1, &g, &w, DEFAULT_NODE_CAP).unwrap();
    assert_eq!(e.sectors.len(), 64);
    assert_eq!(e.dim(), 22);
    let r = verlinde_check(1, &g, &w, DEFAULT_NODE_CAP).unwrap();
    assert!(r.equal, "{:?}", r.paths);
}

#[test]
fn verlinde_higher_genus_untwisted() {
    let z2 = cyclic_group(2);
    let r = verlinde_check(2, &z2, &zero(&z2), DEFAULT_NODE_CAP).unwrap();
    assert_eq!(r.dim, 16);
    assert!(r.equal);
    assert!(matches!(
        verlinde_check(2, &z2, &cyclic_cocycle(2, 1), DEFAULT_NODE_CAP),
        Err(PathIntegralError::UnsupportedSurface(_))
    ));
}

#[test]
fn sphere_hilbert_space_weight() {
    let g = preset_group("S3").unwrap();
    let e = hilbert_space(0, &g, &zero(&g), DEFAULT_NODE_CAP).unwrap();
    assert_eq!(e.sectors[0].weight, BigRational::new(1.into(), 6.into()));
}

#[test]
fn lens_spaces_against_closed_form() {
    for (k, n, p) in [(2, 2, 1), (3, 3, 1), (4, 2, 1), (6, 4, 3), (5, 5, 2)] {
        assert_eq!(
            lens_space_state_sum(k, n, p, DEFAULT_NODE_CAP).unwrap(),
            lens_space_closed_form(k, n, p)
        );
    }
    assert_eq!(
        lens_space_state_sum(2, 2, 1, DEFAULT_NODE_CAP).unwrap(),
        PhaseSum::zero()
    );
    assert_eq!(
        lens_space_state_sum(2, 2, 0, DEFAULT_NODE_CAP).unwrap(),
        PhaseSum::one()
    );
}

#[test]
fn reversal_conjugates() {
    for name in ["L(3,1)", "L(4,1)", "T3_6tet"] {
        let x = preset_manifold(name).unwrap();
        for n in [3usize, 4] {
            let g = cyclic_group(n);
            for p in 1..n as i64 {
                let w = cyclic_cocycle(n, p);
                let z = partition_closed(&x, &g, &w).unwrap();
                assert_eq!(
                    partition_closed(&x.reversed(), &g, &w).unwrap(),
                    z.conj(),
                    "{name} Z/{n} p={p}"
                );
            }
        }
    }
    assert_ne!(lens_space_closed_form(3, 3, 1), lens_space_closed_form(3, 3, 1).conj());
}

#[test]
fn disjoint_unions_multiply() {
    let pairs = [("L(3,1)", "S2xS1"), ("T3_6tet", "S3_2tet"), ("L(3,1)", "L(4,1)")];
    for (a, b) in pairs {
        let (x, y) = (preset_manifold(a).unwrap(), preset_manifold(b).unwrap());
        let u = disjoint_union(&x, &y);
        for n in [2usize, 3] {
            let g = cyclic_group(n);
            let w = cyclic_cocycle(n, 1);
            let lhs = partition_closed(&u, &g, &w).unwrap();
            let rhs = partition_closed(&x, &g, &w).unwrap() * partition_closed(&y, &g, &w).unwrap();
            assert_eq!(lhs, rhs, "{a} + {b} Z/{n}");
        }
    }
}

proptest::proptest! {
    #[test]
    fn coboundaries_do_not_change_z(seed in proptest::prelude::any::<u64>(), p in 0i64..4, m in 0usize..4) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = cyclic_group(4);
        let x = preset_manifold(["S3_2tet", "L(2,1)", "L(4,1)", "T3_6tet"][m]).unwrap();
        let w = cyclic_cocycle(4, p);
        let beta = Cochain::random(4, 2, &[2, 3, 4], &mut rng);
        let w2 = w.add(&coboundary(&beta, &g).unwrap()).unwrap();
        proptest::prop_assert_eq!(partition_closed(&x, &g, &w2).unwrap(), partition_closed(&x, &g, &w).unwrap());
    }
}
