use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tqft_core::dcomplex::{annulus_surface, torus_surface};
use tqft_core::euler::*;
use tqft_core::phase::rational;

#[test]
fn clutched_spheres() {
    for d in -2..=2 {
        assert_eq!(euler_closed(&clutched_sphere(d)), Ok(d));
    }
}

#[test]
fn hundred_annulus_gluings() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..100 {
        let k = 1 + i % 3;
        let (a, b) = random_annulus_pair(k, &mut rng);
        let r = euler_glue(&a, &b, &annulus_matching(k)).unwrap();
        assert!(r.equal, "instance {i}: {} vs {}", r.glued, r.paired);
    }
}

#[test]
fn two_circle_torsor() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let l = random_bundle(annulus_surface(2), &mut rng);
    let t = boundary_torsor(&l).unwrap();
    assert_eq!(t.holonomies.len(), 2);
    let r = t.reference();
    let mut f = r.clone();
    f.lifts[0] += BigRational::from_integer(2.into());
    f.lifts[1] -= BigRational::from_integer(5.into());
    assert_eq!(t.difference(&f, &r), Ok(-3));
    let e = relative_euler(&l).unwrap();
    assert_eq!(e.evaluate(&f), Ok(e.offset + 3));
    assert_eq!(e_with_lift(&l, &f), e.evaluate(&f));
}

#[test]
fn torsor_of_zero_holonomy() {
    let l = disk_bundle(&rational(0, 1), false);
    let t = boundary_torsor(&l).unwrap();
    assert_eq!(t.reference().lifts, vec![rational(0, 1)]);
    assert!(t.contains(&BoundaryLift {
        lifts: vec![rational(-4, 1)]
    }));
    assert!(!t.contains(&BoundaryLift {
        lifts: vec![rational(1, 2)]
    }));
}

proptest! {
    #[test]
    fn gauge_moves_preserve_euler_numbers(seed in any::<u64>(), moves in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let closed = random_bundle(torus_surface(), &mut rng);
        let open = random_bundle(annulus_surface(2), &mut rng);
        let (mut c, mut o) = (closed.clone(), open.clone());
        for _ in 0..moves {
            c = random_gauge_move(&c, &mut rng);
            o = random_gauge_move(&o, &mut rng);
        }
        prop_assert_eq!(euler_closed(&c), euler_closed(&closed));
        prop_assert_eq!(relative_euler(&o), relative_euler(&open));
    }

    #[test]
    fn difference_law(seed in any::<u64>(), shifts in proptest::collection::vec(-5i64..5, 4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_bundle(annulus_surface(2), &mut rng);
        let e = relative_euler(&l).unwrap();
        let base = e.torsor.reference();
        let lift = |a: i64, b: i64| {
            let mut f = base.clone();
            f.lifts[0] += BigRational::from_integer(a.into());
            f.lifts[1] += BigRational::from_integer(b.into());
            f
        };
        let (f, f2) = (lift(shifts[0], shifts[1]), lift(shifts[2], shifts[3]));
        let lhs = e_with_lift(&l, &f2).unwrap() - e_with_lift(&l, &f).unwrap();
        prop_assert_eq!(lhs, e.torsor.difference(&f, &f2).unwrap());
    }

    #[test]
    fn reversal_negates(seed in any::<u64>(), d in -4i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_bundle(torus_surface(), &mut rng);
        prop_assert_eq!(euler_closed(&l.reversed()).unwrap(), -euler_closed(&l).unwrap());
        prop_assert_eq!(euler_closed(&clutched_sphere(d).reversed()), Ok(-d));
    }

    #[test]
    fn gluing_law(seed in any::<u64>(), k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = random_annulus_pair(k, &mut rng);
        let r = euler_glue(&a, &b, &annulus_matching(k)).unwrap();
        prop_assert!(r.equal);
    }
}
