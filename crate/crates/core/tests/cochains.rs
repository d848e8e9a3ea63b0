use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tqft_core::cochains::*;
use tqft_core::groups::{cyclic_group, is_homomorphism, preset_group, preset_group_names, FiniteGroup};
use tqft_core::phase::{rational, PhaseQ, PhaseSum};

fn small_presets() -> Vec<FiniteGroup> {
    preset_group_names()
        .iter()
        .map(|n| preset_group(n).unwrap())
        .filter(|g| g.order() <= 8)
        .collect()
}

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    let gs = small_presets();
    (0..gs.len()).prop_map(move |i| gs[i].clone())
}

fn phase_sum_strategy() -> impl Strategy<Value = PhaseSum> {
    proptest::collection::vec((-5i64..=5, 1i64..=4, 0i128..12, 1u64..=12), 0..6).prop_map(|terms| {
        let mut z = PhaseSum::zero();
        for (c, d, p, q) in terms {
            z.add_term(PhaseQ::new(p, q), rational(c, d));
        }
        z
    })
}

/// Cocycles available on every group: zero, and pullbacks of `ω_1` along
/// every homomorphism to `Z/2`.
fn cocycles_on(g: &FiniteGroup) -> Vec<Cochain> {
    let z2 = cyclic_group(2);
    let mut out = vec![Cochain::zero(g.order(), 3)];
    for bits in 1u32..1 << g.order() {
        let m: Vec<usize> = (0..g.order()).map(|i| ((bits >> i) & 1) as usize).collect();
        if is_homomorphism(g, &z2, &m) {
            out.push(cyclic_cocycle(2, 1).pullback(&m));
        }
    }
    out
}

proptest! {
    #[test]
    fn coboundary_squares_to_zero(g in group_strategy(), arity in 0usize..=2, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Cochain::random(g.order(), arity, &[2, 3, 5, 12], &mut rng);
        let dd = coboundary(&coboundary(&c, &g).unwrap(), &g).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn render_is_additive(x in phase_sum_strategy(), y in phase_sum_strategy()) {
        let (a, b) = (x.to_complex(), y.to_complex());
        let s = (x.clone() + y.clone()).to_complex();
        prop_assert!((s.0 - a.0 - b.0).abs() < 1e-12 && (s.1 - a.1 - b.1).abs() < 1e-12);
        prop_assert_eq!(x.clone() - x, PhaseSum::zero());
    }

    #[test]
    fn coboundaries_are_cohomologous_to_zero(g in group_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let beta = Cochain::random(g.order(), 2, &[2, 4, 6], &mut rng);
        let w = coboundary(&beta, &g).unwrap();
        let zero = Cochain::zero(g.order(), 3);
        match cohomologous(&w, &zero, &g, 12).unwrap() {
            CohomologyResult::Witness(b) => prop_assert_eq!(coboundary(&b, &g).unwrap(), w),
            CohomologyResult::NotFoundWithinCap => prop_assert!(false, "no witness"),
        }
    }
}

#[test]
fn cyclic_cocycles_exhaustive() {
    for n in 2..=8usize {
        let g = cyclic_group(n);
        for p in 0..(n * n) as i64 {
            assert!(is_cocycle(&cyclic_cocycle(n, p), &g), "n={n} p={p}");
        }
    }
}

#[test]
fn transgressions_are_cocycles() {
    for g in small_presets() {
        let mut ws = cocycles_on(&g);
        if g.name().is_some_and(|n| n.starts_with("Z/")) {
            ws.extend((1..g.order() as i64).map(|p| cyclic_cocycle(g.order(), p)));
        }
        for w in &ws {
            for a in g.elements() {
                let (z, beta) = transgress_torus(w, &g, a).unwrap();
                assert!(is_cocycle(&beta, &z.group), "{} a={a}", g.label());
            }
        }
    }
}
