use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tqft_core::dcomplex::{preset_manifold, PRESET_MANIFOLD_NAMES};
use tqft_core::gauge::*;
use tqft_core::groups::{enumerate_homs, hom_orbits, preset_group, preset_group_names, FiniteGroup, DEFAULT_HOM_CAP};

fn small_presets() -> Vec<FiniteGroup> {
    preset_group_names()
        .iter()
        .map(|n| preset_group(n).unwrap())
        .filter(|g| g.order() <= 8)
        .collect()
}

fn closed_presets() -> Vec<&'static str> {
    PRESET_MANIFOLD_NAMES
        .iter()
        .copied()
        .filter(|n| preset_manifold(n).unwrap().is_closed())
        .collect()
}

proptest! {
    #[test]
    fn gauge_action_preserves_flatness(m in 0usize..8, gi in 0usize..10, seed in any::<u64>()) {
        let names = closed_presets();
        let groups = small_presets();
        let x = preset_manifold(names[m % names.len()]).unwrap();
        let g = &groups[gi % groups.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cols = enumerate_flat_colorings(x.skeleton(), g, &[], DEFAULT_NODE_CAP).unwrap();
        let col = &cols[rng.gen_range(0..cols.len())];
        let h: Vec<usize> = (0..x.num_vertices()).map(|_| rng.gen_range(0..g.order())).collect();
        let moved = gauge_transform(x.skeleton(), g, col, &h);
        prop_assert!(check_flat(x.skeleton(), g, &moved).is_ok());
    }
}

#[test]
fn bundle_classes_match_hom_orbits() {
    for name in closed_presets() {
        let x = preset_manifold(name).unwrap();
        let p = x.presentation().unwrap();
        for g in small_presets() {
            let cols = enumerate_flat_colorings(x.skeleton(), &g, &[], DEFAULT_NODE_CAP).unwrap();
            let classes = gauge_orbits(x.skeleton(), &g, &cols, &[]).unwrap();
            let homs = enumerate_homs(p, &g, DEFAULT_HOM_CAP).unwrap();
            let table = hom_orbits(&g, &homs).unwrap();
            assert_eq!(classes.len(), table.orbits.len(), "{name} {}", g.label());
            let weight: BigRational = classes
                .iter()
                .map(|c| BigRational::new(1.into(), c.stabilizer.into()))
                .sum();
            assert_eq!(
                weight,
                BigRational::new(homs.len().into(), g.order().into()),
                "{name} {}",
                g.label()
            );
        }
    }
}

#[test]
fn holonomies_label_s2xs1_classes() {
    let x = preset_manifold("S2xS1").unwrap();
    let g = preset_group("S3").unwrap();
    let cols = enumerate_flat_colorings(x.skeleton(), &g, &[], DEFAULT_NODE_CAP).unwrap();
    let classes = gauge_orbits(x.skeleton(), &g, &cols, &[]).unwrap();
    assert_eq!(classes.len(), 3);
    let mut labels: Vec<_> = classes
        .iter()
        .map(|c| holonomy_class_invariants(&x, &g, c).unwrap())
        .collect();
    labels.dedup();
    assert_eq!(labels.len(), 3);
}
