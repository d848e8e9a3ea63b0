use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tqft_core::groups::*;

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

/// Random relators over `n` generators, each a word of length 1 to 4.
fn presentation_strategy() -> impl Strategy<Value = Presentation> {
    (1usize..=2).prop_flat_map(|n| {
        let letter = prop_oneof![(1..=n as i32), (1..=n as i32).prop_map(|x| -x)];
        proptest::collection::vec(proptest::collection::vec(letter, 1..=4), 0..=2)
            .prop_map(move |rels| Presentation::new(n, rels).unwrap())
    })
}

proptest! {
    #[test]
    fn relabeling_keeps_tables_valid(g in group_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rest: Vec<usize> = (1..g.order()).collect();
        rest.shuffle(&mut rng);
        let mut perm = vec![0];
        perm.extend(rest);
        let h = g.relabel(&perm).unwrap();
        prop_assert!(group_from_table(&h.table_rows()).is_ok());
        prop_assert_eq!(h.is_abelian(), g.is_abelian());
        prop_assert_eq!(conjugacy_classes(&h).len(), conjugacy_classes(&g).len());
    }

    #[test]
    fn orbit_stabilizer(g in group_strategy(), p in presentation_strategy()) {
        let homs = enumerate_homs(&p, &g, DEFAULT_HOM_CAP).unwrap();
        let table = hom_orbits(&g, &homs).unwrap();
        let counted = BigRational::new(homs.len().into(), g.order().into());
        prop_assert_eq!(table.groupoid_cardinality(), counted);
        for h in &homs {
            prop_assert!(p.is_hom(&g, h));
        }
    }
}

#[test]
fn class_sizes_times_centralizers() {
    for name in preset_group_names() {
        let g = preset_group(&name).unwrap();
        let classes = conjugacy_classes(&g);
        for a in g.elements() {
            let class = &classes[class_index(&classes, a)];
            assert_eq!(class.len() * centralizer(&g, &[a]).len(), g.order(), "{name} {a}");
        }
    }
}

#[test]
fn torus_homs_count_commuting_pairs() {
    for g in small_presets() {
        let homs = enumerate_homs(&Presentation::surface(1), &g, DEFAULT_HOM_CAP).unwrap();
        let pairs = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| g.commutes(a, b))
            .count();
        assert_eq!(homs.len(), pairs, "{}", g.label());
    }
}
