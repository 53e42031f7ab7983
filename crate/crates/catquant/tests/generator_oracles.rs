//! Generator-level oracles: hom-set counts against closed-form formulas,
//! the two independent structure-map filters against each other, and the
//! poset/topology round trip.

use catquant::generators::{
    chain_category, continuous_maps, enumerate_maps, fig_one, group_action_category,
    isham_two_object, monotone_maps, poset_category, topology_category, ArrowMode, DEFAULT_MAP_CAP,
};
use catquant::structures::{
    poset_to_topology, topology_to_poset, FiniteGroupAction, FinitePoset, FiniteTopology,
    GroupTable,
};

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monotone maps from an m-chain to an n-chain are multisets of size m
/// from n values: C(n + m - 1, m).
fn chain_monotone_count(m: u64, n: u64) -> u64 {
    binomial(n + m - 1, m)
}

fn fig_one_posets() -> Vec<FinitePoset> {
    vec![
        FinitePoset::antichain(vec!["x0".into()]),
        FinitePoset::chain(vec!["x0".into(), "x1".into()]),
        FinitePoset::from_relations(
            vec!["x0".into(), "x1".into(), "x2".into(), "x3".into()],
            &[(0, 1), (1, 2), (1, 3)],
        )
        .unwrap(),
        FinitePoset::chain(vec!["x0".into(), "x1".into(), "x2".into()]),
    ]
}

#[test]
fn isham_hom_counts_and_validity() {
    let cat = isham_two_object(false);
    let (a, b) = (catquant::ObjectId(0), catquant::ObjectId(1));
    assert_eq!(
        (
            cat.hom_set(a, b).len(),
            cat.hom_set(b, a).len(),
            cat.hom_set(a, a).len(),
            cat.hom_set(b, b).len(),
        ),
        (2, 1, 1, 3)
    );
    assert!(cat.validate().is_valid());
    // order forgotten: the transposition p joins Hom(B,B)
    let forgot = isham_two_object(true);
    assert_eq!(forgot.hom_set(b, b).len(), 4);
    assert!(forgot.arrow_by_name("p").is_some());
    assert!(forgot.validate().is_valid());
}

#[test]
fn fig_one_hom_counts() {
    let cat = fig_one(ArrowMode::AllMonotone);
    assert!(cat.validate().is_valid());
    let ob = |i: usize| catquant::ObjectId(i);
    // frozen from the multiset formula for chains: C(2,1)=2, C(3,2)=3, C(4,2)=6
    assert_eq!(cat.hom_set(ob(0), ob(1)).len(), 2);
    assert_eq!(cat.hom_set(ob(1), ob(1)).len(), 3);
    assert_eq!(cat.hom_set(ob(1), ob(3)).len(), 6);
    assert_eq!(chain_monotone_count(1, 2), 2);
    assert_eq!(chain_monotone_count(2, 2), 3);
    assert_eq!(chain_monotone_count(2, 3), 6);
    // every chain-to-chain hom-set matches the formula (C1, C2, C4 are chains)
    for (i, m) in [(0usize, 1u64), (1, 2), (3, 3)] {
        for (j, n) in [(0usize, 1u64), (1, 2), (3, 3)] {
            assert_eq!(
                cat.hom_set(ob(i), ob(j)).len() as u64,
                chain_monotone_count(m, n),
                "hom-set C{} -> C{}",
                i + 1,
                j + 1
            );
        }
    }
}

#[test]
fn injective_mode_is_a_subset() {
    let all = fig_one(ArrowMode::AllMonotone);
    let inj = fig_one(ArrowMode::InjectiveMonotone);
    assert!(inj.validate().is_valid());
    assert!(inj.num_arrows() < all.num_arrows());
    for f in inj.arrows() {
        let rec = inj.arrow(f);
        assert!(rec
            .map
            .as_deref()
            .unwrap()
            .iter()
            .enumerate()
            .all(|(i, a)| rec.map.as_deref().unwrap()[..i].iter().all(|b| a != b)));
    }
}

#[test]
fn sierpinski_self_maps() {
    // opens {}, {x}, {x,y}: continuous self-maps are id and both constants;
    // the swap pulls {x} back to {y}, which is not open
    let opens = [vec![], vec![0], vec![0, 1]]
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect();
    let sierpinski = FiniteTopology::new(vec!["x".into(), "y".into()], opens).unwrap();
    let maps = continuous_maps(&sierpinski, &sierpinski, false, 100).unwrap();
    assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);

    // independent oracle: monotone maps of the specialization order
    let order = topology_to_poset(&sierpinski).unwrap();
    let monotone = monotone_maps(&order, &order, ArrowMode::AllMonotone, 100).unwrap();
    assert_eq!(maps, monotone);
}

#[test]
fn discrete_space_maps() {
    let one = FiniteTopology::discrete(vec!["x".into()]);
    assert_eq!(continuous_maps(&one, &one, false, 10).unwrap().len(), 1);
    let two = FiniteTopology::discrete(vec!["x".into(), "y".into()]);
    assert_eq!(continuous_maps(&two, &two, false, 10).unwrap().len(), 4);
    // embeddings only: the two constants drop out
    assert_eq!(continuous_maps(&two, &two, true, 10).unwrap().len(), 2);
}

#[test]
fn topology_category_on_sierpinski_validates() {
    let opens: std::collections::BTreeSet<std::collections::BTreeSet<usize>> =
        [vec![], vec![0], vec![0, 1]]
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect();
    let sierpinski = FiniteTopology::new(vec!["x".into(), "y".into()], opens).unwrap();
    let point = FiniteTopology::discrete(vec!["p".into()]);
    let cat = topology_category(
        &[("S".into(), sierpinski), ("P".into(), point)],
        DEFAULT_MAP_CAP,
    )
    .unwrap();
    assert!(cat.validate().is_valid());
    assert_eq!(
        cat.hom_set(catquant::ObjectId(0), catquant::ObjectId(0))
            .len(),
        3
    );
}

#[test]
fn group_action_categories() {
    let swap = catquant::generators::z2_swap_action();
    let cat = group_action_category(&swap);
    assert!(cat.validate().is_valid());
    assert_eq!(cat.num_arrows(), 4); // |G| * |carrier|
    for a in cat.objects() {
        for b in cat.objects() {
            assert_eq!(cat.hom_set(a, b).len(), 1);
        }
        assert_eq!(cat.endo_monoid(a).arrows.len(), 1);
    }

    // Z2 acting trivially on one point: Hom(q,q) is the whole group
    let z2 = GroupTable::cyclic(2);
    let ga = FiniteGroupAction::new(z2, vec!["q".into()], vec![vec![0], vec![0]]).unwrap();
    let cat = group_action_category(&ga);
    let q = catquant::ObjectId(0);
    let endo = cat.endo_monoid(q);
    assert_eq!(endo.arrows.len(), 2);
    assert!(endo.is_group(cat.identity(q).unwrap()));
}

#[test]
fn group_action_arrow_count_invariant() {
    let z3 = GroupTable::cyclic(3);
    // rotation action on 3 points
    let ga = FiniteGroupAction::new(
        z3,
        vec!["a".into(), "b".into(), "c".into()],
        vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
    )
    .unwrap();
    let cat = group_action_category(&ga);
    assert_eq!(cat.num_arrows(), 9);
    assert!(cat.validate().is_valid());
}

#[test]
fn poset_topology_round_trip() {
    let two_chain = FinitePoset::chain(vec!["b1".into(), "b2".into()]);
    let topo = poset_to_topology(&two_chain);
    let expected: std::collections::BTreeSet<std::collections::BTreeSet<usize>> =
        [vec![], vec![0], vec![0, 1]]
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect();
    assert_eq!(topo.opens(), &expected);

    for p in fig_one_posets() {
        let round = topology_to_poset(&poset_to_topology(&p)).unwrap();
        assert_eq!(round, p);
    }
}

#[test]
fn monotone_and_continuous_filters_agree_on_fig_one() {
    let posets = fig_one_posets();
    let spaces: Vec<FiniteTopology> = posets.iter().map(poset_to_topology).collect();
    for (i, src) in posets.iter().enumerate() {
        for (j, dst) in posets.iter().enumerate() {
            let monotone =
                monotone_maps(src, dst, ArrowMode::AllMonotone, DEFAULT_MAP_CAP).unwrap();
            let continuous =
                continuous_maps(&spaces[i], &spaces[j], false, DEFAULT_MAP_CAP).unwrap();
            assert_eq!(monotone, continuous, "pair C{} -> C{}", i + 1, j + 1);
        }
    }
}

#[test]
fn structure_map_enumeration_examples() {
    let one = FinitePoset::antichain(vec!["a".into()]);
    let two = FinitePoset::chain(vec!["b1".into(), "b2".into()]);
    assert_eq!(
        monotone_maps(&one, &two, ArrowMode::AllMonotone, 100)
            .unwrap()
            .len(),
        2
    );
    assert_eq!(
        monotone_maps(&two, &one, ArrowMode::AllMonotone, 100)
            .unwrap()
            .len(),
        1
    );
    // without the order filter all four maps survive; with it the swap drops out
    assert_eq!(enumerate_maps(2, 2, 100, |_| true).unwrap().len(), 4);
    assert_eq!(
        monotone_maps(&two, &two, ArrowMode::AllMonotone, 100)
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn map_cap_is_an_explicit_refusal() {
    let big = FinitePoset::antichain((0..8).map(|i| format!("e{}", i)).collect());
    let err = poset_category(
        &[("P".into(), big.clone()), ("Q".into(), big)],
        ArrowMode::AllMonotone,
        1_000,
    );
    match err {
        Err(catquant::generators::GenError::MapCapExceeded {
            candidates, cap, ..
        }) => {
            assert_eq!(candidates, 16_777_216); // 8^8
            assert_eq!(cap, 1_000);
        }
        other => panic!(
            "expected cap refusal, got {:?}",
            other.map(|c| c.num_arrows())
        ),
    }
}

#[test]
fn chain_category_axioms() {
    for n in 1..=5 {
        let cat = chain_category(n).unwrap();
        assert_eq!(cat.num_arrows(), n * (n + 1) / 2);
        assert!(cat.validate().is_valid());
    }
}

mod random_cross_checks {
    use super::*;
    use catquant::generators::ArrowMode;
    use proptest::prelude::*;

    fn arbitrary_poset() -> impl Strategy<Value = FinitePoset> {
        (1usize..=4).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            proptest::collection::vec(proptest::bool::ANY, pairs.len()).prop_map(move |mask| {
                let chosen: Vec<(usize, usize)> = pairs
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(&p, _)| p)
                    .collect();
                let labels = (0..n).map(|i| format!("e{}", i)).collect();
                FinitePoset::from_relations(labels, &chosen).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// The monotone-map filter and the continuous-map filter through the
        /// lower-set topology agree on arbitrary posets, and the conversion
        /// round trip is the identity.
        #[test]
        fn filters_agree_on_random_posets(src in arbitrary_poset(), dst in arbitrary_poset()) {
            let monotone =
                monotone_maps(&src, &dst, ArrowMode::AllMonotone, 10_000).unwrap();
            let continuous = continuous_maps(
                &poset_to_topology(&src),
                &poset_to_topology(&dst),
                false,
                10_000,
            )
            .unwrap();
            prop_assert_eq!(&monotone, &continuous);
            prop_assert_eq!(&topology_to_poset(&poset_to_topology(&src)).unwrap(), &src);
        }
    }
}
