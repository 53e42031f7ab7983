//! Category axioms on the worked examples, checked against independent
//! brute-force oracles.

use catquant::category::{ArrowId, FiniteCategory, ObjectId, Violation};
use catquant::generators::{chain_category, isham_two_object, ArrowMode};
use catquant::structures::FinitePoset;
use proptest::prelude::*;

/// Independent recheck of the axioms, written directly against the raw
/// accessors: every identity law and every composable triple, skipping
/// triples with missing intermediates (those surface as missing-composite
/// findings, also rechecked here).
fn brute_force_violations(cat: &FiniteCategory) -> Vec<Violation> {
    let mut found = Vec::new();
    for a in cat.objects() {
        match cat.identity(a) {
            None => found.push(Violation::MissingIdentity { object: a }),
            Some(id) => {
                if cat.dom(id) != a || cat.cod(id) != a {
                    found.push(Violation::IdentityEndpoints {
                        object: a,
                        arrow: id,
                    });
                }
            }
        }
    }
    for g in cat.arrows() {
        for f in cat.arrows() {
            match (cat.cod(f) == cat.dom(g), cat.compose(g, f)) {
                (true, None) => found.push(Violation::MissingComposite { g, f }),
                (false, Some(_)) => found.push(Violation::SpuriousComposite { g, f }),
                (true, Some(gf)) => {
                    if cat.dom(gf) != cat.dom(f) || cat.cod(gf) != cat.cod(g) {
                        found.push(Violation::CompositeEndpoints { g, f, gf });
                    }
                }
                (false, None) => {}
            }
        }
    }
    for f in cat.arrows() {
        if let Some(got) = cat
            .identity(cat.cod(f))
            .and_then(|id| cat.compose(id, f))
            .filter(|&got| got != f)
        {
            found.push(Violation::LeftIdentity { f, got });
        }
        if let Some(got) = cat
            .identity(cat.dom(f))
            .and_then(|id| cat.compose(f, id))
            .filter(|&got| got != f)
        {
            found.push(Violation::RightIdentity { f, got });
        }
    }
    for f in cat.arrows() {
        for g in cat.arrows() {
            for h in cat.arrows() {
                if cat.cod(f) != cat.dom(g) || cat.cod(g) != cat.dom(h) {
                    continue;
                }
                let left = cat.compose(g, f).and_then(|gf| cat.compose(h, gf));
                let right = cat.compose(h, g).and_then(|hg| cat.compose(hg, f));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        found.push(Violation::Associativity {
                            h,
                            g,
                            f,
                            left: l,
                            right: r,
                        });
                    }
                }
            }
        }
    }
    found
}

fn sorted_debug(violations: &[Violation]) -> Vec<String> {
    let mut v: Vec<String> = violations.iter().map(|x| format!("{:?}", x)).collect();
    v.sort();
    v
}

#[test]
fn two_object_category_is_valid() {
    let cat = isham_two_object(false);
    let report = cat.validate();
    assert!(report.is_valid(), "{}", report.describe(&cat));
    assert!(brute_force_violations(&cat).is_empty());
}

#[test]
fn hom_sets_of_the_two_object_category() {
    let cat = isham_two_object(false);
    let (a, b) = (ObjectId(0), ObjectId(1));
    assert_eq!(cat.hom_set(a, b).len(), 2);
    assert_eq!(cat.hom_set(b, a).len(), 1);
    assert_eq!(cat.hom_set(a, a).len(), 1);
    assert_eq!(cat.hom_set(b, b).len(), 3);
    let names: Vec<&str> = cat
        .hom_set(a, b)
        .iter()
        .map(|&f| cat.arrow(f).name.as_str())
        .collect();
    assert_eq!(names, vec!["f1", "f2"]);
}

#[test]
fn hom_sets_partition_the_arrows() {
    for cat in [
        isham_two_object(false),
        isham_two_object(true),
        chain_category(4).unwrap(),
        catquant::generators::fig_one(ArrowMode::AllMonotone),
        catquant::generators::fig_two(),
    ] {
        let total: usize = cat
            .objects()
            .flat_map(|a| cat.objects().map(move |b| (a, b)))
            .map(|(a, b)| cat.hom_set(a, b).len())
            .sum();
        assert_eq!(total, cat.num_arrows());
    }
}

/// Oracle: compose the element maps pointwise, then look the result up.
fn pointwise_composite(cat: &FiniteCategory, g: ArrowId, f: ArrowId) -> ArrowId {
    let fmap = cat.arrow(f).map.as_deref().unwrap();
    let gmap = cat.arrow(g).map.as_deref().unwrap();
    let composed: Vec<usize> = fmap.iter().map(|&x| gmap[x]).collect();
    cat.arrows()
        .find(|&h| {
            cat.dom(h) == cat.dom(f)
                && cat.cod(h) == cat.cod(g)
                && cat.arrow(h).map.as_deref() == Some(composed.as_slice())
        })
        .expect("composite map present as an arrow")
}

#[test]
fn endo_monoid_of_b_matches_pointwise_composition() {
    let cat = isham_two_object(false);
    let b = ObjectId(1);
    let endo = cat.endo_monoid(b);
    assert_eq!(endo.arrows.len(), 3);
    assert!(endo.is_closed());
    assert!(endo.is_unital(cat.identity(b).unwrap()));
    assert!(endo.is_associative());

    let arrow = |n: &str| cat.arrow_by_name(n).unwrap();
    let (r, s, id_b) = (arrow("r"), arrow("s"), arrow("id_B"));
    // frozen from composing the element maps by hand: r∘r=r, s∘s=s, r∘s=r, s∘r=s
    assert_eq!(cat.compose(r, r), Some(r));
    assert_eq!(cat.compose(s, s), Some(s));
    assert_eq!(cat.compose(r, s), Some(r));
    assert_eq!(cat.compose(s, r), Some(s));
    for &g in &[r, s, id_b] {
        for &f in &[r, s, id_b] {
            assert_eq!(cat.compose(g, f), Some(pointwise_composite(&cat, g, f)));
        }
    }
}

#[test]
fn parallel_pairs_of_the_two_object_category() {
    let cat = isham_two_object(false);
    let pairs = cat.parallel_pairs();
    // (f1, f2) plus the three unordered pairs from {id_B, r, s}
    assert_eq!(pairs.len(), 4);
    let f1 = cat.arrow_by_name("f1").unwrap();
    let f2 = cat.arrow_by_name("f2").unwrap();
    assert!(pairs.contains(&(f1, f2)));
}

#[test]
fn parallel_pairs_edge_cases() {
    assert!(chain_category(1).unwrap().parallel_pairs().is_empty());
    // a chain has at most one arrow per hom-set
    assert!(chain_category(2).unwrap().parallel_pairs().is_empty());
}

#[test]
fn corrupted_composite_is_caught_by_exhaustive_recheck() {
    let cat = isham_two_object(false);
    let r = cat.arrow_by_name("r").unwrap();
    let s = cat.arrow_by_name("s").unwrap();
    let id_b = cat.arrow_by_name("id_B").unwrap();

    let mut parts = cat.to_parts();
    let entry = parts
        .composites
        .iter_mut()
        .find(|((g, f), _)| (*g, *f) == (r, s))
        .expect("r ∘ s is in the table");
    assert_eq!(entry.1, r, "uncorrupted value of r ∘ s is r");
    entry.1 = id_b;
    let corrupted = FiniteCategory::from_parts(parts).unwrap();

    let report = corrupted.validate();
    assert!(!report.is_valid());
    // the validator must find exactly what the independent recheck finds
    assert_eq!(
        sorted_debug(&report.violations),
        sorted_debug(&brute_force_violations(&corrupted))
    );
    assert!(report
        .violations
        .iter()
        .all(|v| matches!(v, Violation::Associativity { .. })));
}

fn arbitrary_poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=3).prop_flat_map(|n| {
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
            // pairs are upward-oriented, so the closure is always a poset
            FinitePoset::from_relations(labels, &chosen).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every generated poset category satisfies all axioms, in both arrow
    /// modes, and the injective arrows are a subset of the monotone ones.
    #[test]
    fn generated_poset_categories_are_valid(
        p1 in arbitrary_poset(),
        p2 in arbitrary_poset(),
    ) {
        let named = [("P1".to_string(), p1), ("P2".to_string(), p2)];
        let all = catquant::generators::poset_category(&named, ArrowMode::AllMonotone, 10_000).unwrap();
        let inj = catquant::generators::poset_category(&named, ArrowMode::InjectiveMonotone, 10_000).unwrap();
        prop_assert!(all.validate().is_valid());
        prop_assert!(inj.validate().is_valid());
        prop_assert!(inj.num_arrows() <= all.num_arrows());
        // every injective-mode map appears among the all-monotone maps
        for f in inj.arrows() {
            let rec = inj.arrow(f);
            let present = all.arrows().any(|g| {
                let other = all.arrow(g);
                other.dom == rec.dom && other.cod == rec.cod && other.map == rec.map
            });
            prop_assert!(present);
        }
        // endo monoids are closed and unital everywhere
        for a in all.objects() {
            let endo = all.endo_monoid(a);
            prop_assert!(endo.is_closed());
            prop_assert!(endo.is_unital(all.identity(a).unwrap()));
        }
    }
}
