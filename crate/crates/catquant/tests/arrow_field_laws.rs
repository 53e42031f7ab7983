//! Arrow-field monoid laws, checked exhaustively over the enumerable
//! worked examples.

use catquant::arrow_field::{
    check_monoid_laws, combine, delta_field, endo_antirep_check, enumerate_arrow_fields,
    field_count, identity_field, rho, ArrowField,
};
use catquant::category::{ArrowId, FiniteCategory, ObjectId};
use catquant::generators::{
    chain_category, fig_one, fig_two, group_action_category, isham_two_object, ArrowMode,
};

fn arrow(cat: &FiniteCategory, name: &str) -> ArrowId {
    cat.arrow_by_name(name)
        .unwrap_or_else(|| panic!("arrow {} exists", name))
}

#[test]
fn field_counts_from_out_degree_products() {
    // isham: out(A) = {id_A, f1, f2}, out(B) = {g, r, id_B, s} → 3·4
    let isham = isham_two_object(false);
    assert_eq!(field_count(&isham), 12);
    assert_eq!(enumerate_arrow_fields(&isham, 100).unwrap().len(), 12);
    // five-object example: 3·3·3·2·1
    let fig2 = fig_two();
    assert_eq!(field_count(&fig2), 54);
    assert_eq!(enumerate_arrow_fields(&fig2, 100).unwrap().len(), 54);
}

#[test]
fn iota_is_a_two_sided_unit() {
    let cat = isham_two_object(false);
    let iota = identity_field(&cat);
    for x in enumerate_arrow_fields(&cat, 100).unwrap() {
        assert_eq!(combine(&cat, &iota, &x), x);
        assert_eq!(combine(&cat, &x, &iota), x);
    }
}

#[test]
fn combine_composes_pointwise() {
    let cat = isham_two_object(false);
    // (X_{f1} & X_s)(A) = s ∘ f1 = f2, frozen from the element maps
    let xf1 = delta_field(&cat, arrow(&cat, "f1"));
    let xs = delta_field(&cat, arrow(&cat, "s"));
    let combined = combine(&cat, &xf1, &xs);
    assert_eq!(combined.arrow_at(ObjectId(0)), arrow(&cat, "f2"));
    assert_eq!(combined.arrow_at(ObjectId(1)), arrow(&cat, "s"));
}

/// The drawn five-object arrow field: each A_i to B, B to C, C fixed.
fn fig_two_field(cat: &FiniteCategory) -> ArrowField {
    let assignment = vec![
        arrow(cat, "x1"),
        arrow(cat, "x2"),
        arrow(cat, "x3"),
        arrow(cat, "y"),
        arrow(cat, "id_C"),
    ];
    ArrowField::new(cat, assignment).unwrap()
}

#[test]
fn fig_two_field_combines_through_composites() {
    let cat = fig_two();
    let x = fig_two_field(&cat);
    let xx = combine(&cat, &x, &x);
    // (X & X)(A1) = X(B) ∘ X(A1) = y ∘ x1
    assert_eq!(xx.arrow_at(ObjectId(0)), arrow(&cat, "y.x1"));
    assert_eq!(xx.arrow_at(ObjectId(3)), arrow(&cat, "y"));
    assert_eq!(xx.arrow_at(ObjectId(4)), arrow(&cat, "id_C"));
}

#[test]
fn rho_of_the_fig_two_field() {
    let cat = fig_two();
    let x = fig_two_field(&cat);
    let b = cat.object_by_name("B").unwrap();
    let c = cat.object_by_name("C").unwrap();
    assert_eq!(rho(&cat, &x), vec![b, b, b, c, c]);
    // identity field acts as the identity on objects
    let iota = identity_field(&cat);
    let ids: Vec<ObjectId> = cat.objects().collect();
    assert_eq!(rho(&cat, &iota), ids);
}

#[test]
fn rho_is_a_right_action() {
    let cat = isham_two_object(false);
    // X(A) = f1, X(B) = g swaps the two objects
    let x = ArrowField::new(&cat, vec![arrow(&cat, "f1"), arrow(&cat, "g")]).unwrap();
    let rho_x = rho(&cat, &x);
    assert_eq!(rho_x, vec![ObjectId(1), ObjectId(0)]);
    let twice: Vec<ObjectId> = rho_x.iter().map(|&a| rho_x[a.0]).collect();
    assert_eq!(twice, rho(&cat, &combine(&cat, &x, &x)));
    // and exhaustively over all pairs
    let fields = enumerate_arrow_fields(&cat, 100).unwrap();
    for x1 in &fields {
        let r1 = rho(&cat, x1);
        for x2 in &fields {
            let r2 = rho(&cat, x2);
            let composed: Vec<ObjectId> = r1.iter().map(|&a| r2[a.0]).collect();
            assert_eq!(composed, rho(&cat, &combine(&cat, x1, x2)));
        }
    }
}

#[test]
fn delta_field_action_and_identities() {
    let cat = isham_two_object(false);
    let f1 = arrow(&cat, "f1");
    let xf1 = delta_field(&cat, f1);
    // moves dom(f1) to cod(f1) and fixes everything else
    assert_eq!(rho(&cat, &xf1), vec![ObjectId(1), ObjectId(1)]);
    // delta of r then delta of s is delta of s∘r = s
    let xr = delta_field(&cat, arrow(&cat, "r"));
    let xs = delta_field(&cat, arrow(&cat, "s"));
    assert_eq!(combine(&cat, &xr, &xs), xs);
}

#[test]
fn delta_of_an_identity_arrow_is_iota() {
    // X_{id_A} assigns id_A at A and identities elsewhere, which is the
    // unit field regardless of how many objects there are
    for cat in [
        chain_category(1).unwrap(),
        isham_two_object(false),
        fig_two(),
    ] {
        for a in cat.objects() {
            let id = cat.identity(a).unwrap();
            assert_eq!(delta_field(&cat, id), identity_field(&cat));
        }
    }
}

#[test]
fn delta_fields_coincide_only_on_identities() {
    for cat in [isham_two_object(false), fig_two()] {
        for f in cat.arrows() {
            for g in cat.arrows() {
                let same = delta_field(&cat, f) == delta_field(&cat, g);
                let both_identities =
                    cat.identity(cat.dom(f)) == Some(f) && cat.identity(cat.dom(g)) == Some(g);
                assert_eq!(same, f == g || both_identities);
            }
        }
    }
}

#[test]
fn delta_idempotency_matches_the_combination_law() {
    let cat = isham_two_object(false);
    for f in cat.arrows() {
        let xf = delta_field(&cat, f);
        let xfxf = combine(&cat, &xf, &xf);
        if cat.dom(f) != cat.cod(f) {
            // X_f & X_f = X_f whenever f leaves its domain
            assert_eq!(xfxf, xf);
        } else {
            // for endo-arrows the combination law gives X_{f∘f}
            let ff = cat.compose(f, f).unwrap();
            assert_eq!(xfxf, delta_field(&cat, ff));
        }
    }
}

#[test]
fn exhaustive_monoid_laws_on_isham() {
    let cat = isham_two_object(false);
    let fields = enumerate_arrow_fields(&cat, 100).unwrap();
    let report = check_monoid_laws(&cat, &fields);
    assert!(report.passed(), "{}", report);
    // 12 unit-law fields ×2 + 12² right-action pairs + 12³ triples
    assert_eq!(report.cases, 24 + 144 + 1728);
}

#[test]
fn exhaustive_monoid_laws_on_fig_two() {
    let cat = fig_two();
    let fields = enumerate_arrow_fields(&cat, 100).unwrap();
    let report = check_monoid_laws(&cat, &fields);
    assert!(report.passed(), "{}", report);
}

#[test]
fn monoid_laws_hold_trivially_for_iota_alone() {
    let cat = isham_two_object(false);
    let report = check_monoid_laws(&cat, &[identity_field(&cat)]);
    assert!(report.passed());
}

#[test]
fn endo_antirepresentation() {
    let cat = isham_two_object(false);
    // all 9 pairs from {id_B, r, s}
    let report = endo_antirep_check(&cat, ObjectId(1));
    assert!(report.passed(), "{}", report);
    assert_eq!(report.cases, 9);
    // identity-only object
    let report = endo_antirep_check(&cat, ObjectId(0));
    assert!(report.passed());
    assert_eq!(report.cases, 1);
}

#[test]
fn isotropy_group_antirepresentation_is_injective() {
    use catquant::structures::{FiniteGroupAction, GroupTable};
    let z2 = GroupTable::cyclic(2);
    let ga = FiniteGroupAction::new(z2, vec!["q".into()], vec![vec![0], vec![0]]).unwrap();
    let cat = group_action_category(&ga);
    let q = ObjectId(0);
    assert!(endo_antirep_check(&cat, q).passed());
    let endos = cat.hom_set(q, q);
    for &f in &endos {
        for &g in &endos {
            if f != g {
                assert_ne!(delta_field(&cat, f), delta_field(&cat, g));
            }
        }
    }
}

#[test]
fn fig_one_field_count_exceeds_the_default_cap() {
    use catquant::arrow_field::{FieldError, DEFAULT_FIELD_CAP};
    let cat = fig_one(ArrowMode::AllMonotone);
    let count = field_count(&cat);
    assert!(count > DEFAULT_FIELD_CAP as u128);
    match enumerate_arrow_fields(&cat, DEFAULT_FIELD_CAP) {
        Err(FieldError::CountExceedsCap { count: c, .. }) => assert_eq!(c, count),
        other => panic!("expected refusal, got {:?}", other.map(|f| f.len())),
    }
}

mod random_instances {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Associativity and the right-action law on randomly selected field
        /// triples of truncated chains.
        #[test]
        fn chain_field_triples(
            n in 1usize..=5,
            picks in proptest::collection::vec(0usize..10_000, 3),
        ) {
            use catquant::arrow_field::{combine, enumerate_arrow_fields, rho};
            let cat = chain_category(n).unwrap();
            let fields = enumerate_arrow_fields(&cat, 100_000).unwrap();
            let pick = |i: usize| &fields[picks[i] % fields.len()];
            let (x1, x2, x3) = (pick(0), pick(1), pick(2));
            let left = combine(&cat, x1, &combine(&cat, x2, x3));
            let right = combine(&cat, &combine(&cat, x1, x2), x3);
            prop_assert_eq!(left, right);
            let r1 = rho(&cat, x1);
            let r2 = rho(&cat, x2);
            let composed: Vec<ObjectId> = r1.iter().map(|&a| r2[a.0]).collect();
            prop_assert_eq!(composed, rho(&cat, &combine(&cat, x1, x2)));
        }
    }
}

#[test]
fn monoid_check_paths_agree() {
    // the complete enumeration in canonical order takes the Cayley-table
    // path; any other ordering takes the direct recombination path. Both
    // must see the same case count and verdict.
    let cat = isham_two_object(false);
    let fields = enumerate_arrow_fields(&cat, 100).unwrap();
    let fast = check_monoid_laws(&cat, &fields);
    let mut shuffled = fields.clone();
    shuffled.rotate_left(5);
    let direct = check_monoid_laws(&cat, &shuffled);
    assert!(fast.passed() && direct.passed());
    assert_eq!(fast.cases, direct.cases);
}
