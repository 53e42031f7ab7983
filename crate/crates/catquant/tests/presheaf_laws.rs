//! Pull-back presheaf construction, functoriality validation, and the
//! counting inner product.

use catquant::category::ObjectId;
use catquant::generators::{fig_one, fig_two, isham_two_object, ArrowMode};
use catquant::linalg::{CMat, C64, ONE, ZERO};
use catquant::presheaf::{
    inner_product, set_presheaf, trivial_presheaf, validate_presheaf, Section,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn isham_set_presheaf_dimensions_and_maps() {
    let cat = isham_two_object(false);
    let p = set_presheaf(&cat).unwrap();
    assert_eq!(p.dims(), &[1, 2]);
    assert_eq!(p.total_dim(), 3);

    let kappa = |name: &str| p.kappa(cat.arrow_by_name(name).unwrap()).clone();
    // pull-backs frozen from (κ(f)v)(a) = v(f(a))
    assert!(kappa("id_B").eq_exact(&CMat::identity(2)));
    assert!(kappa("g").eq_exact(&CMat::from_real_rows(&[&[1.0], &[1.0]])));
    assert!(kappa("f1").eq_exact(&CMat::from_real_rows(&[&[1.0, 0.0]])));
    assert!(kappa("f2").eq_exact(&CMat::from_real_rows(&[&[0.0, 1.0]])));
    assert!(kappa("r").eq_exact(&CMat::from_real_rows(&[&[1.0, 0.0], &[1.0, 0.0]])));
    assert!(kappa("s").eq_exact(&CMat::from_real_rows(&[&[0.0, 1.0], &[0.0, 1.0]])));
}

#[test]
fn set_presheaves_validate_on_all_generated_examples() {
    for cat in [
        isham_two_object(false),
        isham_two_object(true),
        fig_one(ArrowMode::AllMonotone),
        fig_one(ArrowMode::InjectiveMonotone),
        fig_two(),
    ] {
        let p = set_presheaf(&cat).unwrap();
        let report = validate_presheaf(&cat, &p);
        assert!(report.is_valid(), "{:?}", report);
        // pull-back matrices are 0/1 with exactly one 1 per row
        for f in cat.arrows() {
            let m = p.kappa(f);
            assert!(m.is_zero_one());
            for i in 0..m.rows() {
                let ones = (0..m.cols()).filter(|&j| m.get(i, j) == ONE).count();
                assert_eq!(ones, 1);
            }
        }
    }
}

#[test]
fn trivial_presheaf_always_validates() {
    for cat in [
        isham_two_object(false),
        fig_two(),
        catquant::generators::chain_category(4).unwrap(),
    ] {
        assert!(validate_presheaf(&cat, &trivial_presheaf(&cat)).is_valid());
    }
}

#[test]
fn corrupting_kappa_r_breaks_functoriality_at_r_r() {
    let cat = isham_two_object(false);
    let mut p = set_presheaf(&cat).unwrap();
    let r = cat.arrow_by_name("r").unwrap();
    let swap = CMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
    p.set_kappa(&cat, r, swap).unwrap();
    let report = validate_presheaf(&cat, &p);
    assert!(!report.is_valid());
    // r ∘ r = r, but swap·swap = I ≠ swap
    assert!(report.functoriality_violations.contains(&(r, r)));
    // every reported pair must involve r
    for &(f, g) in &report.functoriality_violations {
        let gf = cat.compose(g, f).unwrap();
        assert!(f == r || g == r || gf == r);
    }
}

#[test]
fn inner_product_worked_examples() {
    let cat = isham_two_object(false);
    let p = set_presheaf(&cat).unwrap();
    // (1; 2, i) with itself: 1 + 4 + 1 = 6
    let psi = Section::from_blocks(
        &p,
        vec![vec![ONE], vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0)]],
    )
    .unwrap();
    assert_eq!(inner_product(&p, &psi, &psi).unwrap(), C64::new(6.0, 0.0));
    // disjoint blocks
    let at_a = Section::from_blocks(&p, vec![vec![ONE], vec![ZERO, ZERO]]).unwrap();
    let at_b1 = Section::from_blocks(&p, vec![vec![ZERO], vec![ONE, ZERO]]).unwrap();
    assert_eq!(inner_product(&p, &at_a, &at_b1).unwrap(), ZERO);
    // dimension mismatch is an error
    let q = trivial_presheaf(&cat);
    let short = Section::zero(&q);
    assert!(inner_product(&p, &psi, &short).is_err());
}

fn random_section(p: &catquant::HilbertPresheaf, rng: &mut StdRng) -> Section {
    let blocks = p
        .dims()
        .iter()
        .map(|&d| {
            (0..d)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    Section::from_blocks(p, blocks).unwrap()
}

#[test]
fn inner_product_is_sesquilinear_and_positive() {
    let cat = isham_two_object(false);
    let p = set_presheaf(&cat).unwrap();
    let mut rng = StdRng::seed_from_u64(0);
    for _ in 0..50 {
        let psi = random_section(&p, &mut rng);
        let phi = random_section(&p, &mut rng);
        let chi = random_section(&p, &mut rng);
        let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let ip = |a: &Section, b: &Section| inner_product(&p, a, b).unwrap();
        // linear in the second argument
        assert!(
            (ip(&psi, &phi.scale(c).add(&chi)) - (c * ip(&psi, &phi) + ip(&psi, &chi))).norm()
                < 1e-12
        );
        // conjugate-linear in the first
        assert!((ip(&psi.scale(c), &phi) - c.conj() * ip(&psi, &phi)).norm() < 1e-12);
        // hermitian
        assert!((ip(&psi, &phi) - ip(&phi, &psi).conj()).norm() < 1e-12);
        // positive
        let norm = ip(&psi, &psi);
        assert!(norm.im.abs() < 1e-12 && norm.re >= 0.0);
    }
    // definiteness: zero only at the zero section
    let zero = Section::zero(&p);
    assert_eq!(inner_product(&p, &zero, &zero).unwrap(), ZERO);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// ⟨ψ,ψ⟩ is the squared Euclidean norm of the flattened section.
    #[test]
    fn norm_matches_flattened_vector(entries in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3)) {
        let cat = isham_two_object(false);
        let p = set_presheaf(&cat).unwrap();
        let flat: Vec<C64> = entries.iter().map(|&(re, im)| C64::new(re, im)).collect();
        let psi = Section::from_flat(&p, &flat).unwrap();
        let ip = inner_product(&p, &psi, &psi).unwrap();
        let expected: f64 = flat.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((ip - C64::new(expected, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn basis_sections_and_flattening_round_trip() {
    let cat = isham_two_object(false);
    let p = set_presheaf(&cat).unwrap();
    let b2 = Section::basis(&p, ObjectId(1), 1);
    assert_eq!(b2.flatten(), vec![ZERO, ZERO, ONE]);
    let back = Section::from_flat(&p, &b2.flatten()).unwrap();
    assert_eq!(back, b2);
}
