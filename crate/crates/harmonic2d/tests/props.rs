mod common;

use common::*;
use harmonic2d::ela::{ela4_terms, ela5_terms, ela6_terms};
use harmonic2d::embeddings::{embedding, EmbeddingTag};
use harmonic2d::sample::{random_ela4, random_ela5, random_ela6, random_element, random_tensor};
use harmonic2d::{
    cghd_ela4, cghd_ela5, cghd_ela6, classify_high, is_invariant, rayleigh, reconstruct_ela4,
    reconstruct_ela5, reconstruct_ela6, restrict_to_class, ClassifiedBundle, Ela4Tensor,
    Ela5Tensor, Ela6Tensor, Formulation, HarmonicBundle, HarmonicComponent, Permutation,
    SymmetryClass, Tensor, VANISHING_TOL,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const FORMULATIONS: [Formulation; 2] = [Formulation::TypeII, Formulation::TypeI];

fn bundle_diff<B: HarmonicBundle<f64>>(a: &B, b: &B) -> f64 {
    let scale = a.coords_norm_sq().sqrt().max(1e-300);
    a.coords_vec()
        .iter()
        .zip(b.coords_vec())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
        / scale
}

fn max_cross_dot(terms: &[(String, Tensor<f64>)]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, (_, a)) in terms.iter().enumerate() {
        for (_, b) in &terms[i + 1..] {
            let scale = (a.norm_sq() * b.norm_sq()).sqrt().max(1e-300);
            worst = worst.max(a.dot(b).abs() / scale);
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rayleigh_is_a_group_action(seed in any::<u64>(), order in 0usize..=6) {
        let mut r = rng(seed);
        let t = random_tensor(order, &mut r);
        let (g, h) = (random_element(&mut r), random_element(&mut r));
        let lhs = rayleigh(&g, &rayleigh(&h, &t));
        let rhs = rayleigh(&g.compose(&h), &t);
        prop_assert!(lhs.rel_diff(&rhs) < 1e-12);
        prop_assert!(rayleigh(&g.inverse(), &rayleigh(&g, &t)).rel_diff(&t) < 1e-12);
    }

    #[test]
    fn rayleigh_preserves_norm(seed in any::<u64>(), order in 1usize..=6) {
        let mut r = rng(seed);
        let t = random_tensor(order, &mut r);
        let g = random_element(&mut r);
        prop_assert!((rayleigh(&g, &t).norm_sq() - t.norm_sq()).abs() < 1e-12 * t.norm_sq());
    }

    #[test]
    fn permutation_commutes_with_rayleigh(seed in any::<u64>(), order in 2usize..=6) {
        let mut r = rng(seed);
        let t = random_tensor(order, &mut r);
        let g = random_element(&mut r);
        let mut images: Vec<usize> = (1..=order).collect();
        images.shuffle(&mut r);
        let p = Permutation::new(images).unwrap();
        let a = rayleigh(&g, &t.permute(&p).unwrap());
        let b = rayleigh(&g, &t).permute(&p).unwrap();
        prop_assert!(a.rel_diff(&b) < 1e-12);
    }

    #[test]
    fn rho_intertwines_with_rayleigh(seed in any::<u64>(), k in 0i32..=6) {
        let mut r = rng(seed);
        let h: HarmonicComponent<f64> = if k == 0 {
            HarmonicComponent::scalar(0, r.gen_range(-1.0..1.0))
        } else {
            HarmonicComponent::pair(k, r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
        };
        let g = random_element(&mut r);
        let moved = rayleigh(&g, &h.to_tensor());
        prop_assert!(moved.rel_diff(&h.rho_rotate(&g).to_tensor()) < 1e-12);
    }

    #[test]
    fn rho_intertwines_on_pseudo_scalars(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = embedding::<f64>(EmbeddingTag::Phi2Neg1).unwrap();
        let v = HarmonicComponent::scalar(-1, r.gen_range(-1.0..1.0));
        let g = random_element(&mut r);
        let lhs = rayleigh(&g, &e.embed(&v));
        prop_assert!(lhs.rel_diff(&e.embed(&v.rho_rotate(&g))) < 1e-12);
    }

    #[test]
    fn round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_ela4(&mut r);
        prop_assert!(reconstruct_ela4(&cghd_ela4(&c)).tensor().rel_diff(c.tensor()) < 1e-12);
        for f in FORMULATIONS {
            for basis in BASES {
                let m = random_ela5(f, &mut r);
                prop_assert!(reconstruct_ela5(&cghd_ela5(&m, basis)).tensor().rel_diff(m.tensor()) < 1e-12);
                let a = random_ela6(f, &mut r);
                prop_assert!(reconstruct_ela6(&cghd_ela6(&a, basis)).tensor().rel_diff(a.tensor()) < 1e-12);
            }
        }
    }

    #[test]
    fn decompositions_are_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_element(&mut r);
        let rho = |c: &HarmonicComponent<f64>| c.rho_rotate(&g);

        let c = random_ela4(&mut r);
        let moved = Ela4Tensor::symmetrize(&rayleigh(&g, c.tensor())).unwrap();
        prop_assert!(bundle_diff(&cghd_ela4(&c).map_components(rho), &cghd_ela4(&moved)) < 1e-11);

        let f = FORMULATIONS[r.gen_range(0..2)];
        let basis = BASES[r.gen_range(0..2)];
        let m = random_ela5(f, &mut r);
        let moved = Ela5Tensor::symmetrize(&rayleigh(&g, m.tensor()), f).unwrap();
        prop_assert!(bundle_diff(&cghd_ela5(&m, basis).map_components(rho), &cghd_ela5(&moved, basis)) < 1e-11);

        let a = random_ela6(f, &mut r);
        let moved = Ela6Tensor::symmetrize(&rayleigh(&g, a.tensor()), f).unwrap();
        prop_assert!(bundle_diff(&cghd_ela6(&a, basis).map_components(rho), &cghd_ela6(&moved, basis)) < 1e-11);
    }

    #[test]
    fn reconstruction_terms_are_orthogonal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = FORMULATIONS[r.gen_range(0..2)];
        let basis = BASES[r.gen_range(0..2)];
        prop_assert!(max_cross_dot(&ela4_terms(&cghd_ela4(&random_ela4(&mut r)))) < 1e-12);
        prop_assert!(max_cross_dot(&ela5_terms(&cghd_ela5(&random_ela5(f, &mut r), basis))) < 1e-12);
        prop_assert!(max_cross_dot(&ela6_terms(&cghd_ela6(&random_ela6(f, &mut r), basis))) < 1e-12);
    }

    #[test]
    fn restriction_is_invariant_and_classified(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = FORMULATIONS[r.gen_range(0..2)];
        let basis = BASES[r.gen_range(0..2)];
        check_restrictions(&cghd_ela4(&random_ela4(&mut r)), |h| reconstruct_ela4(h).into_tensor())?;
        check_restrictions(&cghd_ela5(&random_ela5(f, &mut r), basis), |h| reconstruct_ela5(h).into_tensor())?;
        check_restrictions(&cghd_ela6(&random_ela6(f, &mut r), basis), |h| reconstruct_ela6(h).into_tensor())?;
    }
}

fn check_restrictions<B: ClassifiedBundle<f64>>(
    h: &B,
    rebuild: impl Fn(&B) -> Tensor<f64>,
) -> Result<(), TestCaseError> {
    for &c in B::resolved() {
        let restricted = restrict_to_class(h, c).unwrap();
        let t = rebuild(&restricted);
        for g in c.generators::<f64>() {
            prop_assert!(is_invariant(&t, &g, 1e-11), "{} {c}", B::SPACE);
        }
        let found = classify_high(&restricted, VANISHING_TOL);
        prop_assert!(
            found.classes.contains(&c),
            "{} {c}: {:?}",
            B::SPACE,
            found.classes
        );
    }
    Ok(())
}

#[test]
fn unresolved_classes_are_rejected() {
    let mut r = rng(9);
    let h = cghd_ela5(&random_ela5(Formulation::TypeII, &mut r), BASES[0]);
    for c in [
        SymmetryClass::Z3,
        SymmetryClass::D3,
        SymmetryClass::Z2pi,
        SymmetryClass::Triv,
    ] {
        assert!(matches!(
            restrict_to_class(&h, c),
            Err(harmonic2d::Error::UnresolvedClass { .. })
        ));
    }
    assert!(matches!(
        restrict_to_class(&h, SymmetryClass::D6),
        Err(harmonic2d::Error::InvalidArgument(_))
    ));
}
