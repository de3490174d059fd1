mod common;

use common::*;
use harmonic2d::pattern::IndexSymmetry;
use harmonic2d::sample::{random_ela5, random_tensor};
use harmonic2d::{
    apply_law, cghd_ela4, cghd_ela5, cghd_ela6, energy_split, reconstruct_ela4, reconstruct_ela5,
    reconstruct_ela6, Ela4Tensor, Ela5Tensor, Ela6Tensor, Formulation, HarmonicBundle, Rational,
    Tensor,
};
use rand::Rng;

fn integer_tensor(order: usize, seed: u64) -> Tensor<Rational> {
    let mut r = rng(seed);
    Tensor::from_fn(order, |_| Rational::from_integer(r.gen_range(-5..=5)))
}

#[test]
fn rational_round_trips_are_exact() {
    for seed in 0..3 {
        let c = Ela4Tensor::symmetrize(&integer_tensor(4, seed)).unwrap();
        assert_eq!(reconstruct_ela4(&cghd_ela4(&c)), c);
        for f in [Formulation::TypeII, Formulation::TypeI] {
            for basis in BASES {
                let m = Ela5Tensor::symmetrize(&integer_tensor(5, seed + 10), f).unwrap();
                assert_eq!(reconstruct_ela5(&cghd_ela5(&m, basis)), m);
                let a = Ela6Tensor::symmetrize(&integer_tensor(6, seed + 20), f).unwrap();
                let h = cghd_ela6(&a, basis);
                assert_eq!(reconstruct_ela6(&h), a);
                assert_eq!(h.parameter_count(), 21);
            }
        }
    }
}

#[test]
fn f32_round_trips() {
    let mut r = rng(3);
    for f in [Formulation::TypeII, Formulation::TypeI] {
        for basis in BASES {
            let raw: Tensor<f32> = Tensor::from_fn(6, |_| r.gen_range(-1.0f32..1.0));
            let a = Ela6Tensor::symmetrize(&raw, f).unwrap();
            let back = reconstruct_ela6(&cghd_ela6(&a, basis));
            assert!(back.tensor().rel_diff(a.tensor()) < 1e-5);
        }
    }
    let raw: Tensor<f32> = Tensor::from_fn(4, |_| r.gen_range(-1.0f32..1.0));
    let c = Ela4Tensor::symmetrize(&raw).unwrap();
    assert!(
        reconstruct_ela4(&cghd_ela4(&c))
            .tensor()
            .rel_diff(c.tensor())
            < 1e-5
    );
}

#[test]
fn symmetry_violations_are_reported() {
    let mut t = Ela4Tensor::symmetrize(&integer_tensor(4, 7))
        .unwrap()
        .into_tensor();
    let mut data = t.as_slice().to_vec();
    data[1] += Rational::new(1, 1000);
    t = Tensor::new(4, data).unwrap();
    assert!(matches!(
        Ela4Tensor::new(&t, 0.0),
        Err(harmonic2d::Error::Symmetry { .. })
    ));
    assert!(Ela4Tensor::new(&t, 1e-2).is_ok());
    assert!(Ela4Tensor::symmetrize(&integer_tensor(3, 1)).is_err());
}

#[test]
fn coupling_transpose_is_the_adjoint() {
    // ε : M ⋮ η = η ⋮ Mᵀ : ε
    let mut r = rng(17);
    for f in [Formulation::TypeII, Formulation::TypeI] {
        let m = random_ela5(f, &mut r);
        let mt = m.transpose();
        assert_eq!(mt.transpose_block(3, 2).unwrap(), *m.tensor());
        let eps = random_tensor(2, &mut r).symmetrize_all();
        let eta = IndexSymmetry::t3(f).project(&random_tensor(3, &mut r));
        let lhs = m.tensor().contract(&eta, 3).unwrap().dot(&eps);
        let rhs = mt.contract(&eps, 2).unwrap().dot(&eta);
        assert!((lhs - rhs).abs() < 1e-12);
    }
}

#[test]
fn energy_blocks_sum_to_total() {
    let mut r = rng(18);
    for f in [Formulation::TypeII, Formulation::TypeI] {
        for basis in BASES {
            let c = harmonic2d::sample::random_ela4(&mut r);
            let m = random_ela5(f, &mut r);
            let a = harmonic2d::sample::random_ela6(f, &mut r);
            let eps = random_tensor(2, &mut r).symmetrize_all();
            let eta = IndexSymmetry::t3(f).project(&random_tensor(3, &mut r));
            let split = energy_split(&c, &m, &a, &eps, &eta, basis, 1e-12).unwrap();
            let sum: f64 = split.blocks.iter().map(|(_, v)| v).sum();
            assert!((sum - split.total).abs() < 1e-12 * split.total.abs().max(1.0));
            assert_eq!(split.blocks.len(), 3 + 6 + 6);

            let (sigma, tau) = apply_law(&c, &m, &a, &eps, &eta, 1e-12).unwrap();
            let work = 0.5 * (sigma.dot(&eps) + tau.dot(&eta));
            assert!((work - split.total).abs() < 1e-12);
        }
    }
}

#[test]
fn mismatched_formulations_are_rejected() {
    let mut r = rng(19);
    let c = harmonic2d::sample::random_ela4(&mut r);
    let m = random_ela5(Formulation::TypeII, &mut r);
    let a = harmonic2d::sample::random_ela6(Formulation::TypeI, &mut r);
    let eps = Tensor::zeros(2);
    let eta = Tensor::zeros(3);
    assert!(apply_law(&c, &m, &a, &eps, &eta, 1e-12).is_err());
}
