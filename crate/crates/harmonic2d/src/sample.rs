//! Seeded random inputs for checks and tests.

use rand::Rng;

use crate::ela::{Ela4Tensor, Ela5Tensor, Ela6Tensor};
use crate::group::GroupElement;
use crate::state::Formulation;
use crate::tensor::Tensor;

/// Entries drawn uniformly from `[-1, 1)`.
pub fn random_tensor<R: Rng + ?Sized>(order: usize, rng: &mut R) -> Tensor<f64> {
    Tensor::from_fn(order, |_| rng.gen_range(-1.0..1.0))
}

pub fn random_ela4<R: Rng + ?Sized>(rng: &mut R) -> Ela4Tensor<f64> {
    Ela4Tensor::symmetrize(&random_tensor(4, rng)).expect("order 4")
}

pub fn random_ela5<R: Rng + ?Sized>(f: Formulation, rng: &mut R) -> Ela5Tensor<f64> {
    Ela5Tensor::symmetrize(&random_tensor(5, rng), f).expect("order 5")
}

pub fn random_ela6<R: Rng + ?Sized>(f: Formulation, rng: &mut R) -> Ela6Tensor<f64> {
    Ela6Tensor::symmetrize(&random_tensor(6, rng), f).expect("order 6")
}

/// A rotation or a reflection with equal probability.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R) -> GroupElement<f64> {
    let theta: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    if rng.gen_bool(0.5) {
        GroupElement::rotation(theta)
    } else {
        GroupElement::reflection([theta.cos(), theta.sin()]).expect("unit normal")
    }
}
