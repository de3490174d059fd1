//! Block and harmonic decompositions of the constitutive tensors.

mod ela4;
mod ela5;
mod ela6;
mod law;

pub use ela4::{
    cghd_ela4, ela4_terms, ibd_ela4, reconstruct_ela4, reconstruct_ibd_ela4, Ela4Blocks,
    Ela4Harmonics,
};
pub use ela5::{
    cghd_ela5, ela5_terms, ibd_ela5, reconstruct_ela5, reconstruct_ibd_ela5, Ela5Blocks,
    Ela5Harmonics,
};
pub use ela6::{
    cghd_ela6, ela6_terms, ibd_ela6, reconstruct_ela6, reconstruct_ibd_ela6, Ela6Blocks,
    Ela6Harmonics,
};
pub use law::{apply_law, energy_split, EnergySplit};

use crate::error::{Error, Result};
use crate::harmonic::HarmonicComponent;
use crate::pattern::IndexSymmetry;
use crate::scalar::Scalar;
use crate::state::Formulation;
use crate::tensor::Tensor;

/// Fourth-order elasticity tensor with minor and major symmetries.
#[derive(Clone, Debug, PartialEq)]
pub struct Ela4Tensor<T> {
    t: Tensor<T>,
}

/// Fifth-order coupling tensor, `(ij)(kl)m` (type II) or `(ij)k(lm)` (type I).
#[derive(Clone, Debug, PartialEq)]
pub struct Ela5Tensor<T> {
    t: Tensor<T>,
    formulation: Formulation,
}

/// Sixth-order tensor with minor symmetries on each triple and major symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct Ela6Tensor<T> {
    t: Tensor<T>,
    formulation: Formulation,
}

impl<T: Scalar> Ela4Tensor<T> {
    /// Validates the symmetries within `tol` and stores the symmetrized tensor.
    pub fn new(t: &Tensor<T>, tol: f64) -> Result<Self> {
        Ok(Self {
            t: IndexSymmetry::ela4().validate(t, tol)?,
        })
    }

    /// Projects an arbitrary order-4 tensor onto the space.
    pub fn symmetrize(t: &Tensor<T>) -> Result<Self> {
        check_order(t, 4)?;
        Ok(Self {
            t: IndexSymmetry::ela4().project(t),
        })
    }

    pub fn tensor(&self) -> &Tensor<T> {
        &self.t
    }

    pub fn into_tensor(self) -> Tensor<T> {
        self.t
    }
}

impl<T: Scalar> Ela5Tensor<T> {
    pub fn new(t: &Tensor<T>, formulation: Formulation, tol: f64) -> Result<Self> {
        Ok(Self {
            t: IndexSymmetry::ela5(formulation).validate(t, tol)?,
            formulation,
        })
    }

    pub fn symmetrize(t: &Tensor<T>, formulation: Formulation) -> Result<Self> {
        check_order(t, 5)?;
        Ok(Self {
            t: IndexSymmetry::ela5(formulation).project(t),
            formulation,
        })
    }

    pub fn tensor(&self) -> &Tensor<T> {
        &self.t
    }

    pub fn into_tensor(self) -> Tensor<T> {
        self.t
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation
    }

    /// `(Mᵀ)_{ijklm} = M_{lmijk}`.
    pub fn transpose(&self) -> Tensor<T> {
        self.t.transpose_block(2, 3).expect("order 5")
    }
}

impl<T: Scalar> Ela6Tensor<T> {
    pub fn new(t: &Tensor<T>, formulation: Formulation, tol: f64) -> Result<Self> {
        Ok(Self {
            t: IndexSymmetry::ela6(formulation).validate(t, tol)?,
            formulation,
        })
    }

    pub fn symmetrize(t: &Tensor<T>, formulation: Formulation) -> Result<Self> {
        check_order(t, 6)?;
        Ok(Self {
            t: IndexSymmetry::ela6(formulation).project(t),
            formulation,
        })
    }

    pub fn tensor(&self) -> &Tensor<T> {
        &self.t
    }

    pub fn into_tensor(self) -> Tensor<T> {
        self.t
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation
    }
}

fn check_order<T: Scalar>(t: &Tensor<T>, order: usize) -> Result<()> {
    if t.order() != order {
        return Err(Error::InvalidArity(format!(
            "expected order {order}, got {}",
            t.order()
        )));
    }
    Ok(())
}

/// A labelled collection of harmonic components.
pub trait HarmonicBundle<T: Scalar>: Sized + Clone {
    /// Components with their labels, in a fixed order.
    fn entries(&self) -> Vec<(String, HarmonicComponent<T>)>;

    /// Same bundle with components replaced in [`entries`](Self::entries) order.
    fn with_components(&self, components: &[HarmonicComponent<T>]) -> Self;

    fn map_components(&self, f: impl Fn(&HarmonicComponent<T>) -> HarmonicComponent<T>) -> Self {
        let comps: Vec<_> = self.entries().iter().map(|(_, c)| f(c)).collect();
        self.with_components(&comps)
    }

    /// Euclidean norm squared of all coordinates.
    fn coords_norm_sq(&self) -> T {
        self.entries()
            .iter()
            .fold(T::zero(), |acc, (_, c)| acc + c.coords_norm_sq())
    }

    /// All coordinates in [`entries`](Self::entries) order.
    fn coords_vec(&self) -> Vec<T> {
        self.entries()
            .iter()
            .flat_map(|(_, c)| c.coords().to_vec())
            .collect()
    }

    /// Number of scalar coordinates.
    fn parameter_count(&self) -> usize {
        self.entries().iter().map(|(_, c)| c.dim()).sum()
    }
}

/// Orders `components` to match `labels`, rejecting unknown, missing or mistyped entries.
pub(crate) fn order_entries<T: Scalar>(
    labels: &[(String, i32)],
    given: &[(String, HarmonicComponent<T>)],
) -> Result<Vec<HarmonicComponent<T>>> {
    for (name, _) in given {
        if !labels.iter().any(|(l, _)| l == name) {
            return Err(Error::InvalidArgument(format!("unknown label {name}")));
        }
    }
    labels
        .iter()
        .map(|(label, k)| {
            let mut hits = given.iter().filter(|(l, _)| l == label);
            let (_, c) = hits
                .next()
                .ok_or_else(|| Error::InvalidArgument(format!("missing label {label}")))?;
            if hits.next().is_some() {
                return Err(Error::InvalidArgument(format!("duplicate label {label}")));
            }
            if c.k() != *k {
                return Err(Error::InvalidArgument(format!(
                    "label {label} is K^{k}, got K^{}",
                    c.k()
                )));
            }
            Ok(*c)
        })
        .collect()
}
