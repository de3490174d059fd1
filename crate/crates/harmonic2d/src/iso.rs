//! Elementary isotropic tensors and the identities on the state spaces.

use crate::embeddings::{projector, ProjectorTag};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

/// Index pairings of the fourth-order elementary tensors, slots 0..4 = `ijkl`.
const PAIRINGS_4: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

/// Index pairings of the sixth-order elementary tensors, slots 0..6 = `ijklmn`.
const PAIRINGS_6: [[(usize, usize); 3]; 15] = [
    [(0, 1), (2, 3), (4, 5)],
    [(0, 1), (2, 4), (3, 5)],
    [(0, 1), (2, 5), (3, 4)],
    [(0, 2), (1, 3), (4, 5)],
    [(0, 2), (1, 4), (3, 5)],
    [(0, 2), (1, 5), (3, 4)],
    [(0, 3), (1, 2), (4, 5)],
    [(0, 3), (1, 4), (2, 5)],
    [(0, 3), (1, 5), (2, 4)],
    [(0, 4), (1, 2), (3, 5)],
    [(0, 4), (1, 5), (2, 3)],
    [(0, 4), (1, 3), (2, 5)],
    [(0, 5), (1, 2), (3, 4)],
    [(0, 5), (1, 3), (2, 4)],
    [(0, 5), (1, 4), (2, 3)],
];

/// Names an elementary isotropic tensor: `(2, 1)` is δ, `(4, p)` for `p ∈ 1..=3`,
/// `(6, p)` for `p ∈ 1..=15`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IsoTag {
    order: usize,
    index: usize,
}

impl IsoTag {
    pub fn new(order: usize, index: usize) -> Result<Self> {
        let count = match order {
            2 => 1,
            4 => 3,
            6 => 15,
            _ => 0,
        };
        if index == 0 || index > count {
            return Err(Error::InvalidArgument(format!(
                "no elementary isotropic tensor ({order}, {index})"
            )));
        }
        Ok(Self { order, index })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

fn from_pairings<T: Scalar>(order: usize, pairs: &[(usize, usize)]) -> Tensor<T> {
    Tensor::from_fn(order, |x| {
        if pairs.iter().all(|&(a, b)| x[a] == x[b]) {
            T::one()
        } else {
            T::zero()
        }
    })
}

pub fn iso<T: Scalar>(tag: IsoTag) -> Tensor<T> {
    match tag.order {
        2 => kronecker(),
        4 => from_pairings(4, &PAIRINGS_4[tag.index - 1]),
        _ => from_pairings(6, &PAIRINGS_6[tag.index - 1]),
    }
}

/// `i_p` of order 4; panics outside `1..=3`.
pub fn i4<T: Scalar>(p: usize) -> Tensor<T> {
    iso(IsoTag::new(4, p).expect("fourth-order index"))
}

/// `i_p` of order 6; panics outside `1..=15`.
pub fn i6<T: Scalar>(p: usize) -> Tensor<T> {
    iso(IsoTag::new(6, p).expect("sixth-order index"))
}

/// `Σ c_p i_p` over fourth-order tensors with rational coefficients `(p, num, den)`.
pub(crate) fn comb4<T: Scalar>(terms: &[(usize, i64, i64)]) -> Tensor<T> {
    terms.iter().fold(Tensor::zeros(4), |acc, &(p, n, d)| {
        acc.add_scaled(T::frac(n, d), &i4(p))
    })
}

pub(crate) fn comb6<T: Scalar>(terms: &[(usize, i64, i64)]) -> Tensor<T> {
    terms.iter().fold(Tensor::zeros(6), |acc, &(p, n, d)| {
        acc.add_scaled(T::frac(n, d), &i6(p))
    })
}

pub fn kronecker<T: Scalar>() -> Tensor<T> {
    Tensor::matrix([[T::one(), T::zero()], [T::zero(), T::one()]])
}

/// `ε₁₂ = 1`, `ε₂₁ = −1`.
pub fn levi_civita<T: Scalar>() -> Tensor<T> {
    Tensor::matrix([[T::zero(), T::one()], [-T::one(), T::zero()]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateSpace {
    /// Symmetric second-order tensors.
    T2Sym,
    /// Third-order tensors symmetric in the first two slots.
    T3TypeII,
    /// Third-order tensors symmetric in the last two slots.
    T3TypeI,
    K2,
    K3,
}

pub fn identity_on<T: Scalar>(space: StateSpace) -> Tensor<T> {
    match space {
        StateSpace::T2Sym => comb4(&[(2, 1, 2), (3, 1, 2)]),
        StateSpace::T3TypeII => comb6(&[(8, 1, 2), (12, 1, 2)]),
        StateSpace::T3TypeI => comb6(&[(8, 1, 2), (9, 1, 2)]),
        StateSpace::K2 => projector(ProjectorTag::P22),
        StateSpace::K3 => projector(ProjectorTag::P33),
    }
}
