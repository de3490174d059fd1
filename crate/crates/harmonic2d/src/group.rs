//! Elements of O(2) and their action on tensors.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::Tensor;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupElement<T> {
    /// `R(θ)`, counterclockwise by `θ` radians.
    Rotation(T),
    /// `p(n) = I − 2 n⊗n` for a unit normal `n`.
    Reflection([T; 2]),
}

impl<T: Real> GroupElement<T> {
    pub fn identity() -> Self {
        GroupElement::Rotation(T::zero())
    }

    pub fn rotation(theta: T) -> Self {
        GroupElement::Rotation(theta)
    }

    /// Reflection across the line orthogonal to `normal`; the normal is rescaled to unit length.
    pub fn reflection(normal: [T; 2]) -> Result<Self> {
        let len = normal[0].hypot(normal[1]);
        if !len.is_finite() || len <= T::epsilon() {
            return Err(Error::InvalidArgument(format!(
                "reflection normal ({:?}, {:?}) has no direction",
                normal[0], normal[1]
            )));
        }
        Ok(GroupElement::Reflection([normal[0] / len, normal[1] / len]))
    }

    /// `p(e₂)`, the mirror `x₂ ↦ −x₂`.
    pub fn mirror_e2() -> Self {
        GroupElement::Reflection([T::zero(), T::one()])
    }

    pub fn matrix(&self) -> [[T; 2]; 2] {
        match *self {
            GroupElement::Rotation(t) => {
                let (s, c) = t.sin_cos();
                [[c, -s], [s, c]]
            }
            GroupElement::Reflection([a, b]) => {
                let two = T::one() + T::one();
                [
                    [T::one() - two * a * a, -two * a * b],
                    [-two * a * b, T::one() - two * b * b],
                ]
            }
        }
    }

    pub fn det(&self) -> T {
        match self {
            GroupElement::Rotation(_) => T::one(),
            GroupElement::Reflection(_) => -T::one(),
        }
    }

    pub fn is_reflection(&self) -> bool {
        matches!(self, GroupElement::Reflection(_))
    }

    /// Angle `φ` with `g = R(φ)` for rotations and `g = R(φ) p(e₂)` for reflections.
    pub fn angle(&self) -> T {
        let m = self.matrix();
        m[1][0].atan2(m[0][0])
    }

    /// Element acting as `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let a = self.matrix();
        let b = other.matrix();
        let m00 = a[0][0] * b[0][0] + a[0][1] * b[1][0];
        let m10 = a[1][0] * b[0][0] + a[1][1] * b[1][0];
        let phi = m10.atan2(m00);
        if self.is_reflection() == other.is_reflection() {
            GroupElement::Rotation(phi)
        } else {
            let half = phi / (T::one() + T::one());
            let (s, c) = half.sin_cos();
            GroupElement::Reflection([-s, c])
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            GroupElement::Rotation(t) => GroupElement::Rotation(-t),
            r => r,
        }
    }
}

/// Rayleigh product `(g ⋆ T)_{i…} = g_{i₁j₁} ⋯ g_{iₙjₙ} T_{j…}`.
pub fn rayleigh<T: Real>(g: &GroupElement<T>, t: &Tensor<T>) -> Tensor<T> {
    let m = g.matrix();
    let n = t.order();
    let mut data = t.as_slice().to_vec();
    // One 2x2 pass per slot.
    for slot in 0..n {
        let stride = 1usize << (n - 1 - slot);
        let mut next = data.clone();
        for (flat, out) in next.iter_mut().enumerate() {
            let i = (flat / stride) & 1;
            let base = flat - i * stride;
            *out = m[i][0] * data[base] + m[i][1] * data[base + stride];
        }
        data = next;
    }
    Tensor::new(n, data).expect("rotation keeps entries finite")
}
