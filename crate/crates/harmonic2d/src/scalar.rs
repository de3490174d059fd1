//! Scalar abstraction shared by every tensor routine.

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};
use std::fmt::{Debug, Display};

/// Field element used for tensor components.
///
/// Implemented for `f32`, `f64` and exact rationals. Tolerances are always
/// passed as `f64`; comparisons go through [`Scalar::to_f64_lossy`].
pub trait Scalar:
    Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Copy
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// `n / d` in this field.
    fn frac(n: i64, d: i64) -> Self;

    fn is_finite_value(&self) -> bool;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Relative residual the type can be expected to hit on identities that
    /// hold exactly in rational arithmetic.
    fn exactness_tol() -> f64;
}

impl Scalar for f64 {
    fn frac(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn exactness_tol() -> f64 {
        1e-12
    }
}

impl Scalar for f32 {
    fn frac(n: i64, d: i64) -> Self {
        (n as f64 / d as f64) as f32
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn exactness_tol() -> f64 {
        1e-5
    }
}

impl Scalar for Ratio<i64> {
    fn frac(n: i64, d: i64) -> Self {
        Ratio::new(n, d)
    }
    fn is_finite_value(&self) -> bool {
        true
    }
    fn exactness_tol() -> f64 {
        0.0
    }
}

/// Scalars with trigonometry, needed for the O(2) action.
pub trait Real: Scalar + Float {}

impl Real for f32 {}
impl Real for f64 {}

/// `true` when `residual_sq <= tol^2 * scale_sq`, with exact comparison at `tol == 0`.
pub(crate) fn within<T: Scalar>(residual_sq: T, scale_sq: T, tol: f64) -> bool {
    if residual_sq.is_zero() {
        return true;
    }
    let r = residual_sq.to_f64_lossy();
    let s = scale_sq.to_f64_lossy();
    r <= tol * tol * s
}
