//! Harmonic spaces `K^k` and their canonical coordinates.
//!
//! An element of `K^k` for `k ≥ 1` is stored as `(h₁, h₂) = (T_{1…1}, T_{1…12})`
//! of its totally symmetric traceless tensor `T`. In these coordinates a
//! rotation `R(θ)` acts as the planar rotation by `kθ`. `K⁰` holds scalars and
//! `K⁻¹` pseudo-scalars, both stored as a single coordinate.

use crate::error::{Error, Result};
use crate::group::{rayleigh, GroupElement};
use crate::scalar::{within, Real, Scalar};
use crate::tensor::Tensor;

/// Default relative tolerance for harmonicity checks.
pub const HARMONIC_TOL: f64 = 1e-10;

/// Highest harmonic order represented.
pub const MAX_K: i32 = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicComponent<T> {
    k: i32,
    coords: [T; 2],
}

/// Value of the canonical basis tensor at an index tuple with `m` entries equal to 2.
fn pattern<T: Scalar>(m: usize, h1: T, h2: T) -> T {
    let v = if m.is_multiple_of(2) { h1 } else { h2 };
    if (m / 2).is_multiple_of(2) {
        v
    } else {
        -v
    }
}

impl<T: Scalar> HarmonicComponent<T> {
    pub fn new(k: i32, coords: &[T]) -> Result<Self> {
        if !(-1..=MAX_K).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "harmonic order {k} outside -1..={MAX_K}"
            )));
        }
        let dim = Self::dim_of(k);
        if coords.len() != dim {
            return Err(Error::InvalidArity(format!(
                "K^{k} has {dim} coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite_value()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        let mut c = [T::zero(); 2];
        c[..dim].copy_from_slice(coords);
        Ok(Self { k, coords: c })
    }

    pub fn zero(k: i32) -> Self {
        assert!((-1..=MAX_K).contains(&k), "harmonic order {k}");
        Self {
            k,
            coords: [T::zero(); 2],
        }
    }

    /// Element of `K⁰` (`k = 0`) or `K⁻¹` (`k = -1`).
    pub fn scalar(k: i32, value: T) -> Self {
        assert!(k == 0 || k == -1, "scalar component needs k in {{0, -1}}");
        Self {
            k,
            coords: [value, T::zero()],
        }
    }

    /// Element of `K^k`, `k ≥ 1`.
    pub fn pair(k: i32, h1: T, h2: T) -> Self {
        assert!(
            (1..=MAX_K).contains(&k),
            "pair component needs 1 <= k <= {MAX_K}"
        );
        Self {
            k,
            coords: [h1, h2],
        }
    }

    pub fn dim_of(k: i32) -> usize {
        if k > 0 {
            2
        } else {
            1
        }
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        Self::dim_of(self.k)
    }

    pub fn coords(&self) -> &[T] {
        &self.coords[..self.dim()]
    }

    /// First coordinate; the value itself for `k ∈ {0, −1}`.
    pub fn value(&self) -> T {
        self.coords[0]
    }

    /// Order of the carrier tensor: `k` for `k ≥ 1`, else 0.
    pub fn tensor_order(&self) -> usize {
        self.k.max(0) as usize
    }

    pub fn coords_norm_sq(&self) -> T {
        self.coords().iter().fold(T::zero(), |a, &c| a + c * c)
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            k: self.k,
            coords: [self.coords[0] * s, self.coords[1] * s],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "adding K^{} and K^{}", self.k, other.k);
        Self {
            k: self.k,
            coords: [
                self.coords[0] + other.coords[0],
                self.coords[1] + other.coords[1],
            ],
        }
    }

    /// Sets the second coordinate to zero.
    pub fn first_only(&self) -> Self {
        Self {
            k: self.k,
            coords: [self.coords[0], T::zero()],
        }
    }

    /// The unique totally symmetric traceless tensor with these coordinates.
    pub fn to_tensor(&self) -> Tensor<T> {
        if self.k <= 0 {
            return Tensor::scalar(self.coords[0]);
        }
        let (h1, h2) = (self.coords[0], self.coords[1]);
        Tensor::from_fn(self.k as usize, |x| pattern(x.iter().sum(), h1, h2))
    }

    /// Coordinates of the orthogonal projection of `t` onto `K^k`.
    ///
    /// For `k ∈ {0, −1}` the tensor must have order 0.
    pub fn project(t: &Tensor<T>, k: i32) -> Result<Self> {
        if !(-1..=MAX_K).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "harmonic order {k} outside -1..={MAX_K}"
            )));
        }
        let order = k.max(0) as usize;
        if t.order() != order {
            return Err(Error::InvalidArity(format!(
                "K^{k} is carried by order {order}, got order {}",
                t.order()
            )));
        }
        if k <= 0 {
            return Ok(Self::scalar(k, t.value()));
        }
        let mut h = [T::zero(); 2];
        for (flat, &v) in t.as_slice().iter().enumerate() {
            let m = flat.count_ones() as usize;
            let w = pattern(m, T::one(), T::one());
            h[m % 2] = h[m % 2] + w * v;
        }
        let norm = T::from_u64(1 << (k - 1)).expect("small power of two");
        Ok(Self::pair(k, h[0] / norm, h[1] / norm))
    }

    /// Reads `t` as an element of `K^k`, rejecting tensors that are not
    /// totally symmetric and traceless within `tol` (relative).
    pub fn from_tensor(t: &Tensor<T>, k: i32, tol: f64) -> Result<Self> {
        Self::from_tensor_scaled(t, k, tol, t.norm_sq())
    }

    /// As [`from_tensor`](Self::from_tensor) with the residual measured against `scale_sq`.
    pub(crate) fn from_tensor_scaled(t: &Tensor<T>, k: i32, tol: f64, scale_sq: T) -> Result<Self> {
        let h = Self::project(t, k)?;
        let residual = (t - &h.to_tensor()).norm_sq();
        if !within(residual, scale_sq, tol) {
            let s = scale_sq.to_f64_lossy();
            let r = residual.to_f64_lossy();
            return Err(Error::NotHarmonic {
                k,
                residual: if s > 0.0 { (r / s).sqrt() } else { r.sqrt() },
                tol,
            });
        }
        Ok(h)
    }
}

impl<T: Real> HarmonicComponent<T> {
    /// Action `ρ_k(g)` on the coordinates.
    pub fn rho_rotate(&self, g: &GroupElement<T>) -> Self {
        match self.k {
            0 => *self,
            -1 => self.scale(g.det()),
            k => {
                let [mut h1, mut h2] = self.coords;
                if g.is_reflection() {
                    h2 = -h2;
                }
                let (s, c) = (T::from_i32(k).unwrap() * g.angle()).sin_cos();
                let r1 = c * h1 - s * h2;
                h2 = s * h1 + c * h2;
                h1 = r1;
                Self::pair(k, h1, h2)
            }
        }
    }
}

fn check_samples(order: usize, n: usize) -> Result<()> {
    if n < 4 * order + 4 {
        return Err(Error::InvalidArgument(format!(
            "{n} samples are too few for order {order}; need at least {}",
            4 * order + 4
        )));
    }
    Ok(())
}

fn sample_angle<T: Real>(j: usize, n: usize) -> T {
    T::from_f64(2.0 * std::f64::consts::PI * j as f64 / n as f64).unwrap()
}

/// Quadrature estimate of the order-`k` Fourier content of `θ ↦ (R(θ) ⋆ t)_{1…1}`.
///
/// For a harmonic `t` of order `k` this returns its coordinates. `k = 0`
/// returns the angular mean. Independent of the closed-form projectors.
pub fn fourier_extract<T: Real>(t: &Tensor<T>, k: i32, n: usize) -> Result<HarmonicComponent<T>> {
    check_samples(t.order(), n)?;
    if !(0..=MAX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "fourier_extract supports 0 <= k <= {MAX_K}, got {k}"
        )));
    }
    let (mut a, mut b, mut mean) = (T::zero(), T::zero(), T::zero());
    let kk = T::from_i32(k).unwrap();
    for j in 0..n {
        let theta: T = sample_angle(j, n);
        let f = rayleigh(&GroupElement::rotation(theta), t).as_slice()[0];
        let (s, c) = (kk * theta).sin_cos();
        a = a + f * c;
        b = b + f * s;
        mean = mean + f;
    }
    let nn = T::from_usize(n).unwrap();
    if k == 0 {
        return Ok(HarmonicComponent::scalar(0, mean / nn));
    }
    let two = T::one() + T::one();
    Ok(HarmonicComponent::pair(k, two * a / nn, -two * b / nn))
}

/// Rotation-averaged projection of `t` onto its `ρ_k`-isotypic part.
///
/// `k ≥ 1` keeps the Fourier modes `±k`; `k = 0` the O(2)-invariant part;
/// `k = −1` the SO(2)-invariant part that changes sign under reflections.
pub fn isotypic_part<T: Real>(t: &Tensor<T>, k: i32, n: usize) -> Result<Tensor<T>> {
    check_samples(t.order(), n)?;
    if !(-1..=MAX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!("harmonic order {k}")));
    }
    let kk = T::from_i32(k.max(0)).unwrap();
    let nn = T::from_usize(n).unwrap();
    let two = T::one() + T::one();
    let mut acc = Tensor::zeros(t.order());
    for j in 0..n {
        let theta: T = sample_angle(j, n);
        let w = if k >= 1 {
            two * (kk * theta).cos() / nn
        } else {
            T::one() / nn
        };
        acc = acc.add_scaled(w, &rayleigh(&GroupElement::rotation(theta), t));
    }
    if k >= 1 {
        return Ok(acc);
    }
    let mirrored = rayleigh(&GroupElement::mirror_e2(), &acc);
    let sign = if k == 0 { T::one() } else { -T::one() };
    Ok(acc.add_scaled(sign, &mirrored).scale(T::one() / two))
}

/// Splits `t ∈ Kⁿ ⊗ˢ Kⁿ` as `H + (α/2) P` with `α = t ⋯ P` and `H ∈ K²ⁿ`.
///
/// `p` must be the identity on `Kⁿ` (an order-`2n` projector).
pub fn split_self_map<T: Scalar>(
    t: &Tensor<T>,
    p: &Tensor<T>,
    n: usize,
    tol: f64,
) -> Result<(HarmonicComponent<T>, T)> {
    if t.order() != 2 * n || p.order() != 2 * n {
        return Err(Error::InvalidArity(format!(
            "split_self_map needs order {} inputs, got {} and {}",
            2 * n,
            t.order(),
            p.order()
        )));
    }
    let scale = t.norm_sq();
    let sandwiched = p.contract(t, n)?.contract(p, n)?;
    let major = t.transpose_block(n, n)?;
    for (name, other) in [("P·T·P = T", &sandwiched), ("major symmetry", &major)] {
        let r = (t - other).norm_sq();
        if !within(r, scale, tol) {
            return Err(Error::Symmetry {
                pattern: format!("K^{n} ⊗ˢ K^{n}: {name}"),
                residual: (r.to_f64_lossy() / scale.to_f64_lossy()).sqrt(),
                tol,
            });
        }
    }
    let alpha = t.dot(p);
    let rest = t.add_scaled(-alpha / T::frac(2, 1), p);
    let h = HarmonicComponent::from_tensor_scaled(&rest, 2 * n as i32, tol, scale)?;
    Ok((h, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Permutation;
    use num_rational::Ratio;
    use std::f64::consts::PI;

    type Q = Ratio<i64>;

    #[test]
    fn low_order_expansions() {
        let d = HarmonicComponent::pair(2, 1.0, 0.0).to_tensor();
        assert_eq!(d.as_slice(), &[1.0, 0.0, 0.0, -1.0]);
        let d = HarmonicComponent::pair(2, 0.0, 1.0).to_tensor();
        assert_eq!(d.as_slice(), &[0.0, 1.0, 1.0, 0.0]);
        let h = HarmonicComponent::pair(3, 1.0, 0.0).to_tensor();
        assert_eq!(h.get(&[0, 0, 0]), 1.0);
        assert_eq!(h.get(&[0, 1, 1]), -1.0);
        assert_eq!(h.get(&[0, 0, 1]), 0.0);
        assert_eq!(h.get(&[1, 1, 1]), 0.0);
    }

    #[test]
    fn expansions_are_symmetric_and_traceless() {
        for k in 1..=6 {
            let t = HarmonicComponent::pair(k, Q::new(3, 2), Q::new(-5, 7)).to_tensor();
            for p in Permutation::all(k as usize) {
                assert_eq!(t.permute(&p).unwrap(), t);
            }
            if k >= 2 {
                assert!(t.trace_pair(1, 2).unwrap().is_zero());
            }
            let back = HarmonicComponent::from_tensor(&t, k, 0.0).unwrap();
            assert_eq!(back.coords(), &[Q::new(3, 2), Q::new(-5, 7)]);
        }
    }

    #[test]
    fn non_harmonic_is_rejected() {
        let id = Tensor::matrix([[1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(
            HarmonicComponent::from_tensor(&id, 2, 1e-10),
            Err(Error::NotHarmonic { .. })
        ));
        let z = HarmonicComponent::from_tensor(&Tensor::<f64>::zeros(4), 4, 1e-10).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn rotation_by_k_theta() {
        let h = HarmonicComponent::pair(4, 0.3, -1.2);
        let r = h.rho_rotate(&GroupElement::rotation(PI / 4.0));
        assert!((r.coords()[0] + 0.3).abs() < 1e-14);
        assert!((r.coords()[1] - 1.2).abs() < 1e-14);
        let b = HarmonicComponent::scalar(-1, 2.5);
        assert_eq!(b.rho_rotate(&GroupElement::mirror_e2()).value(), -2.5);
        assert_eq!(b.rho_rotate(&GroupElement::rotation(1.0)).value(), 2.5);
        let a = HarmonicComponent::scalar(0, 2.5);
        assert_eq!(a.rho_rotate(&GroupElement::mirror_e2()).value(), 2.5);
    }

    #[test]
    fn fourier_on_pure_modes() {
        let h = HarmonicComponent::pair(3, 0.8_f64, -0.4);
        let t = h.to_tensor();
        let e = fourier_extract(&t, 3, 64).unwrap();
        assert!((e.coords()[0] - 0.8).abs() < 1e-12 && (e.coords()[1] + 0.4).abs() < 1e-12);
        let other = fourier_extract(&t, 1, 64).unwrap();
        assert!(other.coords_norm_sq() < 1e-24);
        let id = Tensor::matrix([[1.0, 0.0], [0.0, 1.0]]);
        assert!(fourier_extract(&id, 2, 64).unwrap().coords_norm_sq() < 1e-24);
        assert!(fourier_extract(&t, 3, 8).is_err());
    }

    #[test]
    fn isotypic_split_of_a_matrix() {
        let t = Tensor::matrix([[1.0, 2.0], [-0.5, 3.0]]);
        let k0 = isotypic_part(&t, 0, 32).unwrap();
        let km1 = isotypic_part(&t, -1, 32).unwrap();
        let k2 = isotypic_part(&t, 2, 32).unwrap();
        assert!(k0.approx_eq(&Tensor::matrix([[2.0, 0.0], [0.0, 2.0]]), 1e-13));
        assert!(km1.approx_eq(&Tensor::matrix([[0.0, 1.25], [-1.25, 0.0]]), 1e-13));
        assert!((&(&k0 + &km1) + &k2).approx_eq(&t, 1e-13));
    }
}
