//! Harmonic embeddings `Φ^{n,k}`, their scales `γ` and the induced projectors.
//!
//! An embedding is an isotropic tensor of order `n + k` mapping `K^k` into an
//! order-`n` tensor space, with `‖Φ·v‖² = γ ‖v‖²`. Its left inverse is
//! `Π = Φᵀ / γ` and `P = Φ·Π` projects onto the image.

use crate::error::{Error, Result};
use crate::group::{rayleigh, GroupElement};
use crate::harmonic::HarmonicComponent;
use crate::iso::{comb4, comb6, identity_on, kronecker, levi_civita, StateSpace};
use crate::scalar::{Real, Scalar};
use crate::tensor::{OuterMode, Tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddingTag {
    /// `½ δ`, scalars into symmetric second-order tensors.
    Phi2_0,
    /// Stretch-gradient vector into `T_(ij)k`.
    PhiS31,
    /// Rotation-gradient vector into `T_(ij)k`.
    PhiR31,
    /// Rotation-gradient vector into `T_i(jk)`.
    PhiSharpR31,
    /// Deviatoric-gradient vector into `T_(ij)k`.
    PhiD31,
    /// Hydrostatic-gradient vector into `T_(ij)k`.
    PhiH31,
    /// Deviatoric-gradient vector into `T_i(jk)`.
    PhiSharpD31,
    /// Hydrostatic-gradient vector into `T_i(jk)`.
    PhiSharpH31,
    /// `K¹` into `K² ⊗ K¹`.
    Phi31,
    /// `K²` into `K³ ⊗ K¹`.
    Phi42,
    /// `K¹` into `K² ⊗ K³`.
    Phi51,
    /// `½ ε`, pseudo-scalars into second-order tensors.
    Phi2Neg1,
}

impl EmbeddingTag {
    pub const ALL: [EmbeddingTag; 12] = [
        EmbeddingTag::Phi2_0,
        EmbeddingTag::PhiS31,
        EmbeddingTag::PhiR31,
        EmbeddingTag::PhiSharpR31,
        EmbeddingTag::PhiD31,
        EmbeddingTag::PhiH31,
        EmbeddingTag::PhiSharpD31,
        EmbeddingTag::PhiSharpH31,
        EmbeddingTag::Phi31,
        EmbeddingTag::Phi42,
        EmbeddingTag::Phi51,
        EmbeddingTag::Phi2Neg1,
    ];

    /// `(n, k)`: target order and harmonic order.
    pub fn degrees(&self) -> (usize, i32) {
        match self {
            EmbeddingTag::Phi2_0 => (2, 0),
            EmbeddingTag::Phi2Neg1 => (2, -1),
            EmbeddingTag::Phi42 => (4, 2),
            EmbeddingTag::Phi51 => (5, 1),
            _ => (3, 1),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EmbeddingTag::Phi2_0 => "Phi_2_0",
            EmbeddingTag::PhiS31 => "Phi_s31",
            EmbeddingTag::PhiR31 => "Phi_r31",
            EmbeddingTag::PhiSharpR31 => "Phi_sharp_r31",
            EmbeddingTag::PhiD31 => "Phi_d31",
            EmbeddingTag::PhiH31 => "Phi_h31",
            EmbeddingTag::PhiSharpD31 => "Phi_sharp_d31",
            EmbeddingTag::PhiSharpH31 => "Phi_sharp_h31",
            EmbeddingTag::Phi31 => "Phi_31",
            EmbeddingTag::Phi42 => "Phi_42",
            EmbeddingTag::Phi51 => "Phi_51",
            EmbeddingTag::Phi2Neg1 => "Phi_2_neg1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectorTag {
    P22,
    P20,
    P2Neg1,
    P33,
    P31s,
    P31r,
    P33Sharp,
    P31rSharp,
    P31d,
    P31h,
    P33Dh,
    P31dSharp,
    P31hSharp,
    P33DhSharp,
}

impl ProjectorTag {
    pub const ALL: [ProjectorTag; 14] = [
        ProjectorTag::P22,
        ProjectorTag::P20,
        ProjectorTag::P2Neg1,
        ProjectorTag::P33,
        ProjectorTag::P31s,
        ProjectorTag::P31r,
        ProjectorTag::P33Sharp,
        ProjectorTag::P31rSharp,
        ProjectorTag::P31d,
        ProjectorTag::P31h,
        ProjectorTag::P33Dh,
        ProjectorTag::P31dSharp,
        ProjectorTag::P31hSharp,
        ProjectorTag::P33DhSharp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProjectorTag::P22 => "P22",
            ProjectorTag::P20 => "P20",
            ProjectorTag::P2Neg1 => "P2neg1",
            ProjectorTag::P33 => "P33",
            ProjectorTag::P31s => "P31s",
            ProjectorTag::P31r => "P31r",
            ProjectorTag::P33Sharp => "P33_sharp",
            ProjectorTag::P31rSharp => "P31r_sharp",
            ProjectorTag::P31d => "P31d",
            ProjectorTag::P31h => "P31h",
            ProjectorTag::P33Dh => "P33_dh",
            ProjectorTag::P31dSharp => "P31d_sharp",
            ProjectorTag::P31hSharp => "P31h_sharp",
            ProjectorTag::P33DhSharp => "P33_dh_sharp",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Embedding<T> {
    tag: EmbeddingTag,
    phi: Tensor<T>,
    phi_t: Tensor<T>,
    n: usize,
    k: i32,
    gamma: T,
}

/// `½(i₂ + i₃ − i₁)`, the deviatoric projector on symmetric second-order tensors.
fn deviatoric<T: Scalar>() -> Tensor<T> {
    comb4(&[(2, 1, 2), (3, 1, 2), (1, -1, 2)])
}

fn phi_tensor<T: Scalar>(tag: EmbeddingTag) -> Tensor<T> {
    match tag {
        EmbeddingTag::Phi2_0 => kronecker::<T>().scale(T::frac(1, 2)),
        EmbeddingTag::Phi2Neg1 => levi_civita::<T>().scale(T::frac(1, 2)),
        EmbeddingTag::PhiS31 => comb4(&[(1, 1, 4), (2, 1, 4), (3, 1, 4)]),
        EmbeddingTag::PhiR31 => comb4(&[(1, 2, 3), (2, -1, 3), (3, -1, 3)]),
        EmbeddingTag::PhiSharpR31 => comb4(&[(3, 2, 3), (1, -1, 3), (2, -1, 3)]),
        EmbeddingTag::PhiD31 => comb4(&[(2, 1, 2), (3, 1, 2), (1, -1, 2)]),
        EmbeddingTag::PhiH31 => comb4(&[(1, 1, 2)]),
        EmbeddingTag::PhiSharpD31 => comb4(&[(1, 1, 2), (2, 1, 2), (3, -1, 2)]),
        EmbeddingTag::PhiSharpH31 => comb4(&[(3, 1, 2)]),
        EmbeddingTag::Phi31 => deviatoric(),
        EmbeddingTag::Phi42 => phi42(),
        EmbeddingTag::Phi51 => phi51(),
    }
}

/// `(Φ⁴²)_{ijklmn} = ½(δ_kl P_ijmn + δ_jl P_ikmn − δ_jk P_ilmn)` with `P` deviatoric.
fn phi42<T: Scalar>() -> Tensor<T> {
    let p = deviatoric::<T>();
    let d = |a: usize, b: usize| if a == b { T::one() } else { T::zero() };
    Tensor::from_fn(6, |x| {
        let (i, j, k, l, m, n) = (x[0], x[1], x[2], x[3], x[4], x[5]);
        (d(k, l) * p.get(&[i, j, m, n]) + d(j, l) * p.get(&[i, k, m, n])
            - d(j, k) * p.get(&[i, l, m, n]))
            * T::frac(1, 2)
    })
}

fn phi51<T: Scalar>() -> Tensor<T> {
    comb6(&[
        (1, 1, 4),
        (3, -2, 4),
        (5, 1, 4),
        (8, 1, 4),
        (11, -1, 4),
        (12, 2, 4),
        (13, 1, 4),
        (14, -1, 4),
        (15, -1, 4),
    ])
}

/// Index-by-index form of `Φ⁵¹·v`, used to cross-check the isotropic combination.
pub fn phi51_components<T: Scalar>(v: [T; 2]) -> Tensor<T> {
    let d = |a: usize, b: usize| if a == b { T::one() } else { T::zero() };
    let two = T::frac(2, 1);
    Tensor::from_fn(5, |x| {
        let (i, j, k, l, m) = (x[0], x[1], x[2], x[3], x[4]);
        let s = v[i] * (d(j, k) * d(l, m) - d(j, l) * d(k, m) - d(j, m) * d(k, l))
            - v[j] * d(i, m) * d(k, l)
            + v[k] * (-two * d(i, j) * d(l, m) + d(i, l) * d(j, m) + two * d(i, m) * d(j, l))
            + v[l] * d(i, k) * d(j, m)
            + v[m] * d(i, j) * d(k, l);
        s * T::frac(1, 4)
    })
}

fn basis_of<T: Scalar>(k: i32) -> Vec<HarmonicComponent<T>> {
    if k <= 0 {
        vec![HarmonicComponent::scalar(k, T::one())]
    } else {
        vec![
            HarmonicComponent::pair(k, T::one(), T::zero()),
            HarmonicComponent::pair(k, T::zero(), T::one()),
        ]
    }
}

impl<T: Scalar> Embedding<T> {
    /// Builds the embedding with `γ` from the trace of `Φᵀ ⋯ Φ` on `K^k`.
    fn build(tag: EmbeddingTag) -> Self {
        let (n, k) = tag.degrees();
        let phi = phi_tensor::<T>(tag);
        let korder = k.max(0) as usize;
        let phi_t = phi.transpose_block(n, korder).expect("embedding blocks");
        let basis = basis_of::<T>(k);
        let mut trace = T::zero();
        for (a, b) in basis.iter().enumerate() {
            let image = phi.contract(&b.to_tensor(), korder).expect("embed");
            let back = phi_t.contract(&image, n).expect("extract");
            let coords = HarmonicComponent::project(&back, k).expect("harmonic order");
            trace = trace + coords.coords()[a];
        }
        let gamma = trace / T::from_usize(basis.len()).unwrap();
        Self {
            tag,
            phi,
            phi_t,
            n,
            k,
            gamma,
        }
    }

    pub fn tag(&self) -> EmbeddingTag {
        self.tag
    }

    pub fn phi(&self) -> &Tensor<T> {
        &self.phi
    }

    /// `Φᵀ`, the block transpose with the `K^k` slots first.
    pub fn phi_transpose(&self) -> &Tensor<T> {
        &self.phi_t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    fn korder(&self) -> usize {
        self.k.max(0) as usize
    }

    /// `Π = Φᵀ / γ`.
    pub fn pi(&self) -> Tensor<T> {
        self.phi_t.scale(T::one() / self.gamma)
    }

    /// `Φ · v` for a harmonic component.
    pub fn embed(&self, v: &HarmonicComponent<T>) -> Tensor<T> {
        assert_eq!(v.k(), self.k, "{} embeds K^{}", self.tag.name(), self.k);
        self.embed_tensor(&v.to_tensor())
    }

    /// `Φ · x` where `x` carries `k` trailing-contracted slots.
    pub fn embed_tensor(&self, x: &Tensor<T>) -> Tensor<T> {
        self.phi
            .contract(x, self.korder())
            .expect("embedding arity")
    }

    /// `Π ⋯ t` as a tensor of order `k`.
    pub fn extract_tensor(&self, t: &Tensor<T>) -> Tensor<T> {
        self.phi_t
            .contract(t, self.n)
            .expect("extraction arity")
            .scale(T::one() / self.gamma)
    }

    /// `Π ⋯ t` read as an element of `K^k`.
    pub fn extract(&self, t: &Tensor<T>) -> HarmonicComponent<T> {
        HarmonicComponent::project(&self.extract_tensor(t), self.k).expect("harmonic order")
    }

    /// `P = Φ · Π`; fails when its order would exceed the supported maximum.
    pub fn projector(&self) -> Result<Tensor<T>> {
        Ok(self
            .phi
            .contract(&self.phi_t, self.korder())?
            .scale(T::one() / self.gamma))
    }

    /// `γ` as the ratio `‖Φ·v‖² / ‖v‖²` on a given nonzero input.
    pub fn gamma_ratio(&self, v: &HarmonicComponent<T>) -> T {
        let image = self.embed(v);
        image.norm_sq() / v.to_tensor().norm_sq()
    }
}

/// Seeded integer-valued harmonic samples, exact in every scalar type.
pub(crate) fn integer_samples<T: Scalar>(
    k: i32,
    count: usize,
    seed: u64,
) -> Vec<HarmonicComponent<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let a = T::from_i64(rng.gen_range(-9..=9)).unwrap();
            let b = T::from_i64(rng.gen_range(-9..=9)).unwrap();
            let h = if k <= 0 {
                HarmonicComponent::scalar(k, a)
            } else {
                HarmonicComponent::pair(k, a, b)
            };
            if !h.is_zero() {
                break h;
            }
        })
        .collect()
}

/// Builds an embedding and cross-checks the trace value of `γ` against the
/// norm ratio on five sample inputs.
pub fn embedding<T: Scalar>(tag: EmbeddingTag) -> Result<Embedding<T>> {
    let e = Embedding::build(tag);
    let tol = T::exactness_tol();
    for v in integer_samples::<T>(e.k, 5, 0x51) {
        let ratio = e.gamma_ratio(&v);
        let diff = (ratio - e.gamma).abs().to_f64_lossy();
        let scale = e.gamma.abs().to_f64_lossy();
        if diff > tol * scale {
            return Err(Error::Consistency(format!(
                "{}: trace gamma {} differs from norm-ratio gamma {}",
                tag.name(),
                e.gamma,
                ratio
            )));
        }
    }
    Ok(e)
}

pub(crate) fn embedding_unchecked<T: Scalar>(tag: EmbeddingTag) -> Embedding<T> {
    Embedding::build(tag)
}

fn scaled_projector<T: Scalar>(tag: EmbeddingTag) -> Tensor<T> {
    Embedding::<T>::build(tag)
        .projector()
        .expect("third-order projectors have order 6")
}

pub fn projector<T: Scalar>(tag: ProjectorTag) -> Tensor<T> {
    let complement = |space: StateSpace, a: EmbeddingTag, b: EmbeddingTag| {
        &(&identity_on::<T>(space) - &scaled_projector::<T>(a)) - &scaled_projector::<T>(b)
    };
    match tag {
        ProjectorTag::P20 => comb4(&[(1, 1, 2)]),
        ProjectorTag::P22 => &identity_on::<T>(StateSpace::T2Sym) - &comb4(&[(1, 1, 2)]),
        ProjectorTag::P2Neg1 => {
            let e = levi_civita::<T>();
            e.outer(&e, OuterMode::Plain)
                .expect("order 4")
                .scale(T::frac(1, 2))
        }
        ProjectorTag::P31s => scaled_projector(EmbeddingTag::PhiS31),
        ProjectorTag::P31r => scaled_projector(EmbeddingTag::PhiR31),
        ProjectorTag::P31rSharp => scaled_projector(EmbeddingTag::PhiSharpR31),
        ProjectorTag::P31d => scaled_projector(EmbeddingTag::PhiD31),
        ProjectorTag::P31h => scaled_projector(EmbeddingTag::PhiH31),
        ProjectorTag::P31dSharp => scaled_projector(EmbeddingTag::PhiSharpD31),
        ProjectorTag::P31hSharp => scaled_projector(EmbeddingTag::PhiSharpH31),
        ProjectorTag::P33 => complement(
            StateSpace::T3TypeII,
            EmbeddingTag::PhiS31,
            EmbeddingTag::PhiR31,
        ),
        ProjectorTag::P33Sharp => complement(
            StateSpace::T3TypeI,
            EmbeddingTag::PhiS31,
            EmbeddingTag::PhiSharpR31,
        ),
        ProjectorTag::P33Dh => complement(
            StateSpace::T3TypeII,
            EmbeddingTag::PhiD31,
            EmbeddingTag::PhiH31,
        ),
        ProjectorTag::P33DhSharp => complement(
            StateSpace::T3TypeI,
            EmbeddingTag::PhiSharpD31,
            EmbeddingTag::PhiSharpH31,
        ),
    }
}

/// Largest residuals of the defining identities of an embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingReport {
    pub tag: EmbeddingTag,
    /// `Π ⋯ (Φ · v) = v`.
    pub pi_phi: f64,
    /// `(Φ · Π) ⋯ w = w` on the image and idempotency of `Φ · Π`.
    pub phi_pi: f64,
    /// `‖Φ · v‖² = γ ‖v‖²`.
    pub norm_scaling: f64,
    /// `g ⋆ Φ = Φ` for sampled `g` (`det g · Φ` when `k = −1`).
    pub isotropy: f64,
}

impl EmbeddingReport {
    pub fn max_residual(&self) -> f64 {
        self.pi_phi
            .max(self.phi_pi)
            .max(self.norm_scaling)
            .max(self.isotropy)
    }
}

/// Evaluates the structural identities of `e` on `samples` seeded inputs.
pub fn verify_embedding<T: Real>(e: &Embedding<T>, samples: usize) -> EmbeddingReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE4B);
    let mut report = EmbeddingReport {
        tag: e.tag,
        pi_phi: 0.0,
        phi_pi: 0.0,
        norm_scaling: 0.0,
        isotropy: 0.0,
    };
    for _ in 0..samples {
        let a = T::from_f64(rng.gen_range(-1.0..1.0)).unwrap();
        let b = T::from_f64(rng.gen_range(-1.0..1.0)).unwrap();
        let v = if e.k <= 0 {
            HarmonicComponent::scalar(e.k, a)
        } else {
            HarmonicComponent::pair(e.k, a, b)
        };
        let vt = v.to_tensor();
        let w = e.embed(&v);
        report.pi_phi = report.pi_phi.max(e.extract_tensor(&w).rel_diff(&vt));

        let back = e.embed_tensor(&e.extract_tensor(&w));
        report.phi_pi = report.phi_pi.max(back.rel_diff(&w));
        if let Ok(p) = e.projector() {
            let pp = p.contract(&p, e.n).expect("projector square");
            report.phi_pi = report.phi_pi.max(pp.rel_diff(&p));
        }

        let ratio = w.norm_sq() / vt.norm_sq();
        let rel = ((ratio - e.gamma) / e.gamma).abs().to_f64_lossy();
        report.norm_scaling = report.norm_scaling.max(rel);

        let theta = T::from_f64(rng.gen_range(-3.2..3.2)).unwrap();
        let nx = T::from_f64(rng.gen_range(-1.0..1.0)).unwrap();
        let g = if rng.gen_bool(0.5) {
            GroupElement::rotation(theta)
        } else {
            GroupElement::reflection([nx, T::one()]).expect("nonzero normal")
        };
        // K⁻¹ carries det g, so ½ε is only invariant up to that sign.
        let expected = if e.k == -1 {
            e.phi.scale(g.det())
        } else {
            e.phi.clone()
        };
        report.isotropy = report
            .isotropy
            .max(rayleigh(&g, &e.phi).rel_diff(&expected));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    #[test]
    fn scales_are_exact() {
        let expect = [
            (EmbeddingTag::Phi2_0, Q::new(1, 2)),
            (EmbeddingTag::PhiS31, Q::new(3, 4)),
            (EmbeddingTag::PhiR31, Q::new(2, 3)),
            (EmbeddingTag::PhiSharpR31, Q::new(2, 3)),
            (EmbeddingTag::PhiD31, Q::new(1, 1)),
            (EmbeddingTag::PhiH31, Q::new(1, 2)),
            (EmbeddingTag::PhiSharpD31, Q::new(1, 1)),
            (EmbeddingTag::PhiSharpH31, Q::new(1, 2)),
            (EmbeddingTag::Phi31, Q::new(1, 1)),
            (EmbeddingTag::Phi42, Q::new(1, 1)),
            (EmbeddingTag::Phi51, Q::new(1, 1)),
            (EmbeddingTag::Phi2Neg1, Q::new(1, 2)),
        ];
        for (tag, gamma) in expect {
            assert_eq!(
                embedding::<Q>(tag).unwrap().gamma(),
                gamma,
                "{}",
                tag.name()
            );
        }
    }

    #[test]
    fn phi51_forms_agree() {
        let e = embedding::<Q>(EmbeddingTag::Phi51).unwrap();
        for (a, b) in [(1, 0), (0, 1), (3, -7)] {
            let v = [Q::from_integer(a), Q::from_integer(b)];
            assert_eq!(e.embed_tensor(&Tensor::vector(v)), phi51_components(v));
        }
    }

    #[test]
    fn phi51_inverse_is_plain_transpose() {
        let e = embedding::<Q>(EmbeddingTag::Phi51).unwrap();
        assert_eq!(e.pi(), *e.phi_transpose());
    }

    #[test]
    fn corrupted_embedding_is_detected() {
        let mut e = embedding::<f64>(EmbeddingTag::PhiS31).unwrap();
        let mut data = e.phi.as_slice().to_vec();
        data[3] += 1e-3;
        e.phi = Tensor::new(4, data).unwrap();
        let report = verify_embedding(&e, 5);
        assert!(report.max_residual() >= 1e-4);
    }

    #[test]
    fn shipped_embeddings_pass() {
        for tag in EmbeddingTag::ALL {
            let e = embedding::<f64>(tag).unwrap();
            let r = verify_embedding(&e, 5);
            assert!(r.max_residual() < 1e-12, "{r:?}");
        }
    }
}
