//! Harmonic decompositions of the state spaces `T_(ij)` and `T_(ij)k` / `T_i(jk)`.

use crate::ela::{order_entries, HarmonicBundle};
use crate::embeddings::{embedding_unchecked, projector, Embedding, EmbeddingTag, ProjectorTag};
use crate::error::Result;
use crate::harmonic::HarmonicComponent;
use crate::pattern::IndexSymmetry;
use crate::scalar::Scalar;
use crate::tensor::{Permutation, Tensor};

/// Which pair of `K¹` factors complements `K³` inside the third-order state space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Basis {
    /// Stretch-gradient and rotation-gradient vectors.
    #[default]
    StretchRotation,
    /// Deviatoric-gradient and hydrostatic-gradient vectors.
    DeviatoricHydrostatic,
}

/// Which index pair of the third-order state tensor is symmetric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Formulation {
    /// `T_(ij)k`.
    #[default]
    TypeII,
    /// `T_i(jk)`.
    TypeI,
}

impl Basis {
    /// Label suffixes of the two vector factors.
    pub fn suffixes(&self) -> [&'static str; 2] {
        match self {
            Basis::StretchRotation => ["s", "r"],
            Basis::DeviatoricHydrostatic => ["d", "h"],
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Basis::StretchRotation => "sr",
            Basis::DeviatoricHydrostatic => "dh",
        }
    }
}

impl Formulation {
    pub fn code(&self) -> &'static str {
        match self {
            Formulation::TypeII => "typeII",
            Formulation::TypeI => "typeI",
        }
    }

    /// Slot permutation taking a type II tensor to its type I counterpart:
    /// `T'_{ijk} = T_{jki}`.
    pub fn type_one_map() -> Permutation {
        Permutation::new(vec![2, 3, 1]).expect("cyclic shift")
    }
}

/// Embeddings and harmonic projector of one decomposition of the third-order state space.
#[derive(Clone, Debug, PartialEq)]
pub struct T3Family<T> {
    basis: Basis,
    formulation: Formulation,
    a: Embedding<T>,
    b: Embedding<T>,
    p33: Tensor<T>,
}

impl<T: Scalar> T3Family<T> {
    pub fn new(basis: Basis, formulation: Formulation) -> Self {
        use Basis::*;
        use Formulation::*;
        let (a, b, p) = match (basis, formulation) {
            (StretchRotation, TypeII) => (
                EmbeddingTag::PhiS31,
                EmbeddingTag::PhiR31,
                ProjectorTag::P33,
            ),
            (StretchRotation, TypeI) => (
                EmbeddingTag::PhiS31,
                EmbeddingTag::PhiSharpR31,
                ProjectorTag::P33Sharp,
            ),
            (DeviatoricHydrostatic, TypeII) => (
                EmbeddingTag::PhiD31,
                EmbeddingTag::PhiH31,
                ProjectorTag::P33Dh,
            ),
            (DeviatoricHydrostatic, TypeI) => (
                EmbeddingTag::PhiSharpD31,
                EmbeddingTag::PhiSharpH31,
                ProjectorTag::P33DhSharp,
            ),
        };
        Self {
            basis,
            formulation,
            a: embedding_unchecked(a),
            b: embedding_unchecked(b),
            p33: projector(p),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation
    }

    /// The two `K¹` embeddings, in label order.
    pub fn vectors(&self) -> [&Embedding<T>; 2] {
        [&self.a, &self.b]
    }

    pub fn p33(&self) -> &Tensor<T> {
        &self.p33
    }

    pub fn pattern(&self) -> IndexSymmetry {
        IndexSymmetry::t3(self.formulation)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct T2Harmonics<T> {
    pub d: HarmonicComponent<T>,
    pub alpha: HarmonicComponent<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct T3Harmonics<T> {
    pub h: HarmonicComponent<T>,
    pub v_a: HarmonicComponent<T>,
    pub v_b: HarmonicComponent<T>,
    pub basis: Basis,
    pub formulation: Formulation,
}

impl<T: Scalar> T2Harmonics<T> {
    pub fn labels() -> Vec<(String, i32)> {
        vec![("d".into(), 2), ("alpha".into(), 0)]
    }

    pub fn from_entries(entries: &[(String, HarmonicComponent<T>)]) -> Result<Self> {
        let c = order_entries(&Self::labels(), entries)?;
        Ok(Self {
            d: c[0],
            alpha: c[1],
        })
    }
}

impl<T: Scalar> HarmonicBundle<T> for T2Harmonics<T> {
    fn entries(&self) -> Vec<(String, HarmonicComponent<T>)> {
        vec![("d".into(), self.d), ("alpha".into(), self.alpha)]
    }

    fn with_components(&self, c: &[HarmonicComponent<T>]) -> Self {
        Self {
            d: c[0],
            alpha: c[1],
        }
    }
}

impl<T: Scalar> T3Harmonics<T> {
    /// `H3` and one `K¹` label per vector, e.g. `vs`, `vr`.
    pub fn labels(basis: Basis) -> Vec<(String, i32)> {
        let [a, b] = basis.suffixes();
        vec![("H3".into(), 3), (format!("v{a}"), 1), (format!("v{b}"), 1)]
    }

    pub fn from_entries(
        basis: Basis,
        formulation: Formulation,
        entries: &[(String, HarmonicComponent<T>)],
    ) -> Result<Self> {
        let c = order_entries(&Self::labels(basis), entries)?;
        Ok(Self {
            h: c[0],
            v_a: c[1],
            v_b: c[2],
            basis,
            formulation,
        })
    }
}

impl<T: Scalar> HarmonicBundle<T> for T3Harmonics<T> {
    fn entries(&self) -> Vec<(String, HarmonicComponent<T>)> {
        Self::labels(self.basis)
            .into_iter()
            .map(|(l, _)| l)
            .zip([self.h, self.v_a, self.v_b])
            .collect()
    }

    fn with_components(&self, c: &[HarmonicComponent<T>]) -> Self {
        Self {
            h: c[0],
            v_a: c[1],
            v_b: c[2],
            ..self.clone()
        }
    }
}

/// `t = d + Φ²⁰ α` with `α = tr t`.
pub fn decompose_t2<T: Scalar>(t: &Tensor<T>, tol: f64) -> Result<T2Harmonics<T>> {
    let t = IndexSymmetry::t2().validate(t, tol)?;
    let phi = embedding_unchecked::<T>(EmbeddingTag::Phi2_0);
    let alpha = phi.extract(&t);
    let d = &t - &phi.embed(&alpha);
    Ok(T2Harmonics {
        d: HarmonicComponent::project(&d, 2)?,
        alpha,
    })
}

pub fn reconstruct_t2<T: Scalar>(h: &T2Harmonics<T>) -> Tensor<T> {
    let phi = embedding_unchecked::<T>(EmbeddingTag::Phi2_0);
    &h.d.to_tensor() + &phi.embed(&h.alpha)
}

/// Totally symmetric part `S` and cyclic-free remainder `R = T − S` of `T ∈ T_(ij)k`.
pub fn split_stretch_rotation<T: Scalar>(
    t: &Tensor<T>,
    tol: f64,
) -> Result<(Tensor<T>, Tensor<T>)> {
    let t = IndexSymmetry::t3(Formulation::TypeII).validate(t, tol)?;
    let third = T::frac(1, 3);
    let s = Tensor::from_fn(3, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        (t.get(&[i, j, k]) + t.get(&[i, k, j]) + t.get(&[j, k, i])) * third
    });
    let r = &t - &s;
    Ok((s, r))
}

pub fn decompose_t3<T: Scalar>(
    t: &Tensor<T>,
    basis: Basis,
    formulation: Formulation,
    tol: f64,
) -> Result<T3Harmonics<T>> {
    let family = T3Family::new(basis, formulation);
    let t = family.pattern().validate(t, tol)?;
    Ok(decompose_t3_with(&family, &t))
}

pub fn decompose_t3_with<T: Scalar>(family: &T3Family<T>, t: &Tensor<T>) -> T3Harmonics<T> {
    let [a, b] = family.vectors();
    let v_a = a.extract(t);
    let v_b = b.extract(t);
    let rest = &(t - &a.embed(&v_a)) - &b.embed(&v_b);
    T3Harmonics {
        h: HarmonicComponent::project(&rest, 3).expect("order 3"),
        v_a,
        v_b,
        basis: family.basis(),
        formulation: family.formulation(),
    }
}

pub fn reconstruct_t3<T: Scalar>(h: &T3Harmonics<T>) -> Tensor<T> {
    let family = T3Family::<T>::new(h.basis, h.formulation);
    let [a, b] = family.vectors();
    &(&h.h.to_tensor() + &a.embed(&h.v_a)) + &b.embed(&h.v_b)
}
