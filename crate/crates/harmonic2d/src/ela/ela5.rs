use super::{order_entries, Ela5Tensor, HarmonicBundle};
use crate::embeddings::{embedding_unchecked, projector, Embedding, EmbeddingTag, ProjectorTag};
use crate::error::Result;
use crate::harmonic::HarmonicComponent;
use crate::scalar::Scalar;
use crate::state::{Basis, Formulation, T3Family};
use crate::tensor::{sum, OuterMode, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub struct Ela5Blocks<T> {
    pub basis: Basis,
    pub formulation: Formulation,
    /// `P²² : M ⋮ P³³`.
    pub m23: Tensor<T>,
    /// `P²² : M ⋮ Φ_a`.
    pub m21a: Tensor<T>,
    /// `P²² : M ⋮ Φ_b`.
    pub m21b: Tensor<T>,
    /// `Φ⁰² : M ⋮ P³³`.
    pub m03: Tensor<T>,
    /// `Φ⁰² : M ⋮ Φ_a`.
    pub mu01a: Tensor<T>,
    /// `Φ⁰² : M ⋮ Φ_b`.
    pub mu01b: Tensor<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ela5Harmonics<T> {
    pub basis: Basis,
    pub formulation: Formulation,
    pub h23: HarmonicComponent<T>,
    pub h21a: HarmonicComponent<T>,
    pub h21b: HarmonicComponent<T>,
    pub h03: HarmonicComponent<T>,
    pub v23: HarmonicComponent<T>,
    pub v21a: HarmonicComponent<T>,
    pub v21b: HarmonicComponent<T>,
    pub v01a: HarmonicComponent<T>,
    pub v01b: HarmonicComponent<T>,
}

impl<T: Scalar> Ela5Harmonics<T> {
    pub fn labels(basis: Basis) -> Vec<(String, i32)> {
        let [a, b] = basis.suffixes();
        vec![
            ("H23".into(), 5),
            (format!("H21{a}"), 3),
            (format!("H21{b}"), 3),
            ("H03".into(), 3),
            ("v23".into(), 1),
            (format!("v21{a}"), 1),
            (format!("v21{b}"), 1),
            (format!("v01{a}"), 1),
            (format!("v01{b}"), 1),
        ]
    }

    pub fn from_entries(
        basis: Basis,
        formulation: Formulation,
        entries: &[(String, HarmonicComponent<T>)],
    ) -> Result<Self> {
        let c = order_entries(&Self::labels(basis), entries)?;
        Ok(Self::assemble(basis, formulation, &c))
    }

    fn assemble(basis: Basis, formulation: Formulation, c: &[HarmonicComponent<T>]) -> Self {
        Self {
            basis,
            formulation,
            h23: c[0],
            h21a: c[1],
            h21b: c[2],
            h03: c[3],
            v23: c[4],
            v21a: c[5],
            v21b: c[6],
            v01a: c[7],
            v01b: c[8],
        }
    }
}

impl<T: Scalar> HarmonicBundle<T> for Ela5Harmonics<T> {
    fn entries(&self) -> Vec<(String, HarmonicComponent<T>)> {
        Self::labels(self.basis)
            .into_iter()
            .map(|(l, _)| l)
            .zip([
                self.h23, self.h21a, self.h21b, self.h03, self.v23, self.v21a, self.v21b,
                self.v01a, self.v01b,
            ])
            .collect()
    }

    fn with_components(&self, c: &[HarmonicComponent<T>]) -> Self {
        Self::assemble(self.basis, self.formulation, c)
    }
}

pub fn ibd_ela5<T: Scalar>(m: &Ela5Tensor<T>, basis: Basis) -> Ela5Blocks<T> {
    let family = T3Family::<T>::new(basis, m.formulation());
    let p22 = projector::<T>(ProjectorTag::P22);
    let phi20 = embedding_unchecked::<T>(EmbeddingTag::Phi2_0);
    let dev = p22.contract(m.tensor(), 2).expect("order 5");
    let sph = phi20
        .phi_transpose()
        .contract(m.tensor(), 2)
        .expect("order 3");
    let [ea, eb] = family.vectors();
    Ela5Blocks {
        basis,
        formulation: m.formulation(),
        m23: dev.contract(family.p33(), 3).expect("order 5"),
        m21a: dev.contract(ea.phi(), 3).expect("order 3"),
        m21b: dev.contract(eb.phi(), 3).expect("order 3"),
        m03: sph.contract(family.p33(), 3).expect("order 3"),
        mu01a: sph.contract(ea.phi(), 3).expect("order 1"),
        mu01b: sph.contract(eb.phi(), 3).expect("order 1"),
    }
}

/// `x · Φᵀ` for a tensor whose last slot is a `K¹` index.
fn close<T: Scalar>(x: &Tensor<T>, e: &Embedding<T>) -> Tensor<T> {
    x.contract(e.phi_transpose(), 1)
        .expect("order 5")
        .scale(T::one() / e.gamma())
}

pub fn reconstruct_ibd_ela5<T: Scalar>(b: &Ela5Blocks<T>) -> Tensor<T> {
    let family = T3Family::<T>::new(b.basis, b.formulation);
    let [ea, eb] = family.vectors();
    let phi20 = embedding_unchecked::<T>(EmbeddingTag::Phi2_0);
    let g20 = T::one() / phi20.gamma();
    let with_phi20 = |x: &Tensor<T>| phi20.phi().outer(x, OuterMode::Plain).expect("order");
    sum(
        5,
        [
            b.m23.clone(),
            close(&b.m21a, ea),
            close(&b.m21b, eb),
            with_phi20(&b.m03).scale(g20),
            close(&with_phi20(&b.mu01a), ea).scale(g20),
            close(&with_phi20(&b.mu01b), eb).scale(g20),
        ],
    )
}

pub fn cghd_ela5<T: Scalar>(m: &Ela5Tensor<T>, basis: Basis) -> Ela5Harmonics<T> {
    let b = ibd_ela5(m, basis);
    let phi31 = embedding_unchecked::<T>(EmbeddingTag::Phi31);
    let phi51 = embedding_unchecked::<T>(EmbeddingTag::Phi51);
    let vec1 = |t: &Tensor<T>| HarmonicComponent::project(t, 1).expect("order 1");
    let v23 = vec1(
        &b.m23
            .trace_pair(1, 3)
            .and_then(|t| t.trace_pair(1, 2))
            .expect("order 5"),
    );
    let h23 = HarmonicComponent::project(&(&b.m23 - &phi51.embed(&v23)), 5).expect("order 5");
    let split_21 = |x: &Tensor<T>| {
        let v = vec1(&x.trace_pair(1, 3).expect("order 3"));
        let h = HarmonicComponent::project(&(x - &phi31.embed(&v)), 3).expect("order 3");
        (h, v)
    };
    let (h21a, v21a) = split_21(&b.m21a);
    let (h21b, v21b) = split_21(&b.m21b);
    Ela5Harmonics {
        basis,
        formulation: m.formulation(),
        h23,
        h21a,
        h21b,
        h03: HarmonicComponent::project(&b.m03, 3).expect("order 3"),
        v23,
        v21a,
        v21b,
        v01a: vec1(&b.mu01a),
        v01b: vec1(&b.mu01b),
    }
}

/// The mutually orthogonal summands of the reconstruction, labelled by component.
pub fn ela5_terms<T: Scalar>(h: &Ela5Harmonics<T>) -> Vec<(String, Tensor<T>)> {
    let family = T3Family::<T>::new(h.basis, h.formulation);
    let [ea, eb] = family.vectors();
    let phi20 = embedding_unchecked::<T>(EmbeddingTag::Phi2_0);
    let phi31 = embedding_unchecked::<T>(EmbeddingTag::Phi31);
    let phi51 = embedding_unchecked::<T>(EmbeddingTag::Phi51);
    let g20 = T::one() / phi20.gamma();
    let with_phi20 = |c: &HarmonicComponent<T>| {
        phi20
            .phi()
            .outer(&c.to_tensor(), OuterMode::Plain)
            .expect("order")
    };
    let terms = vec![
        h.h23.to_tensor(),
        close(&h.h21a.to_tensor(), ea),
        close(&h.h21b.to_tensor(), eb),
        with_phi20(&h.h03).scale(g20),
        phi51.embed(&h.v23),
        close(&phi31.embed(&h.v21a), ea),
        close(&phi31.embed(&h.v21b), eb),
        close(&with_phi20(&h.v01a), ea).scale(g20),
        close(&with_phi20(&h.v01b), eb).scale(g20),
    ];
    Ela5Harmonics::<T>::labels(h.basis)
        .into_iter()
        .map(|(l, _)| l)
        .zip(terms)
        .collect()
}

pub fn reconstruct_ela5<T: Scalar>(h: &Ela5Harmonics<T>) -> Ela5Tensor<T> {
    let t = sum(5, ela5_terms(h).into_iter().map(|(_, t)| t));
    Ela5Tensor {
        t,
        formulation: h.formulation,
    }
}
