use super::{order_entries, Ela4Tensor, HarmonicBundle};
use crate::embeddings::{embedding_unchecked, projector, EmbeddingTag, ProjectorTag};
use crate::error::Result;
use crate::harmonic::HarmonicComponent;
use crate::scalar::Scalar;
use crate::tensor::{sum, OuterMode, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub struct Ela4Blocks<T> {
    /// `P²² : C : P²²`.
    pub c22: Tensor<T>,
    /// `P²² : C : Φ²⁰`.
    pub h20: HarmonicComponent<T>,
    /// `Φ⁰² : C : Φ²⁰ = ½ C :: P²⁰`.
    pub a00: HarmonicComponent<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ela4Harmonics<T> {
    pub h22: HarmonicComponent<T>,
    pub h20: HarmonicComponent<T>,
    pub a22: HarmonicComponent<T>,
    pub a00: HarmonicComponent<T>,
}

impl<T: Scalar> Ela4Harmonics<T> {
    pub fn labels() -> Vec<(String, i32)> {
        [("H22", 4), ("h20", 2), ("a22", 0), ("a00", 0)]
            .iter()
            .map(|&(l, k)| (l.to_string(), k))
            .collect()
    }

    pub fn from_entries(entries: &[(String, HarmonicComponent<T>)]) -> Result<Self> {
        let c = order_entries(&Self::labels(), entries)?;
        Ok(Self {
            h22: c[0],
            h20: c[1],
            a22: c[2],
            a00: c[3],
        })
    }
}

impl<T: Scalar> HarmonicBundle<T> for Ela4Harmonics<T> {
    fn entries(&self) -> Vec<(String, HarmonicComponent<T>)> {
        Self::labels()
            .into_iter()
            .map(|(l, _)| l)
            .zip([self.h22, self.h20, self.a22, self.a00])
            .collect()
    }

    fn with_components(&self, c: &[HarmonicComponent<T>]) -> Self {
        Self {
            h22: c[0],
            h20: c[1],
            a22: c[2],
            a00: c[3],
        }
    }
}

pub fn ibd_ela4<T: Scalar>(c: &Ela4Tensor<T>) -> Ela4Blocks<T> {
    let p22 = projector::<T>(ProjectorTag::P22);
    let phi = embedding_unchecked::<T>(EmbeddingTag::Phi2_0);
    let left = p22.contract(c.tensor(), 2).expect("order 4");
    let c22 = left.contract(&p22, 2).expect("order 4");
    let h20 = left.contract(phi.phi(), 2).expect("order 2");
    let a00 = phi
        .phi_transpose()
        .contract(c.tensor(), 2)
        .and_then(|x| x.contract(phi.phi(), 2))
        .expect("order 0");
    Ela4Blocks {
        c22,
        h20: HarmonicComponent::project(&h20, 2).expect("order 2"),
        a00: HarmonicComponent::project(&a00, 0).expect("order 0"),
    }
}

/// `C²² + (1/γ)(h⊗Φ + Φ⊗h) + (α/γ²) Φ⊗Φ` with `Φ = Φ²⁰`.
pub fn reconstruct_ibd_ela4<T: Scalar>(b: &Ela4Blocks<T>) -> Tensor<T> {
    let phi = embedding_unchecked::<T>(EmbeddingTag::Phi2_0);
    let g = T::one() / phi.gamma();
    let h = b.h20.to_tensor();
    let f = phi.phi();
    sum(
        4,
        [
            b.c22.clone(),
            (&h.outer(f, OuterMode::Plain).unwrap() + &f.outer(&h, OuterMode::Plain).unwrap())
                .scale(g),
            f.outer(f, OuterMode::Plain)
                .unwrap()
                .scale(b.a00.value() * g * g),
        ],
    )
}

pub fn cghd_ela4<T: Scalar>(c: &Ela4Tensor<T>) -> Ela4Harmonics<T> {
    let blocks = ibd_ela4(c);
    let p22 = projector::<T>(ProjectorTag::P22);
    let a22 = blocks.c22.dot(&p22);
    let rest = blocks.c22.add_scaled(-a22 / T::frac(2, 1), &p22);
    Ela4Harmonics {
        h22: HarmonicComponent::project(&rest, 4).expect("order 4"),
        h20: blocks.h20,
        a22: HarmonicComponent::scalar(0, a22),
        a00: blocks.a00,
    }
}

/// The mutually orthogonal summands of the reconstruction, labelled by component.
pub fn ela4_terms<T: Scalar>(h: &Ela4Harmonics<T>) -> Vec<(String, Tensor<T>)> {
    let p22 = projector::<T>(ProjectorTag::P22);
    let zero = Ela4Blocks {
        c22: Tensor::zeros(4),
        h20: HarmonicComponent::zero(2),
        a00: HarmonicComponent::zero(0),
    };
    let h20 = reconstruct_ibd_ela4(&Ela4Blocks {
        h20: h.h20,
        ..zero.clone()
    });
    let a00 = reconstruct_ibd_ela4(&Ela4Blocks { a00: h.a00, ..zero });
    vec![
        ("H22".into(), h.h22.to_tensor()),
        ("h20".into(), h20),
        ("a22".into(), p22.scale(h.a22.value() / T::frac(2, 1))),
        ("a00".into(), a00),
    ]
}

pub fn reconstruct_ela4<T: Scalar>(h: &Ela4Harmonics<T>) -> Ela4Tensor<T> {
    let t = sum(4, ela4_terms(h).into_iter().map(|(_, t)| t));
    Ela4Tensor { t }
}
