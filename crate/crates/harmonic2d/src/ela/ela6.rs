use super::{order_entries, Ela6Tensor, HarmonicBundle};
use crate::embeddings::{embedding_unchecked, Embedding, EmbeddingTag};
use crate::error::Result;
use crate::harmonic::HarmonicComponent;
use crate::iso::{kronecker, levi_civita};
use crate::scalar::Scalar;
use crate::state::{Basis, Formulation, T3Family};
use crate::tensor::{sum, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub struct Ela6Blocks<T> {
    pub basis: Basis,
    pub formulation: Formulation,
    /// `P³³ ⋮ A ⋮ P³³`.
    pub a33: Tensor<T>,
    /// `P³³ ⋮ A ⋮ Φ_a`.
    pub a31a: Tensor<T>,
    /// `P³³ ⋮ A ⋮ Φ_b`.
    pub a31b: Tensor<T>,
    /// `Φ_aᵀ ⋮ A ⋮ Φ_a`.
    pub a1a1a: Tensor<T>,
    /// `Φ_aᵀ ⋮ A ⋮ Φ_b`.
    pub a1a1b: Tensor<T>,
    /// `Φ_bᵀ ⋮ A ⋮ Φ_b`.
    pub a1b1b: Tensor<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ela6Harmonics<T> {
    pub basis: Basis,
    pub formulation: Formulation,
    pub h33: HarmonicComponent<T>,
    pub h31a: HarmonicComponent<T>,
    pub h31b: HarmonicComponent<T>,
    /// `K²` part of the `K³⊗K¹` block `a`.
    pub d31a: HarmonicComponent<T>,
    pub d31b: HarmonicComponent<T>,
    pub d1a1b: HarmonicComponent<T>,
    pub d1a1a: HarmonicComponent<T>,
    pub d1b1b: HarmonicComponent<T>,
    pub a33: HarmonicComponent<T>,
    pub a1a1a: HarmonicComponent<T>,
    pub a1b1b: HarmonicComponent<T>,
    pub a1a1b: HarmonicComponent<T>,
    pub b1a1b: HarmonicComponent<T>,
}

impl<T: Scalar> Ela6Harmonics<T> {
    /// Labels for a basis, e.g. `H31s`, `h1s1r`, `b1s1r` in the stretch/rotation basis.
    pub fn labels(basis: Basis) -> Vec<(String, i32)> {
        let [a, b] = basis.suffixes();
        vec![
            ("H33".into(), 6),
            (format!("H31{a}"), 4),
            (format!("H31{b}"), 4),
            (format!("h31{a}"), 2),
            (format!("h31{b}"), 2),
            (format!("h1{a}1{b}"), 2),
            (format!("h1{a}1{a}"), 2),
            (format!("h1{b}1{b}"), 2),
            ("a33".into(), 0),
            (format!("a1{a}1{a}"), 0),
            (format!("a1{b}1{b}"), 0),
            (format!("a1{a}1{b}"), 0),
            (format!("b1{a}1{b}"), -1),
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
            h33: c[0],
            h31a: c[1],
            h31b: c[2],
            d31a: c[3],
            d31b: c[4],
            d1a1b: c[5],
            d1a1a: c[6],
            d1b1b: c[7],
            a33: c[8],
            a1a1a: c[9],
            a1b1b: c[10],
            a1a1b: c[11],
            b1a1b: c[12],
        }
    }

    fn components(&self) -> [HarmonicComponent<T>; 13] {
        [
            self.h33, self.h31a, self.h31b, self.d31a, self.d31b, self.d1a1b, self.d1a1a,
            self.d1b1b, self.a33, self.a1a1a, self.a1b1b, self.a1a1b, self.b1a1b,
        ]
    }
}

impl<T: Scalar> HarmonicBundle<T> for Ela6Harmonics<T> {
    fn entries(&self) -> Vec<(String, HarmonicComponent<T>)> {
        Self::labels(self.basis)
            .into_iter()
            .map(|(l, _)| l)
            .zip(self.components())
            .collect()
    }

    fn with_components(&self, c: &[HarmonicComponent<T>]) -> Self {
        Self::assemble(self.basis, self.formulation, c)
    }
}

/// `Φ_x · m · Φ_yᵀ` for a second-order `m`.
fn sandwich<T: Scalar>(x: &Embedding<T>, m: &Tensor<T>, y: &Embedding<T>) -> Tensor<T> {
    x.phi()
        .contract(m, 1)
        .and_then(|t| t.contract(y.phi_transpose(), 1))
        .expect("order 6")
}

/// `t · Φ_xᵀ + Φ_x · tᵀ` for `t` in the `K³⊗K¹` block.
fn side<T: Scalar>(t: &Tensor<T>, x: &Embedding<T>) -> Tensor<T> {
    let right = t.contract(x.phi_transpose(), 1).expect("order 6");
    let left = x
        .phi()
        .contract(&t.transpose_block(3, 1).expect("order 4"), 1)
        .expect("order 6");
    &right + &left
}

pub fn ibd_ela6<T: Scalar>(a: &Ela6Tensor<T>, basis: Basis) -> Ela6Blocks<T> {
    let family = T3Family::<T>::new(basis, a.formulation());
    ibd_with(&family, a.tensor())
}

fn ibd_with<T: Scalar>(family: &T3Family<T>, a: &Tensor<T>) -> Ela6Blocks<T> {
    let p = family.p33();
    let [ea, eb] = family.vectors();
    let pa = p.contract(a, 3).expect("order 6");
    let left = |e: &Embedding<T>| e.phi_transpose().contract(a, 3).expect("order 4");
    let (la, lb) = (left(ea), left(eb));
    Ela6Blocks {
        basis: family.basis(),
        formulation: family.formulation(),
        a33: pa.contract(p, 3).expect("order 6"),
        a31a: pa.contract(ea.phi(), 3).expect("order 4"),
        a31b: pa.contract(eb.phi(), 3).expect("order 4"),
        a1a1a: la.contract(ea.phi(), 3).expect("order 2"),
        a1a1b: la.contract(eb.phi(), 3).expect("order 2"),
        a1b1b: lb.contract(eb.phi(), 3).expect("order 2"),
    }
}

pub fn reconstruct_ibd_ela6<T: Scalar>(b: &Ela6Blocks<T>) -> Tensor<T> {
    let family = T3Family::<T>::new(b.basis, b.formulation);
    let [ea, eb] = family.vectors();
    let (ga, gb) = (T::one() / ea.gamma(), T::one() / eb.gamma());
    let a1b1a = b.a1a1b.transpose_block(1, 1).expect("order 2");
    sum(
        6,
        [
            b.a33.clone(),
            side(&b.a31a, ea).scale(ga),
            side(&b.a31b, eb).scale(gb),
            sandwich(ea, &b.a1a1a, ea).scale(ga * ga),
            sandwich(eb, &b.a1b1b, eb).scale(gb * gb),
            (&sandwich(ea, &b.a1a1b, eb) + &sandwich(eb, &a1b1a, ea)).scale(ga * gb),
        ],
    )
}

/// `a = H + Φ⁴² : h` with `h = tr₁₄ a`.
fn split_31<T: Scalar>(
    a: &Tensor<T>,
    phi42: &Embedding<T>,
) -> (HarmonicComponent<T>, HarmonicComponent<T>) {
    let h = HarmonicComponent::project(&a.trace_pair(1, 4).expect("order 4"), 2).expect("order 2");
    let rest = a - &phi42.embed(&h);
    (HarmonicComponent::project(&rest, 4).expect("order 4"), h)
}

/// `a = d + (β/2) ε + (α/2) δ` with `α = a : δ`, `β = a : ε`.
fn split_11<T: Scalar>(a: &Tensor<T>) -> (HarmonicComponent<T>, T, T) {
    let alpha = a.dot(&kronecker());
    let beta = a.dot(&levi_civita());
    (
        HarmonicComponent::project(a, 2).expect("order 2"),
        alpha,
        beta,
    )
}

pub fn cghd_ela6<T: Scalar>(a: &Ela6Tensor<T>, basis: Basis) -> Ela6Harmonics<T> {
    let b = ibd_ela6(a, basis);
    let phi42 = embedding_unchecked::<T>(EmbeddingTag::Phi42);
    let family = T3Family::<T>::new(basis, a.formulation());
    let alpha33 = b.a33.dot(family.p33());
    let rest = b.a33.add_scaled(-alpha33 / T::frac(2, 1), family.p33());
    let (h31a, d31a) = split_31(&b.a31a, &phi42);
    let (h31b, d31b) = split_31(&b.a31b, &phi42);
    let (d1a1a, a1a1a, _) = split_11(&b.a1a1a);
    let (d1b1b, a1b1b, _) = split_11(&b.a1b1b);
    let (d1a1b, a1a1b, b1a1b) = split_11(&b.a1a1b);
    Ela6Harmonics {
        basis,
        formulation: a.formulation(),
        h33: HarmonicComponent::project(&rest, 6).expect("order 6"),
        h31a,
        h31b,
        d31a,
        d31b,
        d1a1b,
        d1a1a,
        d1b1b,
        a33: HarmonicComponent::scalar(0, alpha33),
        a1a1a: HarmonicComponent::scalar(0, a1a1a),
        a1b1b: HarmonicComponent::scalar(0, a1b1b),
        a1a1b: HarmonicComponent::scalar(0, a1a1b),
        b1a1b: HarmonicComponent::scalar(-1, b1a1b),
    }
}

/// The mutually orthogonal summands of the reconstruction, labelled by component.
pub fn ela6_terms<T: Scalar>(h: &Ela6Harmonics<T>) -> Vec<(String, Tensor<T>)> {
    let family = T3Family::<T>::new(h.basis, h.formulation);
    let [ea, eb] = family.vectors();
    let phi42 = embedding_unchecked::<T>(EmbeddingTag::Phi42);
    let (ga, gb) = (T::one() / ea.gamma(), T::one() / eb.gamma());
    let half = T::frac(1, 2);
    let delta = kronecker::<T>();
    let eps = levi_civita::<T>();
    let eps_t = eps.transpose_block(1, 1).expect("order 2");
    let cross = |m: &Tensor<T>, mt: &Tensor<T>| {
        (&sandwich(ea, m, eb) + &sandwich(eb, mt, ea)).scale(ga * gb)
    };
    let d1a1b = h.d1a1b.to_tensor();
    let terms = vec![
        h.h33.to_tensor(),
        side(&h.h31a.to_tensor(), ea).scale(ga),
        side(&h.h31b.to_tensor(), eb).scale(gb),
        side(&phi42.embed(&h.d31a), ea).scale(ga),
        side(&phi42.embed(&h.d31b), eb).scale(gb),
        cross(&d1a1b, &d1a1b),
        sandwich(ea, &h.d1a1a.to_tensor(), ea).scale(ga * ga),
        sandwich(eb, &h.d1b1b.to_tensor(), eb).scale(gb * gb),
        family.p33().scale(h.a33.value() * half),
        sandwich(ea, &delta, ea).scale(h.a1a1a.value() * half * ga * ga),
        sandwich(eb, &delta, eb).scale(h.a1b1b.value() * half * gb * gb),
        cross(&delta, &delta).scale(h.a1a1b.value() * half),
        cross(&eps, &eps_t).scale(h.b1a1b.value() * half),
    ];
    Ela6Harmonics::<T>::labels(h.basis)
        .into_iter()
        .map(|(l, _)| l)
        .zip(terms)
        .collect()
}

pub fn reconstruct_ela6<T: Scalar>(h: &Ela6Harmonics<T>) -> Ela6Tensor<T> {
    let t = sum(6, ela6_terms(h).into_iter().map(|(_, t)| t));
    Ela6Tensor {
        t,
        formulation: h.formulation,
    }
}
