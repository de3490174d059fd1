//! Harmonic decompositions of two-dimensional strain-gradient elasticity tensors.
//!
//! Tensors of order ≤ 6 over ℝ² are stored densely in row-major order. Each
//! constitutive tensor (`C`, `M`, `A`) is split first into blocks indexed by
//! the harmonic parts of the strain and strain gradient, then into O(2)
//! irreducible components `K^k`. Every routine is generic over [`Scalar`];
//! exact rationals make the algebraic identities checkable without rounding.
//!
//! ```
//! use harmonic2d::{cghd_ela4, reconstruct_ela4, Ela4TensorF64, TensorF64};
//! use harmonic2d::iso::i4;
//!
//! let (lambda, mu) = (2.0, 0.5);
//! let c: TensorF64 = &i4::<f64>(1).scale(lambda) + &(&i4::<f64>(2) + &i4::<f64>(3)).scale(mu);
//! let c = Ela4TensorF64::new(&c, 1e-12).unwrap();
//! let h = cghd_ela4(&c);
//! assert!((h.a22.value() - 4.0 * mu).abs() < 1e-12);
//! assert!(reconstruct_ela4(&h).tensor().approx_eq(c.tensor(), 1e-12));
//! ```

pub mod ela;
pub mod embeddings;
pub mod error;
pub mod group;
pub mod harmonic;
pub mod iso;
pub mod pattern;
pub mod sample;
pub mod scalar;
pub mod state;
pub mod symmetry;
pub mod tensor;
pub mod verify;

pub use ela::{
    apply_law, cghd_ela4, cghd_ela5, cghd_ela6, ela4_terms, ela5_terms, ela6_terms, energy_split,
    ibd_ela4, ibd_ela5, ibd_ela6, reconstruct_ela4, reconstruct_ela5, reconstruct_ela6,
    reconstruct_ibd_ela4, reconstruct_ibd_ela5, reconstruct_ibd_ela6, Ela4Blocks, Ela4Harmonics,
    Ela4Tensor, Ela5Blocks, Ela5Harmonics, Ela5Tensor, Ela6Blocks, Ela6Harmonics, Ela6Tensor,
    EnergySplit, HarmonicBundle,
};
pub use embeddings::{embedding, projector, Embedding, EmbeddingTag, ProjectorTag};
pub use error::{Error, Result};
pub use group::{rayleigh, GroupElement};
pub use harmonic::{fourier_extract, isotypic_part, HarmonicComponent, HARMONIC_TOL};
pub use scalar::{Real, Scalar};
pub use state::{
    decompose_t2, decompose_t3, reconstruct_t2, reconstruct_t3, Basis, Formulation, T2Harmonics,
    T3Harmonics,
};
pub use symmetry::{
    classify_high, is_invariant, restrict_to_class, Classification, ClassifiedBundle,
    SymmetryClass, VANISHING_TOL,
};
pub use tensor::{OuterMode, Permutation, Tensor};

/// Exact scalar type.
pub type Rational = num_rational::Ratio<i64>;

pub type TensorF64 = Tensor<f64>;
pub type TensorF32 = Tensor<f32>;
pub type TensorQ = Tensor<Rational>;
pub type HarmonicF64 = HarmonicComponent<f64>;
pub type Ela4TensorF64 = Ela4Tensor<f64>;
pub type Ela5TensorF64 = Ela5Tensor<f64>;
pub type Ela6TensorF64 = Ela6Tensor<f64>;
pub type Ela4HarmonicsF64 = Ela4Harmonics<f64>;
pub type Ela5HarmonicsF64 = Ela5Harmonics<f64>;
pub type Ela6HarmonicsF64 = Ela6Harmonics<f64>;
