use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid arity: {0}")]
    InvalidArity(String),

    #[error("non-finite component at flat index {0}")]
    NonFinite(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not harmonic of order {k}: relative residual {residual:e} exceeds tolerance {tol:e}")]
    NotHarmonic { k: i32, residual: f64, tol: f64 },

    #[error(
        "symmetry violation ({pattern}): relative residual {residual:e} exceeds tolerance {tol:e}"
    )]
    Symmetry {
        pattern: String,
        residual: f64,
        tol: f64,
    },

    #[error("symmetry class {class} is not resolved for {space}")]
    UnresolvedClass { class: String, space: String },

    #[error("internal consistency: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
