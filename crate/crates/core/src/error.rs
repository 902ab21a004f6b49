use thiserror::Error;

use crate::exactlin::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{0} is not a prime below 65536")]
    InvalidPrime(u64),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("table is not associative: (e{}e{})e{} != e{}(e{}e{})", .0.0 + 1, .0.1 + 1, .0.2 + 1, .0.0 + 1, .0.1 + 1, .0.2 + 1)]
    NotAssociative((usize, usize, usize)),

    #[error("structure constants violate {count} diassociative identities (first: {first})")]
    AxiomsViolated { count: usize, first: String },

    #[error("actions violate {count} representation identities (first: {first})")]
    RepresentationInvalid { count: usize, first: String },

    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("rejection budget exhausted after {attempts} attempts; retry with seed {next_seed}")]
    RejectionBudgetExhausted { attempts: usize, next_seed: u64 },

    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
