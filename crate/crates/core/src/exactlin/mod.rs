//! Exact linear algebra over ℚ and prime fields: dense matrices, canonical
//! subspaces, kernels, intersections and matrix nilpotency.

mod field;
mod matrix;
mod subspace;
pub mod vector;

pub use field::{FieldKind, FieldSpec, Scalar};
pub use matrix::{Matrix, Nilpotency};
pub use subspace::Subspace;
