//! Exact computations with finite-dimensional associative and diassociative
//! algebras given by structure constants.
pub mod algebra;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod format;
pub mod genlab;
pub mod ideals;
pub mod nilpotency;
pub mod representation;

pub use error::{Error, Result};
