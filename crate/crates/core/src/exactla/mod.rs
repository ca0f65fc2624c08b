//! Exact scalar arithmetic and dense linear algebra over Q and prime fields.

mod matrix;
mod scalar;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar, ScalarError};
