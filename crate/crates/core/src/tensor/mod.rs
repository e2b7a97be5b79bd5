//! Dense exact linear algebra on tensor products of `C^N`.

mod basis;
mod gform;
pub mod linalg;
mod matrix;
pub mod ops;
mod slots;
mod trace;

pub use linalg::RowSpace;
pub use basis::{image_basis, restrict, Basis};
pub use gform::{FormKind, GForm};
pub use matrix::Matrix;
pub use ops::{embed_two_leg, permutation_op, reversal, structural_ops, transpose_all, transpose_legs};
pub use slots::Slots;
pub use trace::{contract, contraction_matrix, partial_trace_first};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("index {index} out of range for {len} legs or slots")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator does not map the domain into the codomain span")]
    NotInvariant,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
}
