//! Exact construction of fusion modules for Yangians and twisted Yangians,
//! their R- and S-matrices, and an irreducibility test at rational parameter
//! points.
//!
//! All matrix code is generic over [`exactnum::Scalar`]; the aliases below name
//! the concrete instantiations used throughout.

pub mod exactnum;
pub mod cli;
pub mod diagrams;
pub mod fusion;
pub mod irreducibility;
pub mod repmatrix;
pub mod tensor;

pub use exactnum::{Fp, Laurent, RatFunc, Rational};
pub use tensor::Matrix;

/// Matrices over the rationals.
pub type QMatrix = Matrix<Rational>;
/// Matrices whose entries are rational functions of one parameter.
pub type RfMatrix = Matrix<RatFunc>;
/// Matrices whose entries are truncated Laurent series in one parameter.
pub type LsMatrix = Matrix<Laurent>;
/// Matrices over the prime field used for rank certificates.
pub type FpMatrix = Matrix<Fp>;
