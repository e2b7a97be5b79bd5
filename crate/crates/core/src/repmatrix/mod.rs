//! Evaluated R-, R'- and S-matrices on fusion modules and checks of the defining relations.

pub mod module;
pub mod operators;
pub mod relations;
pub mod yang;

pub use module::{FusedModule, FusedModuleSpec, Part, SpecEcho};
pub use operators::{
    r_factorized, s_elementary, s_fused, s_fused_bracketed, s_generators, s_matrix, s_matrix_via_prime, s_wz, s_wz_factors, t_action, t_matrix,
    GeneratorMatrices, Placed, TAction,
};
pub use relations::{check_defining_relations, duality_check, sample_grid, DualityReport, RelationReport, SampleOutcome};
pub use yang::{yang_matrices, LocalOps, RKind, YangMatrices};

use thiserror::Error;

use crate::diagrams::DiagramError;
use crate::exactnum::ExactError;
use crate::fusion::FusionError;
use crate::tensor::TensorError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("invalid module spec: {0}")]
    Spec(String),
}
