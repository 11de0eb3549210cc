//! Direct systems of finite-dimensional graded vector spaces over ℚ and their
//! direct limits, built as explicit quotients of direct sums.

mod graded;
mod inclusion;
mod limit;
pub mod linalg;
pub mod random;
pub mod selftest;
mod system;
mod tensor;

pub use graded::{BasisVector, DirectedPoset, GradeMap, GradedSpace};
pub use inclusion::{inclusion_system, q_map, InclusionSystem, QMapReport};
pub use limit::{direct_limit, universal_map, Limit, Target};
pub use linalg::{Matrix, Subspace};
pub use system::{validate_system, DirectSystem, ValidationReport, Violation};
pub use tensor::{fubini_compare, tensor_system, tensor_with_space, FubiniReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DirlimError {
    #[error("invalid direct system: {0}")]
    InvalidSystem(ValidationReport),
    #[error("target is not compatible with the map {from} -> {to}")]
    IncompatibleTarget { from: String, to: String },
    #[error("unknown poset element {0:?}")]
    UnknownElement(String),
    #[error("not a graded subspace: {0}")]
    NotASubspace(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("malformed system document: {0}")]
    Json(String),
}
