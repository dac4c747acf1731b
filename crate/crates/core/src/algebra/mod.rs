//! Graded Frobenius algebras standing in for `H*(M, Q)`, and the model
//! builder that produces them from a quadratic space.

mod bb;
mod description;
mod graded;
mod properties;
mod sym;

pub use bb::{k3_lattice, BBSpace, BBSpaceFile};
pub use description::{build_from_description, AlgebraDescription, MultEntry};
pub use graded::{ClassVector, FrobeniusReport, FrobeniusViolation, GradedAlgebra};
pub use properties::{check_bogomolov, check_fujiki, SampleReport};
pub use sym::{build_sym_model, isotropic_square_rank, sym_basis, SymModel};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("invalid quadratic space: {0}")]
    InvalidQuadraticSpace(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("no rational isotropic vector found in the quadratic space")]
    NoIsotropicVector,
    #[error("{0}")]
    Frobenius(FrobeniusViolation),
    #[error("product lands in degree {degree}, above the top degree {top}")]
    DegreeOverflow { degree: usize, top: usize },
    #[error("expected a class of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("model check failed: {0}")]
    ModelCheck(String),
}
