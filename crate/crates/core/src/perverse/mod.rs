//! Perverse bigradings from a pair of isotropic classes, their numbers, and
//! structural checks on the resulting decomposition.

mod bigrading;
mod checks;
mod classes;
mod pieces;
mod table;

pub use bigrading::Bigrading;
pub use checks::{
    check_duality, check_filtration_shifts, check_multiplicativity, DualityReport,
    DualityViolation, FiltrationReport, MultiplicativityReport,
};
pub use classes::{default_pair, isotropic_relative_ample};
pub use pieces::{
    perverse_bigrading, primitive_pieces, weight_bigrading, weight_filtrations, PrimitivePieces,
};
pub use table::{
    check_base_fiber_pattern, compare_hodge, perverse_numbers, HodgeComparison, HodgeDiamond,
    Mismatch, PatternReport, PerverseTable,
};

use crate::algebra::AlgebraError;
use crate::lefschetz::LefschetzError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PerverseError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("primitive pieces fall short in degree {degree}: expected {expected}, spanned {spanned}, listed {listed}")]
    PrimitiveDeficit {
        degree: usize,
        expected: usize,
        spanned: usize,
        listed: usize,
    },
    #[error("primitive and weight constructions disagree at ({i},{j})")]
    RouteDisagreement { i: usize, j: usize },
    #[error("table invariant violated: {0}")]
    TableInvariant(String),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
