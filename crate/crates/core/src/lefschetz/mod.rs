//! Lefschetz triples, weight filtrations of nilpotent operators, Lie
//! closures, and points of D°.

mod dcircle;
mod lie;
mod operator;
mod sl2;
mod weight;

pub use dcircle::{
    cartan_bigrading, direction_span, sample_d_circle, sample_d_circle_spanning, DCirclePoint,
};
pub use lie::{lie_closure, LieClosure};
pub use operator::GradedOperator;
pub use sl2::{is_lefschetz_type, lefschetz_triple, Sl2Triple};
pub use weight::{weight_filtration, Filtration};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LefschetzError {
    #[error("class is not of Lefschetz type")]
    NotLefschetz,
    #[error("sl2 identity {0} fails")]
    Sl2Identity(&'static str),
    #[error("operator is not nilpotent of order {order}")]
    NotNilpotent { order: usize },
    #[error("weight filtration check failed: {0}")]
    WeightPostcondition(String),
    #[error("bracket has shift {shift}, outside the -2..2 window")]
    ShiftOutOfRange { shift: i32 },
    #[error("not a point of D°: {0}")]
    NotInDCircle(String),
    #[error("D° search found {found} of {requested} requested points")]
    SearchFailed { found: usize, requested: usize },
    #[error("H' has a non-integer or missing eigenvalue in degree {degree}")]
    NonIntegerEigenvalue { degree: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
