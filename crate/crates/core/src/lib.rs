//! Exact computations of perverse and Hodge numbers on model cohomology
//! algebras of hyper-Kähler manifolds.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod fibration;
pub mod gv;
pub mod lefschetz;
pub mod linalg;
pub mod perverse;
