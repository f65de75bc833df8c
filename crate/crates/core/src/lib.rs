//! Exact linear algebra over the rationals.
//!
//! Reduced row-echelon form with a replayable row-operation trace, exact
//! linear solves and nullspaces, right inverses assembled from the unit
//! systems `Ax = e_i`, two-sidedness checks (`AB = I` implies `BA = I`), and
//! eight independently computed statements of the invertible matrix theorem.

pub mod cli;
mod error;
pub mod format;
pub mod generate;
pub mod imt;
mod matrix;
mod rational;
pub mod report;
pub mod rref;
pub mod solver;

pub use error::{Error, Result, Shape};
pub use generate::{random_invertible, random_matrix, random_with_rank, GenConfig, SplitMix64};
pub use imt::{
    imt_report, imt_report_with, independence_certificate, two_sided_check, ImtOptions, ImtReport,
    Independence, TwoSidedReport,
};
pub use matrix::{Matrix, Vector};
pub use rational::Rational;
pub use rref::{apply_trace, rank, rref, RowOp, RrefDecomposition};
pub use solver::{
    combine_unit_solutions, nullspace_basis, right_inverse, solve, RightInverse, SolveOutcome,
};
