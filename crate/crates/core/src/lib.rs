//! Karmarkar's projective-scaling interior-point method for linear programs in
//! canonical form:
//!
//! ```text
//! minimize cᵀx  subject to  Ax = 0,  eᵀx = n,  x ≥ 0
//! ```
//!
//! where the all-ones vector `e` is feasible and the optimal value is zero.
//!
//! The crate is organised around the pieces of the method:
//!
//! * [`problem`] holds the canonical-form instance and its validation.
//! * [`geometry`] gives the inscribed and circumscribed radii of the simplex.
//! * [`projection`] projects vectors onto the null space of a stacked
//!   constraint matrix through a factored Gram system.
//! * [`transform`] implements the projective transform and the rescaled
//!   subproblem.
//! * [`potential`] exposes the potential function and its auxiliary bounds.
//! * [`solver`] runs the iteration and keeps a per-step trace.
//! * [`oracle`] enumerates polytope vertices for small instances.
//! * [`format`] reads problem files and writes trace CSV.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod format;
pub mod geometry;
pub mod oracle;
pub mod potential;
pub mod problem;
pub mod projection;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};
pub use geometry::SimplexGeometry;
pub use problem::{KarmarkarProblem, Tolerances, ValidationReport};
pub use projection::ProjectionBasis;
pub use solver::{IterationRecord, SolveResult, SolveStatus, SolverConfig};

/// Dense column vector used throughout the crate.
pub type Vector = nalgebra::DVector<f64>;
/// Dense matrix used throughout the crate.
pub type Matrix = nalgebra::DMatrix<f64>;
