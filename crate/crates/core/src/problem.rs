//! Canonical-form problem instances and their validation.

use std::fmt;

use crate::error::{Error, Result};
use crate::projection;
use crate::{Matrix, Vector};

/// Numeric policy shared by validation, the transform and the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute componentwise tolerance on equality constraints.
    pub feas: f64,
    /// Coordinates at or below `interior * n` count as on the boundary.
    pub interior: f64,
    /// Projected gradients below `gradient * ‖Dc‖` count as zero.
    pub gradient: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            feas: 1e-9,
            interior: 1e-12,
            gradient: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn interior_threshold(&self, n: usize) -> f64 {
        self.interior * n as f64
    }
}

/// `min cᵀx  s.t.  Ax = 0, eᵀx = n, x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct KarmarkarProblem {
    a: Matrix,
    c: Vector,
}

impl KarmarkarProblem {
    /// Checks shapes and finiteness only; see [`KarmarkarProblem::validate`]
    /// for the structural assumptions.
    pub fn new(a: Matrix, c: Vector) -> Result<Self> {
        let n = a.ncols();
        if c.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "cost has {} entries but A has {n} columns",
                c.len()
            )));
        }
        if n < 2 {
            return Err(Error::DimensionMismatch(format!(
                "n must be at least 2, got {n}"
            )));
        }
        if a.iter().chain(c.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain(
                "problem data contains non-finite entries".into(),
            ));
        }
        Ok(Self { a, c })
    }

    /// Build from row-major data. `rows` may be empty (m = 0).
    pub fn from_rows(n: usize, rows: &[Vec<f64>], c: &[f64]) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} of A has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let a = Matrix::from_row_iterator(rows.len(), n, rows.iter().flatten().copied());
        Self::new(a, Vector::from_column_slice(c))
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn c(&self) -> &Vector {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.a.ncols()
    }

    pub fn m(&self) -> usize {
        self.a.nrows()
    }

    pub fn ones(&self) -> Vector {
        Vector::from_element(self.n(), 1.0)
    }

    /// `cᵀe`, the objective at the centre.
    pub fn cost_at_centre(&self) -> f64 {
        self.c.sum()
    }

    /// `cᵀx`.
    pub fn objective(&self, x: &Vector) -> f64 {
        self.c.dot(x)
    }

    /// `‖Ax‖∞`.
    pub fn constraint_residual(&self, x: &Vector) -> f64 {
        if self.m() == 0 {
            return 0.0;
        }
        (&self.a * x).amax()
    }

    /// `[A; eᵀ]`, the (m+1) × n matrix of all equality constraints.
    pub fn stacked_constraints(&self) -> Matrix {
        self.a.clone().insert_row(self.m(), 1.0)
    }

    /// Same constraints, different cost.
    pub fn with_cost(&self, c: Vector) -> Result<Self> {
        Self::new(self.a.clone(), c)
    }

    /// Check the canonical-form assumptions.
    ///
    /// Redundant constraint rows are refused with [`Error::RankDeficient`]
    /// rather than eliminated. When the centre is itself infeasible the
    /// report is returned instead, with every failed check listed; use
    /// [`ValidationReport::assess`] to get the report unconditionally.
    pub fn validate(&self, tol_feas: f64) -> Result<ValidationReport> {
        let report = ValidationReport::assess(self, tol_feas);
        let centre_ok =
            report.outcome(ValidationReport::CENTRE_FEASIBLE) == Some(CheckOutcome::Pass);
        if centre_ok && !report.dependent_rows.is_empty() {
            return Err(Error::RankDeficient {
                dependent_rows: report.dependent_rows,
            });
        }
        Ok(report)
    }
}

/// Scale a point of the unit simplex `eᵀx = 1` onto `eᵀx = n`.
pub fn rescale_unit_simplex(x: &Vector, n: usize, tol_feas: f64) -> Result<Vector> {
    if x.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} entries, expected {n}",
            x.len()
        )));
    }
    let sum = x.sum();
    if (sum - 1.0).abs() > tol_feas || x.iter().any(|&v| v < -tol_feas) {
        return Err(Error::NotOnSimplex { sum, expected: 1.0 });
    }
    Ok(x * n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// Not decidable by validation; the vertex oracle can settle it for small n.
    Unverified,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            CheckOutcome::Pass => "PASS",
            CheckOutcome::Fail => "FAIL",
            CheckOutcome::Unverified => "UNVERIFIED-HERE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: CheckOutcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub cost_at_centre: f64,
    pub centre_residual: f64,
    /// Rows of `[A; eᵀ]` that depend on earlier rows; index `m` is `eᵀ`.
    pub dependent_rows: Vec<usize>,
}

impl ValidationReport {
    pub const CENTRE_FEASIBLE: &'static str = "centre feasible (Ae = 0)";
    pub const FULL_ROW_RANK: &'static str = "[A; e^T] has full row rank";
    pub const INTERIOR_DIMENSION: &'static str = "m + 1 < n";
    pub const COST_AT_CENTRE: &'static str = "c^T e >= 0";
    pub const ZERO_OPTIMUM: &'static str = "optimal value is zero";

    /// Run every check without short-circuiting.
    pub fn assess(problem: &KarmarkarProblem, tol_feas: f64) -> Self {
        let (m, n) = (problem.m(), problem.n());
        let centre_residual = problem.constraint_residual(&problem.ones());
        let cost_at_centre = problem.cost_at_centre();
        let dependent_rows = projection::dependent_rows(&problem.stacked_constraints());

        let pass_if = |ok: bool| {
            if ok {
                CheckOutcome::Pass
            } else {
                CheckOutcome::Fail
            }
        };
        let checks = vec![
            Check {
                name: Self::CENTRE_FEASIBLE,
                outcome: pass_if(centre_residual <= tol_feas),
                detail: format!("max |Ae| = {centre_residual:e}, tolerance {tol_feas:e}"),
            },
            Check {
                name: Self::FULL_ROW_RANK,
                outcome: pass_if(dependent_rows.is_empty()),
                detail: if dependent_rows.is_empty() {
                    format!("rank {}", m + 1)
                } else {
                    format!("RankDeficient: dependent rows {dependent_rows:?} (row {m} is e^T)")
                },
            },
            Check {
                name: Self::INTERIOR_DIMENSION,
                outcome: pass_if(m + 1 < n),
                detail: format!("m = {m}, n = {n}"),
            },
            Check {
                name: Self::COST_AT_CENTRE,
                outcome: pass_if(cost_at_centre >= 0.0),
                detail: format!("c^T e = {cost_at_centre:e}"),
            },
            Check {
                name: Self::ZERO_OPTIMUM,
                outcome: CheckOutcome::Unverified,
                detail: "assumed; certify with the vertex oracle for n <= 16".into(),
            },
        ];
        Self {
            checks,
            cost_at_centre,
            centre_residual,
            dependent_rows,
        }
    }

    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != CheckOutcome::Fail)
    }

    pub fn outcome(&self, name: &str) -> Option<CheckOutcome> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.outcome)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{:<16} {}: {}", check.outcome, check.name, check.detail)?;
        }
        Ok(())
    }
}
