//! The projective transform `T_a(x)_i = n·a_i·x_i / Σ_j a_j·x_j` and the
//! rescaled subproblem it induces.
//!
//! With `a = 1/z` the transform sends an interior point `z` to the centre `e`;
//! `T_z` maps back. In the transformed coordinates the problem keeps its
//! canonical form with matrix `AZ` and cost `Zc`, `Z = diag(z)`.

use crate::error::{Error, Result};
use crate::problem::{KarmarkarProblem, Tolerances};
use crate::Vector;

/// Strictly positive coefficient vector `a` of a transform `T_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformCoefficients(Vector);

impl TransformCoefficients {
    pub fn new(a: Vector) -> Result<Self> {
        if let Some((i, &v)) = a
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v > 0.0) || !v.is_finite())
        {
            return Err(Error::Domain(format!(
                "transform coefficient {i} must be positive and finite, got {v}"
            )));
        }
        Ok(Self(a))
    }

    /// Coefficients `1/z` of the transform that maps `z` to `e`.
    pub fn centering(z: &Vector) -> Result<Self> {
        Self::new(z.map(|v| 1.0 / v))
    }

    /// Coefficients `1/a` of the inverse transform.
    pub fn reciprocal(&self) -> Self {
        Self(self.0.map(|v| 1.0 / v))
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `T_a(x)`. The result lies on `eᵀy = n`, where `n` is the length of `x`.
pub fn apply(a: &TransformCoefficients, x: &Vector) -> Result<Vector> {
    if a.len() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "coefficients have {} entries, point has {}",
            a.len(),
            x.len()
        )));
    }
    if let Some((i, &v)) = x.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
        return Err(Error::Domain(format!(
            "coordinate {i} must be nonnegative, got {v}"
        )));
    }
    let weighted = a.as_vector().component_mul(x);
    let denominator = weighted.sum();
    if !(denominator > f64::MIN_POSITIVE) || !denominator.is_finite() {
        return Err(Error::ZeroDenominator(denominator));
    }
    Ok(weighted * (x.len() as f64 / denominator))
}

/// `T_a⁻¹(y) = T_{1/a}(y)` for `y` on the simplex `eᵀy = n`.
pub fn invert(a: &TransformCoefficients, y: &Vector, tol_feas: f64) -> Result<Vector> {
    let n = y.len() as f64;
    let sum = y.sum();
    if (sum - n).abs() > tol_feas * n {
        return Err(Error::NotOnSimplex { sum, expected: n });
    }
    apply(&a.reciprocal(), y)
}

/// The problem seen from an interior feasible point `z`: matrix `AZ`, cost
/// `Zc`. The centre `e` is feasible for the result because `AZe = Az = 0`.
pub fn scaled_subproblem(
    problem: &KarmarkarProblem,
    z: &Vector,
    tol: &Tolerances,
) -> Result<KarmarkarProblem> {
    let n = problem.n();
    if z.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} entries, expected {n}",
            z.len()
        )));
    }
    check_interior(z, tol.interior_threshold(n))?;
    let sum = z.sum();
    if (sum - n as f64).abs() > tol.feas * n as f64 {
        return Err(Error::NotOnSimplex {
            sum,
            expected: n as f64,
        });
    }
    let residual = problem.constraint_residual(z);
    if residual > tol.feas {
        return Err(Error::NotFeasible { residual });
    }

    let mut scaled = problem.a().clone();
    for (j, mut column) in scaled.column_iter_mut().enumerate() {
        column *= z[j];
    }
    KarmarkarProblem::new(scaled, problem.c().component_mul(z))
}

pub(crate) fn check_interior(z: &Vector, threshold: f64) -> Result<()> {
    match z.iter().enumerate().find(|(_, v)| !(**v > threshold)) {
        Some((index, &value)) => Err(Error::NotInterior { index, value }),
        None => Ok(()),
    }
}
