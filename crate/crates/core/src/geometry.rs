//! Closed-form geometry of the standard simplex `{x : eᵀx = n, x ≥ 0}`.
//!
//! The simplex is centred at `e`. Its circumscribed sphere passes through the
//! vertices `n·e_i` and has radius `R = √(n(n−1))`; its inscribed sphere
//! touches each facet at `(0, w, …, w)` with `w = n/(n−1)` and has radius
//! `r = √(n/(n−1))`. The iteration steps a fraction `α` of the way to the
//! inscribed sphere.

use crate::error::{Error, Result};

/// Radius of the smallest sphere centred at `e` that contains the simplex.
pub fn outer_radius(n: usize) -> Result<f64> {
    check_dimension(n)?;
    let n = n as f64;
    Ok((n * (n - 1.0)).sqrt())
}

/// Radius of the largest sphere centred at `e` contained in the simplex.
pub fn inner_radius(n: usize) -> Result<f64> {
    check_dimension(n)?;
    let n = n as f64;
    Ok((n / (n - 1.0)).sqrt())
}

/// Step fraction `1/(r+1)`, the maximiser of the guaranteed potential drop.
pub fn step_alpha(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "inner radius must be positive, got {r}"
        )));
    }
    Ok(1.0 / (r + 1.0))
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexGeometry {
    pub n: usize,
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub alpha: f64,
}

impl SimplexGeometry {
    /// Geometry with the default step fraction `α = 1/(r+1)`.
    pub fn new(n: usize) -> Result<Self> {
        let inner = inner_radius(n)?;
        Self::with_alpha(n, step_alpha(inner)?)
    }

    /// Geometry with a caller-chosen step fraction. Requires `0 < α·r < 1`
    /// so that every step stays strictly inside the simplex.
    pub fn with_alpha(n: usize, alpha: f64) -> Result<Self> {
        let outer = outer_radius(n)?;
        let inner = inner_radius(n)?;
        if !(alpha > 0.0) || !(alpha * inner < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "step fraction must satisfy 0 < alpha*r < 1 (alpha = {alpha}, r = {inner})"
            )));
        }
        Ok(Self {
            n,
            outer_radius: outer,
            inner_radius: inner,
            alpha,
        })
    }

    /// Radius `α·r` of the sphere the step is taken on.
    pub fn step_radius(&self) -> f64 {
        self.alpha * self.inner_radius
    }

    /// Guaranteed per-step contraction factor `1 − αr/R` of the scaled objective.
    pub fn contraction_factor(&self) -> f64 {
        1.0 - self.alpha * self.inner_radius / self.outer_radius
    }
}
