//! The potential `Φ(x) = n·ln(cᵀx) − Σ ln x_i` and the auxiliary function
//! `Ψ(t) = t − ln(1 + t)` used to bound its decrease. All logarithms are
//! natural.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::Vector;

/// `Ψ(1) = 1 − ln 2`, the guaranteed potential drop per iteration.
pub const PSI_ONE: f64 = 1.0 - LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialValue {
    pub phi: f64,
    pub objective: f64,
    pub log_barrier_sum: f64,
}

/// Evaluate `Φ(x)` for positive `x`.
///
/// A nonpositive `cᵀx` is reported as [`Error::NonpositiveObjective`]; for a
/// zero-optimum problem that means the optimum has been reached.
pub fn phi(c: &Vector, x: &Vector) -> Result<PotentialValue> {
    if c.len() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "cost has {} entries, point has {}",
            c.len(),
            x.len()
        )));
    }
    if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::NotInterior { index, value });
    }
    let objective = c.dot(x);
    if !(objective > 0.0) {
        return Err(Error::NonpositiveObjective(objective));
    }
    let log_barrier_sum: f64 = x.iter().map(|v| v.ln()).sum();
    Ok(PotentialValue {
        phi: x.len() as f64 * objective.ln() - log_barrier_sum,
        objective,
        log_barrier_sum,
    })
}

/// `Ψ(t) = t − ln(1 + t)` for `t > −1`.
pub fn psi(t: f64) -> Result<f64> {
    if !(t > -1.0) {
        return Err(Error::Domain(format!("psi requires t > -1, got {t}")));
    }
    Ok(t - t.ln_1p())
}

/// `exp(Φ/n)`, which bounds `cᵀx` from above for any point of the simplex
/// `eᵀx = n` with potential `Φ`: there `Σ ln x_i ≤ 0` by AM–GM, so
/// `Φ ≥ n·ln(cᵀx)`, with equality only at the centre.
pub fn objective_bound_from_phi(phi: f64, n: usize) -> f64 {
    (phi / n as f64).exp()
}

/// Check `Ψ(−|a|t) ≥ Σ Ψ(b_i·t)` given `a² = Σ b_i²` and `t > 0`.
///
/// The comparison allows for the rounding error of evaluating each `Ψ`
/// term, which is of order `ε·|argument|`.
pub fn psi_majorization_check(a: f64, bs: &[f64], t: f64) -> Result<bool> {
    if !(t > 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "t must be positive, got {t}"
        )));
    }
    let a_sq = a * a;
    let b_sq: f64 = bs.iter().map(|b| b * b).sum();
    if (a_sq - b_sq).abs() > 1e-10 * a_sq.max(b_sq) {
        return Err(Error::PreconditionViolated(format!(
            "a^2 = {a_sq} differs from sum of b_i^2 = {b_sq}"
        )));
    }
    let lhs_arg = -a.abs() * t;
    if !(lhs_arg > -1.0) || bs.iter().any(|b| !(b * t > -1.0)) {
        return Err(Error::PreconditionViolated(
            "every argument of psi must exceed -1".into(),
        ));
    }
    let lhs = psi(lhs_arg)?;
    let mut rhs = 0.0;
    for b in bs {
        rhs += psi(b * t)?;
    }
    let slack = 8.0 * f64::EPSILON * a.abs() * t * (bs.len() + 1) as f64;
    Ok(lhs >= rhs - slack)
}
