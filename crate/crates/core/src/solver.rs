//! The projective-scaling iteration.
//!
//! From an interior point `x` with `D = diag(x)`, the problem is rescaled so
//! that `x` sits at the centre `e`. The scaled cost `Dc` is projected onto the
//! null space of `[AD; eᵀ]`, giving `c_P`, and the step moves from `e` a
//! distance `αr` against it:
//!
//! ```text
//! z = e − αr·c_P/‖c_P‖        x_next = n·Dz / eᵀDz
//! ```
//!
//! The last line is the inverse projective transform back to the original
//! coordinates. Each step lowers the potential `Φ` by at least `1 − ln 2`
//! when the optimal value is zero, which bounds the iteration count by
//! `(n / (1 − ln 2))·ln(cᵀe / ε)`.

use crate::error::{Error, Result};
use crate::geometry::SimplexGeometry;
use crate::potential::{self, PSI_ONE};
use crate::problem::{CheckOutcome, KarmarkarProblem, Tolerances};
use crate::projection::ProjectionBasis;
use crate::transform::check_interior;
use crate::Vector;

/// Steps whose potential drop falls this far short of `1 − ln 2` are flagged.
pub const DECREASE_FLAG_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Stop once `cᵀx < epsilon`.
    pub epsilon: f64,
    /// Iteration cap; `None` means four times the theoretical bound.
    pub max_iterations: Option<usize>,
    /// Step fraction; `None` means `1/(r+1)`.
    pub alpha_override: Option<f64>,
    pub tolerances: Tolerances,
    pub trace_enabled: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-6,
            max_iterations: None,
            alpha_override: None,
            tolerances: Tolerances::default(),
            trace_enabled: true,
        }
    }
}

impl SolverConfig {
    /// Check the configuration against dimension `n` and return the step geometry.
    pub fn geometry(&self, n: usize) -> Result<SimplexGeometry> {
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        match self.alpha_override {
            Some(alpha) => SimplexGeometry::with_alpha(n, alpha),
            None => SimplexGeometry::new(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    TrivialCentreOptimal,
    ConstantObjectiveOnFeasibleSet,
    IterationLimit,
    NumericalBreakdown,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Converged => "Converged",
            SolveStatus::TrivialCentreOptimal => "TrivialCentreOptimal",
            SolveStatus::ConstantObjectiveOnFeasibleSet => "ConstantObjectiveOnFeasibleSet",
            SolveStatus::IterationLimit => "IterationLimit",
            SolveStatus::NumericalBreakdown => "NumericalBreakdown",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// State after iteration `k` (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub x: Vector,
    pub objective: f64,
    /// `−∞` once the objective reaches zero.
    pub phi: f64,
    /// `Φ(x_{k−1}) − Φ(x_k)`.
    pub delta_phi: f64,
    /// `‖c_P‖` of the step that produced `x`.
    pub projected_gradient_norm: f64,
    pub min_coordinate: f64,
    /// The drop fell short of `1 − ln 2` by more than [`DECREASE_FLAG_MARGIN`].
    /// Only possible when the optimal value is not zero, or from rounding.
    pub below_guaranteed_decrease: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub final_x: Vector,
    pub final_objective: f64,
    pub iterations: usize,
    pub theoretical_bound: u64,
    pub trace: Vec<IterationRecord>,
    /// Count of steps with a sub-guaranteed potential drop.
    pub flagged_steps: usize,
    /// Diagnostic for `NumericalBreakdown`.
    pub message: Option<String>,
}

impl SolveResult {
    pub fn within_bound(&self) -> bool {
        self.iterations as u64 <= self.theoretical_bound
    }
}

/// Quantities computed inside one step, in the scaled coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct StepInfo {
    /// Minimiser over the sphere of radius `αr` around `e`.
    pub z: Vector,
    /// Unit direction `c_P / ‖c_P‖`.
    pub direction: Vector,
    pub projected_gradient_norm: f64,
    /// `(Dc)ᵀe`, equal to `cᵀx`.
    pub scaled_objective_at_centre: f64,
    /// `(Dc)ᵀz`.
    pub scaled_objective_at_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    Moved {
        x_next: Vector,
        info: StepInfo,
    },
    /// `c_P` vanished: the objective is constant on the feasible set.
    ConstantObjective {
        projected_gradient_norm: f64,
    },
}

/// One projective-scaling step from the interior feasible point `x`.
pub fn iterate_once(
    problem: &KarmarkarProblem,
    x: &Vector,
    geometry: &SimplexGeometry,
    tol: &Tolerances,
) -> Result<StepOutcome> {
    let n = problem.n();
    if x.len() != n || geometry.n != n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} entries and geometry dimension {}, expected {n}",
            x.len(),
            geometry.n
        )));
    }
    check_interior(x, 0.0)?;
    let sum = x.sum();
    if (sum - n as f64).abs() > tol.feas * n as f64 {
        return Err(Error::NotOnSimplex {
            sum,
            expected: n as f64,
        });
    }

    let mut stacked = problem.stacked_constraints();
    for (j, mut column) in stacked.column_iter_mut().enumerate() {
        // scale the A block by D; the trailing row of ones stays eᵀ
        let last = column.len() - 1;
        column.rows_mut(0, last).scale_mut(x[j]);
    }
    let basis = ProjectionBasis::new(stacked).map_err(|err| match err {
        Error::RankDeficient { dependent_rows } => Error::NumericalBreakdown(format!(
            "[AD; e^T] lost rank (dependent rows {dependent_rows:?})"
        )),
        other => other,
    })?;

    let scaled_cost = problem.c().component_mul(x);
    // Near the optimum ‖c_P‖ ≪ ‖Dc‖ and the rounding left by one rejection is
    // amplified by the normalisation below; a second pass removes it.
    let projected = basis.reject(&basis.reject(&scaled_cost)?)?;
    let projected_gradient_norm = scaled_norm(&projected);
    let scaled_norm = scaled_norm(&scaled_cost);
    if !projected_gradient_norm.is_finite() || !scaled_norm.is_finite() {
        return Err(Error::NumericalBreakdown(format!(
            "non-finite scaled cost: ||Dc|| = {scaled_norm}, ||c_P|| = {projected_gradient_norm}"
        )));
    }
    if projected_gradient_norm <= tol.gradient * scaled_norm || scaled_norm == 0.0 {
        return Ok(StepOutcome::ConstantObjective {
            projected_gradient_norm,
        });
    }

    let direction = projected / projected_gradient_norm;
    let z = Vector::from_element(n, 1.0) - &direction * geometry.step_radius();
    check_interior(&z, 0.0).map_err(|err| Error::NumericalBreakdown(err.to_string()))?;

    let dz = x.component_mul(&z);
    let denominator = dz.sum();
    if !(denominator > 0.0) {
        return Err(Error::NumericalBreakdown(format!(
            "pull-back denominator e^T Dz = {denominator}"
        )));
    }
    let x_next = dz * (n as f64 / denominator);
    check_interior(&x_next, 0.0).map_err(|err| Error::NumericalBreakdown(err.to_string()))?;

    let info = StepInfo {
        scaled_objective_at_centre: scaled_cost.sum(),
        scaled_objective_at_step: scaled_cost.dot(&z),
        z,
        direction,
        projected_gradient_norm,
    };
    Ok(StepOutcome::Moved { x_next, info })
}

/// Euclidean norm without underflow of the squared entries.
fn scaled_norm(v: &Vector) -> f64 {
    let largest = v.amax();
    if largest == 0.0 || !largest.is_finite() {
        return largest;
    }
    (v / largest).norm() * largest
}

/// `⌈(n / (1 − ln 2))·ln(cᵀe / ε)⌉`, or 0 when `ε ≥ cᵀe`.
pub fn iteration_bound(n: usize, c_dot_e: f64, epsilon: f64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    if !(c_dot_e > 0.0) || !(epsilon > 0.0) || !c_dot_e.is_finite() || !epsilon.is_finite() {
        return Err(Error::Domain(format!(
            "c^T e and epsilon must be positive (got {c_dot_e}, {epsilon})"
        )));
    }
    if epsilon >= c_dot_e {
        return Ok(0);
    }
    let bound = (n as f64 / PSI_ONE) * (c_dot_e.ln() - epsilon.ln());
    Ok(bound.ceil().max(0.0) as u64)
}

/// Run the iteration from the centre `e` until `cᵀx < ε`.
///
/// Invalid problems and configurations are errors. Numerical breakdown is
/// not: it is reported through [`SolveStatus::NumericalBreakdown`] together
/// with the trace collected so far.
pub fn solve(problem: &KarmarkarProblem, config: &SolverConfig) -> Result<SolveResult> {
    let n = problem.n();
    let tol = &config.tolerances;
    let geometry = config.geometry(n)?;

    let report = problem.validate(tol.feas)?;
    if !report.passed() {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.outcome == CheckOutcome::Fail)
            .map(|c| c.name)
            .collect();
        return Err(Error::InvalidProblem(format!(
            "failed checks: {}",
            failed.join(", ")
        )));
    }

    let mut x = problem.ones();
    let c_dot_e = problem.cost_at_centre();
    if c_dot_e <= tol.feas {
        return Ok(SolveResult {
            status: SolveStatus::TrivialCentreOptimal,
            final_objective: c_dot_e,
            final_x: x,
            iterations: 0,
            theoretical_bound: 0,
            trace: Vec::new(),
            flagged_steps: 0,
            message: None,
        });
    }

    let theoretical_bound = iteration_bound(n, c_dot_e, config.epsilon)?;
    let max_iterations = config.max_iterations.unwrap_or_else(|| {
        usize::try_from(theoretical_bound.max(1))
            .unwrap_or(usize::MAX)
            .saturating_mul(4)
    });

    let mut trace = Vec::new();
    let mut flagged_steps = 0;
    let mut current_phi = potential::phi(problem.c(), &x)?.phi;
    let mut iterations = 0;
    let mut message = None;

    let status = loop {
        if problem.objective(&x) < config.epsilon {
            break SolveStatus::Converged;
        }
        if iterations >= max_iterations {
            break SolveStatus::IterationLimit;
        }
        let (x_next, info) = match iterate_once(problem, &x, &geometry, tol) {
            Ok(StepOutcome::Moved { x_next, info }) => (x_next, info),
            Ok(StepOutcome::ConstantObjective { .. }) => {
                break SolveStatus::ConstantObjectiveOnFeasibleSet;
            }
            Err(err) => {
                message = Some(err.to_string());
                break SolveStatus::NumericalBreakdown;
            }
        };
        iterations += 1;

        let next_phi = match potential::phi(problem.c(), &x_next) {
            Ok(value) => value.phi,
            Err(Error::NonpositiveObjective(_)) => f64::NEG_INFINITY,
            Err(err) => {
                message = Some(err.to_string());
                x = x_next;
                break SolveStatus::NumericalBreakdown;
            }
        };
        let delta_phi = current_phi - next_phi;
        let below = delta_phi < PSI_ONE - DECREASE_FLAG_MARGIN;
        if below {
            flagged_steps += 1;
        }
        if config.trace_enabled {
            trace.push(IterationRecord {
                k: iterations,
                objective: problem.objective(&x_next),
                phi: next_phi,
                delta_phi,
                projected_gradient_norm: info.projected_gradient_norm,
                min_coordinate: x_next.min(),
                below_guaranteed_decrease: below,
                x: x_next.clone(),
            });
        }
        current_phi = next_phi;
        x = x_next;
    };

    Ok(SolveResult {
        status,
        final_objective: problem.objective(&x),
        final_x: x,
        iterations,
        theoretical_bound,
        trace,
        flagged_steps,
        message,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Matrix;

    fn example3() -> KarmarkarProblem {
        KarmarkarProblem::from_rows(3, &[vec![1.0, 1.0, -2.0]], &[1.0, 0.0, 0.0]).unwrap()
    }

    /// Straight-line transcription of one step: explicit projection matrix,
    /// dense inverse, no shared code with `iterate_once`.
    fn reference_step(a: &Matrix, c: &Vector, x: &Vector) -> Vector {
        let n = x.len();
        let nf = n as f64;
        let r = (nf / (nf - 1.0)).sqrt();
        let alpha = 1.0 / (r + 1.0);
        let d = Matrix::from_diagonal(x);
        let ad = a * &d;
        let mut p = Matrix::zeros(a.nrows() + 1, n);
        p.rows_mut(0, a.nrows()).copy_from(&ad);
        p.row_mut(a.nrows()).fill(1.0);
        let pp_inv = (&p * p.transpose()).try_inverse().unwrap();
        let rejection = Matrix::identity(n, n) - p.transpose() * pp_inv * &p;
        let cp = rejection * (&d * c);
        let p_hat = &cp / cp.norm();
        let z = Vector::from_element(n, 1.0) - p_hat * (alpha * r);
        let dz = &d * z;
        &dz * nf / dz.sum()
    }

    #[test]
    fn first_step_matches_reference() {
        let p = example3();
        let g = SimplexGeometry::new(3).unwrap();
        let e = p.ones();
        let StepOutcome::Moved { x_next, info } =
            iterate_once(&p, &e, &g, &Tolerances::default()).unwrap()
        else {
            panic!("expected a step");
        };
        let expected = reference_step(p.a(), p.c(), &e);
        assert!((&x_next - expected).amax() < 1e-10);
        assert!((x_next.sum() - 3.0).abs() < 1e-12);
        assert!(p.constraint_residual(&x_next) < 1e-12);
        assert!(x_next.min() > 0.0);
        assert!(((&info.z - &e).norm() - g.step_radius()).abs() < 1e-12);

        let drop =
            potential::phi(p.c(), &e).unwrap().phi - potential::phi(p.c(), &x_next).unwrap().phi;
        assert!(drop >= 0.3068);
    }

    #[test]
    fn zero_cost_is_constant() {
        let p = example3().with_cost(Vector::zeros(3)).unwrap();
        let g = SimplexGeometry::new(3).unwrap();
        assert!(matches!(
            iterate_once(&p, &p.ones(), &g, &Tolerances::default()).unwrap(),
            StepOutcome::ConstantObjective { .. }
        ));
    }

    #[test]
    fn cost_along_ones_is_constant() {
        let p = example3().with_cost(Vector::from_element(3, 2.5)).unwrap();
        let g = SimplexGeometry::new(3).unwrap();
        let StepOutcome::ConstantObjective {
            projected_gradient_norm,
        } = iterate_once(&p, &p.ones(), &g, &Tolerances::default()).unwrap()
        else {
            panic!("expected constant objective");
        };
        assert!(projected_gradient_norm < 1e-12);
        // The solver reports the same thing end to end.
        let result = solve(&p, &SolverConfig::default()).unwrap();
        assert_eq!(result.status, SolveStatus::ConstantObjectiveOnFeasibleSet);
        assert_eq!(result.iterations, 0);
    }

    #[test]
    fn bound_values() {
        assert_eq!(iteration_bound(3, 1.0, 1e-6).unwrap(), 136);
        assert_eq!(iteration_bound(3, 1.0, 1.0).unwrap(), 0);
        assert_eq!(iteration_bound(3, 1.0, 2.0).unwrap(), 0);
        assert_eq!(iteration_bound(10, 10.0, 1e-8).unwrap(), 676);
        assert!(iteration_bound(3, 0.0, 1e-6).is_err());
        assert!(iteration_bound(3, 1.0, -1.0).is_err());
        assert!(iteration_bound(1, 1.0, 1e-6).is_err());
    }

    #[test]
    fn solves_canonical_example() {
        let result = solve(&example3(), &SolverConfig::default()).unwrap();
        assert_eq!(result.status, SolveStatus::Converged);
        assert!(result.final_objective < 1e-6);
        assert_eq!(result.theoretical_bound, 136);
        assert!(result.iterations <= 136);
        assert_eq!(result.trace.len(), result.iterations);
        assert_eq!(result.flagged_steps, 0);
        // approaches the optimal vertex (0, 2, 1)
        assert!((result.final_x[1] - 2.0).abs() < 1e-5);
        assert!((result.final_x[2] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn trivial_and_immediate_cases() {
        let zero = example3().with_cost(Vector::zeros(3)).unwrap();
        let result = solve(&zero, &SolverConfig::default()).unwrap();
        assert_eq!(result.status, SolveStatus::TrivialCentreOptimal);
        assert_eq!(result.iterations, 0);
        assert_eq!(result.final_x, Vector::from_element(3, 1.0));

        let config = SolverConfig {
            epsilon: 2.0,
            ..SolverConfig::default()
        };
        let result = solve(&example3(), &config).unwrap();
        assert_eq!(result.status, SolveStatus::Converged);
        assert_eq!(result.iterations, 0);
        assert_eq!(result.theoretical_bound, 0);
    }

    #[test]
    fn iteration_limit() {
        let config = SolverConfig {
            max_iterations: Some(3),
            ..SolverConfig::default()
        };
        let result = solve(&example3(), &config).unwrap();
        assert_eq!(result.status, SolveStatus::IterationLimit);
        assert_eq!(result.iterations, 3);
    }

    #[test]
    fn objective_constant_on_polytope() {
        // x3 = 1 on the whole feasible set
        let p = example3()
            .with_cost(Vector::from_vec(vec![0.0, 0.0, 1.0]))
            .unwrap();
        let result = solve(&p, &SolverConfig::default()).unwrap();
        assert_eq!(result.status, SolveStatus::ConstantObjectiveOnFeasibleSet);
    }

    #[test]
    fn nonzero_optimum_flags_steps() {
        // optimum over the bare simplex is 3 at (3, 0, 0), so the potential stalls
        let p = KarmarkarProblem::from_rows(3, &[], &[1.0, 2.0, 3.0]).unwrap();
        let config = SolverConfig {
            max_iterations: Some(50),
            ..SolverConfig::default()
        };
        let result = solve(&p, &config).unwrap();
        assert_ne!(result.status, SolveStatus::Converged);
        assert!(result.flagged_steps > 0);
    }

    #[test]
    fn rejects_invalid_inputs() {
        let bad = KarmarkarProblem::from_rows(3, &[vec![1.0, 1.0, 1.0]], &[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            solve(&bad, &SolverConfig::default()),
            Err(Error::InvalidProblem(_))
        ));
        let config = SolverConfig {
            alpha_override: Some(1.0),
            ..SolverConfig::default()
        };
        assert!(matches!(
            solve(&example3(), &config),
            Err(Error::InvalidConfig(_))
        ));
        let config = SolverConfig {
            epsilon: 0.0,
            ..SolverConfig::default()
        };
        assert!(matches!(
            solve(&example3(), &config),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn trace_can_be_disabled() {
        let config = SolverConfig {
            trace_enabled: false,
            ..SolverConfig::default()
        };
        let result = solve(&example3(), &config).unwrap();
        assert!(result.trace.is_empty());
        assert!(result.iterations > 0);
    }
}
