//! Brute-force vertex enumeration for small instances.
//!
//! Every vertex of `{Ax = 0, eᵀx = n, x ≥ 0}` is a basic feasible solution:
//! pick `m+1` columns, solve the square system `[A; eᵀ]_S x_S = (0, …, 0, n)`
//! with the other coordinates at zero, and keep nonnegative solutions. The
//! feasible set lies in the simplex, so it is bounded and the minimum of any
//! linear cost is attained at one of these points. Enumeration is exhaustive
//! over `C(n, m+1)` column subsets and is guarded at `n ≤ 16`.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problem::KarmarkarProblem;
use crate::projection::PIVOT_THRESHOLD;
use crate::{Matrix, Vector};

pub const MAX_ENUMERATION_DIM: usize = 16;

/// Two vertices closer than this in every coordinate are the same vertex.
pub const DEDUP_TOLERANCE: f64 = 1e-9;

/// Basic solutions with a coordinate below `−NEGATIVITY_SLACK` are infeasible;
/// coordinates within the slack are clamped to zero.
const NEGATIVITY_SLACK: f64 = 1e-10;

const MAX_REDRAWS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet {
    /// Sorted lexicographically.
    pub vertices: Vec<Vector>,
    pub optimum_value: f64,
    pub optimum_vertex: Vector,
}

pub fn enumerate_vertices(problem: &KarmarkarProblem) -> Result<VertexSet> {
    let n = problem.n();
    if n > MAX_ENUMERATION_DIM {
        return Err(Error::TooLarge {
            n,
            limit: MAX_ENUMERATION_DIM,
        });
    }
    let stacked = problem.stacked_constraints();
    let k = stacked.nrows();
    if k > n {
        return Err(Error::DimensionMismatch(format!(
            "{k} constraints exceed {n} variables"
        )));
    }
    let mut rhs = Vector::zeros(k);
    rhs[k - 1] = n as f64;

    let mut vertices: Vec<Vector> = Vec::new();
    for columns in (0..n).combinations(k) {
        let Some(basic) = solve_basis(&stacked, &columns, &rhs) else {
            continue;
        };
        if basic.iter().any(|&v| v < -NEGATIVITY_SLACK) {
            continue;
        }
        let mut vertex = Vector::zeros(n);
        for (&j, &v) in columns.iter().zip(basic.iter()) {
            vertex[j] = v.max(0.0);
        }
        if !vertices
            .iter()
            .any(|seen| (seen - &vertex).amax() <= DEDUP_TOLERANCE)
        {
            vertices.push(vertex);
        }
    }
    if vertices.is_empty() {
        return Err(Error::EmptyFeasibleSet);
    }
    vertices.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let (best, optimum_value) = vertices
        .iter()
        .map(|v| problem.objective(v))
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, value)| {
            if value < acc.1 {
                (i, value)
            } else {
                acc
            }
        });
    let optimum_vertex = vertices[best].clone();
    Ok(VertexSet {
        vertices,
        optimum_value,
        optimum_vertex,
    })
}

/// Solve the square system on `columns`, or `None` for a singular basis.
fn solve_basis(stacked: &Matrix, columns: &[usize], rhs: &Vector) -> Option<Vector> {
    let square = stacked.select_columns(columns);
    let lu = square.lu();
    let pivots = lu.u().diagonal().map(f64::abs);
    let largest = pivots.max();
    if !(pivots.min() > PIVOT_THRESHOLD * largest) {
        return None;
    }
    lu.solve(rhs)
}

/// True when the minimum of `cᵀx` over the feasible set is within `tol` of zero.
pub fn certify_zero_optimum(problem: &KarmarkarProblem, tol: f64) -> Result<bool> {
    Ok(enumerate_vertices(problem)?.optimum_value.abs() <= tol)
}

/// Shift the cost by a multiple of `e` so that the optimum becomes zero.
///
/// On the simplex `cᵀx + μ·eᵀx = cᵀx + μn`, so subtracting `(v*/n)·e` lowers
/// every objective value by the optimum `v*` and leaves the minimisers alone.
pub fn shift_to_zero_optimum(problem: &KarmarkarProblem) -> Result<KarmarkarProblem> {
    let optimum = enumerate_vertices(problem)?.optimum_value;
    let shift = optimum / problem.n() as f64;
    problem.with_cost(problem.c().map(|v| v - shift))
}

/// Random zero-optimum instance with `m` constraint rows in dimension `n`.
///
/// Rows of `A` are drawn uniformly from `[−1, 1]` and centred so that
/// `Ae = 0`; the cost is a random vector shifted by
/// [`shift_to_zero_optimum`]. Draws that are rank deficient or have
/// `cᵀe ≈ 0` are repeated.
pub fn make_zero_optimum_instance(seed: u64, n: usize, m: usize) -> Result<KarmarkarProblem> {
    if !(m + 1 < n && n <= MAX_ENUMERATION_DIM) {
        return Err(Error::PreconditionViolated(format!(
            "need m + 1 < n <= {MAX_ENUMERATION_DIM}, got m = {m}, n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_dependent = Vec::new();
    for _ in 0..MAX_REDRAWS {
        let mut a = Matrix::from_fn(m, n, |_, _| rng.random_range(-1.0..1.0));
        for mut row in a.row_iter_mut() {
            let mean = row.mean();
            row.add_scalar_mut(-mean);
        }
        let c0 = Vector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let problem = KarmarkarProblem::new(a, c0)?;
        match problem.validate(1e-9) {
            Ok(_) => {}
            Err(Error::RankDeficient { dependent_rows }) => {
                last_dependent = dependent_rows;
                continue;
            }
            Err(err) => return Err(err),
        }
        let shifted = shift_to_zero_optimum(&problem)?;
        if shifted.cost_at_centre() > 1e-9 {
            return Ok(shifted);
        }
    }
    Err(Error::RankDeficient {
        dependent_rows: last_dependent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    fn example3(c: &[f64]) -> KarmarkarProblem {
        KarmarkarProblem::from_rows(3, &[vec![1.0, 1.0, -2.0]], c).unwrap()
    }

    fn close(a: &Vector, b: &Vector) -> bool {
        (a - b).amax() < 1e-12
    }

    #[test]
    fn canonical_example_has_two_vertices() {
        let set = enumerate_vertices(&example3(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(set.vertices.len(), 2);
        assert!(close(&set.vertices[0], &v(&[0.0, 2.0, 1.0])));
        assert!(close(&set.vertices[1], &v(&[2.0, 0.0, 1.0])));
        assert!(set.optimum_value.abs() < 1e-12);
        assert!(close(&set.optimum_vertex, &v(&[0.0, 2.0, 1.0])));
    }

    #[test]
    fn bare_simplex_has_corner_vertices() {
        let p = KarmarkarProblem::from_rows(3, &[], &[1.0, 1.0, 1.0]).unwrap();
        let set = enumerate_vertices(&p).unwrap();
        assert_eq!(
            set.vertices,
            vec![
                v(&[0.0, 0.0, 3.0]),
                v(&[0.0, 3.0, 0.0]),
                v(&[3.0, 0.0, 0.0])
            ]
        );
    }

    #[test]
    fn certification() {
        assert!(certify_zero_optimum(&example3(&[1.0, 0.0, 0.0]), 1e-9).unwrap());
        assert!(!certify_zero_optimum(&example3(&[0.0, 0.0, 1.0]), 1e-9).unwrap());
        assert!(certify_zero_optimum(&example3(&[0.0, 0.0, 0.0]), 1e-9).unwrap());
        let set = enumerate_vertices(&example3(&[0.0, 0.0, 1.0])).unwrap();
        assert!((set.optimum_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_large() {
        let p = KarmarkarProblem::from_rows(20, &[], &[1.0; 20]).unwrap();
        assert_eq!(
            enumerate_vertices(&p).unwrap_err(),
            Error::TooLarge {
                n: 20,
                limit: MAX_ENUMERATION_DIM
            }
        );
    }

    #[test]
    fn shift_on_bare_simplex() {
        let p = KarmarkarProblem::from_rows(3, &[], &[3.0, 1.0, 2.0]).unwrap();
        let before = enumerate_vertices(&p).unwrap();
        assert_eq!(before.optimum_value, 3.0);
        assert_eq!(before.optimum_vertex, v(&[0.0, 3.0, 0.0]));
        let shifted = shift_to_zero_optimum(&p).unwrap();
        assert!(close(shifted.c(), &v(&[2.0, 0.0, 1.0])));
        let after = enumerate_vertices(&shifted).unwrap();
        assert_eq!(after.optimum_value, 0.0);
        assert_eq!(after.optimum_vertex, before.optimum_vertex);
    }

    #[test]
    fn degenerate_vertices_are_merged() {
        // (0, 0, 4, 0) is produced by both the {x1, x3} and {x2, x3} bases
        let p = KarmarkarProblem::from_rows(4, &[vec![1.0, -1.0, 0.0, 0.0]], &[1.0, 1.0, 0.0, 0.0])
            .unwrap();
        let set = enumerate_vertices(&p).unwrap();
        for (i, a) in set.vertices.iter().enumerate() {
            for b in &set.vertices[i + 1..] {
                assert!((a - b).amax() > DEDUP_TOLERANCE);
            }
        }
        assert_eq!(set.vertices.len(), 3);
    }

    #[test]
    fn generated_instances_have_zero_optimum() {
        for seed in 0..10 {
            let p = make_zero_optimum_instance(seed, 6, 2).unwrap();
            assert!(certify_zero_optimum(&p, 1e-9).unwrap());
            assert!(p.cost_at_centre() > 0.0);
            assert!(p.constraint_residual(&p.ones()) < 1e-12);
        }
        assert_eq!(
            make_zero_optimum_instance(7, 5, 1).unwrap(),
            make_zero_optimum_instance(7, 5, 1).unwrap()
        );
    }

    #[test]
    fn generator_preconditions() {
        assert!(make_zero_optimum_instance(0, 3, 2).is_err());
        assert!(make_zero_optimum_instance(0, 17, 1).is_err());
        assert!(make_zero_optimum_instance(0, 3, 0).is_ok());
    }
}
