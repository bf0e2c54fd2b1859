//! Orthogonal decomposition of vectors against the row space of a constraint
//! matrix `B` (k × n, k ≤ n):
//!
//! ```text
//! project(v) = Bᵀ(BBᵀ)⁻¹Bv        reject(v) = v − project(v)
//! ```
//!
//! The n × n projection matrix is never formed. The k × k Gram system is
//! factored once with a Cholesky factorization whose pivot test doubles as the
//! rank test, and each application solves it by substitution.
//!
//! Rows are scaled to unit length before the Gram matrix is formed. The row
//! space, and therefore every projection, is unchanged by row scaling, while
//! the rank test becomes independent of the magnitude of individual rows.

use crate::error::{Error, Result};
use crate::{Matrix, Vector};

/// Pivots below this fraction of the largest Gram diagonal mark a dependent row.
pub const PIVOT_THRESHOLD: f64 = 1e-10;

/// Relative residual above which one refinement pass is applied to a Gram solve.
const REFINEMENT_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct ProjectionBasis {
    matrix: Matrix,
    row_scale: Vector,
    scaled: Matrix,
    gram: Matrix,
    factor: Matrix,
}

impl ProjectionBasis {
    /// Factor the Gram system of `b`.
    ///
    /// Fails with [`Error::RankDeficient`] listing every row that depends on
    /// the rows before it.
    pub fn new(b: Matrix) -> Result<Self> {
        let (k, n) = b.shape();
        if k > n {
            return Err(Error::DimensionMismatch(format!(
                "constraint matrix has {k} rows but only {n} columns"
            )));
        }
        if b.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(
                "constraint matrix has non-finite entries".into(),
            ));
        }

        let row_scale = Vector::from_iterator(
            k,
            b.row_iter().map(|row| {
                let norm = row.norm();
                if norm > 0.0 {
                    1.0 / norm
                } else {
                    0.0
                }
            }),
        );
        let mut scaled = b.clone();
        for (i, mut row) in scaled.row_iter_mut().enumerate() {
            row *= row_scale[i];
        }
        let gram = &scaled * scaled.transpose();

        let (factor, dependent_rows) = cholesky_with_rank_test(&gram);
        if !dependent_rows.is_empty() {
            return Err(Error::RankDeficient { dependent_rows });
        }
        Ok(Self {
            matrix: b,
            row_scale,
            scaled,
            gram,
            factor,
        })
    }

    /// Number of constraint rows.
    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    /// The constraint matrix as supplied.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `BBᵀ` reconstructed from the factorization.
    pub fn gram(&self) -> Matrix {
        let llt = &self.factor * self.factor.transpose();
        Matrix::from_fn(self.rows(), self.rows(), |i, j| {
            llt[(i, j)] / (self.row_scale[i] * self.row_scale[j])
        })
    }

    /// Relative Frobenius error of `LLᵀ` against the (row-scaled) Gram matrix.
    pub fn factorization_error(&self) -> f64 {
        let diff = &self.factor * self.factor.transpose() - &self.gram;
        let scale = self.gram.norm();
        if scale > 0.0 {
            diff.norm() / scale
        } else {
            diff.norm()
        }
    }

    /// Null-space component `v − Bᵀ(BBᵀ)⁻¹Bv`.
    pub fn reject(&self, v: &Vector) -> Result<Vector> {
        self.check_len(v)?;
        let w = &self.scaled * v;
        let y = self.solve_gram(&w);
        Ok(v - self.scaled.transpose() * y)
    }

    /// Row-space component `Bᵀ(BBᵀ)⁻¹Bv`.
    pub fn project(&self, v: &Vector) -> Result<Vector> {
        Ok(v - self.reject(v)?)
    }

    fn check_len(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} entries, basis has {} columns",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    fn solve_gram(&self, w: &Vector) -> Vector {
        let mut y = self.substitute(w);
        let residual = w - &self.gram * &y;
        if residual.norm() > REFINEMENT_THRESHOLD * w.norm() {
            y += self.substitute(&residual);
        }
        y
    }

    /// Solve `LLᵀy = w` by forward then backward substitution.
    fn substitute(&self, w: &Vector) -> Vector {
        let l = &self.factor;
        let k = l.nrows();
        let mut y = w.clone();
        for i in 0..k {
            let mut s = y[i];
            for j in 0..i {
                s -= l[(i, j)] * y[j];
            }
            y[i] = s / l[(i, i)];
        }
        for i in (0..k).rev() {
            let mut s = y[i];
            for j in i + 1..k {
                s -= l[(j, i)] * y[j];
            }
            y[i] = s / l[(i, i)];
        }
        y
    }
}

/// Rows of `b` that are linearly dependent on earlier rows, under the same
/// pivot policy used by [`ProjectionBasis::new`]. Empty for full row rank.
pub fn dependent_rows(b: &Matrix) -> Vec<usize> {
    let mut scaled = b.clone();
    for mut row in scaled.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        }
    }
    let gram = &scaled * scaled.transpose();
    cholesky_with_rank_test(&gram).1
}

/// Cholesky factorization that skips rows whose pivot falls below
/// `PIVOT_THRESHOLD` times the largest diagonal entry. Skipped rows are
/// returned; the factor is only meaningful when none were skipped.
fn cholesky_with_rank_test(gram: &Matrix) -> (Matrix, Vec<usize>) {
    let k = gram.nrows();
    let reference = (0..k).map(|i| gram[(i, i)]).fold(0.0_f64, f64::max);
    let mut l = Matrix::zeros(k, k);
    let mut accepted: Vec<usize> = Vec::with_capacity(k);
    let mut dependent = Vec::new();

    for j in 0..k {
        let mut pivot = gram[(j, j)];
        for &p in &accepted {
            pivot -= l[(j, p)] * l[(j, p)];
        }
        if !(pivot > PIVOT_THRESHOLD * reference) {
            dependent.push(j);
            continue;
        }
        let d = pivot.sqrt();
        l[(j, j)] = d;
        for i in j + 1..k {
            let mut s = gram[(i, j)];
            for &p in &accepted {
                s -= l[(i, p)] * l[(j, p)];
            }
            l[(i, j)] = s / d;
        }
        accepted.push(j);
    }
    (l, dependent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ones_row(n: usize) -> Matrix {
        Matrix::from_element(1, n, 1.0)
    }

    #[test]
    fn single_ones_row() {
        let basis = ProjectionBasis::new(ones_row(3)).unwrap();
        assert_relative_eq!(basis.gram()[(0, 0)], 3.0, max_relative = 1e-14);
        let v = Vector::from_vec(vec![1.0, 0.0, 0.0]);
        let e = basis.reject(&v).unwrap();
        let p = basis.project(&v).unwrap();
        for (got, want) in e.iter().zip([2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        for got in p.iter() {
            assert!((got - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gram_of_difference_rows() {
        let b = Matrix::from_row_slice(2, 3, &[1.0, -1.0, 0.0, 0.0, 1.0, -1.0]);
        let basis = ProjectionBasis::new(b).unwrap();
        let expected = Matrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 2.0]);
        assert!((basis.gram() - expected).norm() < 1e-14);
        assert!(basis.factorization_error() < 1e-10);
    }

    #[test]
    fn proportional_rows_are_rank_deficient() {
        let b = Matrix::from_row_slice(2, 3, &[1.0, 1.0, 1.0, 2.0, 2.0, 2.0]);
        assert_eq!(
            ProjectionBasis::new(b).unwrap_err(),
            Error::RankDeficient {
                dependent_rows: vec![1]
            }
        );
    }

    #[test]
    fn zero_row_is_rank_deficient() {
        let b = Matrix::from_row_slice(2, 3, &[1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            ProjectionBasis::new(b),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn dependent_rows_lists_every_redundant_row() {
        let b = Matrix::from_row_slice(
            4,
            4,
            &[
                1.0, -1.0, 0.0, 0.0, //
                2.0, -2.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, -1.0, //
                1.0, -1.0, 1.0, -1.0,
            ],
        );
        assert_eq!(dependent_rows(&b), vec![1, 3]);
    }

    #[test]
    fn shape_errors() {
        let wide = Matrix::from_element(4, 3, 1.0);
        assert!(matches!(
            ProjectionBasis::new(wide),
            Err(Error::DimensionMismatch(_))
        ));
        let basis = ProjectionBasis::new(ones_row(3)).unwrap();
        assert!(matches!(
            basis.reject(&Vector::zeros(4)),
            Err(Error::DimensionMismatch(_))
        ));
        let mut bad = ones_row(3);
        bad[(0, 1)] = f64::NAN;
        assert!(matches!(ProjectionBasis::new(bad), Err(Error::Domain(_))));
    }

    #[test]
    fn row_space_is_annihilated_and_null_space_fixed() {
        let b = Matrix::from_row_slice(2, 4, &[1.0, 2.0, -1.0, 0.5, 0.0, 1.0, 1.0, -3.0]);
        let basis = ProjectionBasis::new(b.clone()).unwrap();
        let in_row_space = b.transpose() * Vector::from_vec(vec![0.7, -1.3]);
        assert!(basis.reject(&in_row_space).unwrap().norm() < 1e-10);

        let null = basis
            .reject(&Vector::from_vec(vec![0.3, -2.0, 1.0, 4.0]))
            .unwrap();
        let again = basis.reject(&null).unwrap();
        assert!((&again - &null).amax() < 1e-12);
        assert!(basis.project(&null).unwrap().amax() < 1e-12);
    }
}
