use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The stacked constraint matrix lost rank. Row indices refer to the
    /// stacked matrix, so index `m` is the all-ones row.
    #[error("constraint rows are linearly dependent (dependent rows: {dependent_rows:?})")]
    RankDeficient { dependent_rows: Vec<usize> },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point is not on the simplex: sum is {sum}, expected {expected}")]
    NotOnSimplex { sum: f64, expected: f64 },

    #[error("point is not strictly interior: coordinate {index} is {value}")]
    NotInterior { index: usize, value: f64 },

    #[error("point violates Ax = 0: max residual {residual}")]
    NotFeasible { residual: f64 },

    #[error("transform denominator is not positive: {0}")]
    ZeroDenominator(f64),

    #[error("objective is not positive: {0}")]
    NonpositiveObjective(f64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("instance too large for vertex enumeration: n = {n} exceeds {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("no basis produced a feasible vertex")]
    EmptyFeasibleSet,

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    Parse(String),
}
