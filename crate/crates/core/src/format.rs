//! File formats: JSON problem files and the per-iteration trace CSV.
//!
//! Problem file:
//!
//! ```json
//! {"n": 3, "m": 1, "A": [[1, 1, -2]], "c": [1, 0, 0], "comment": "optional"}
//! ```
//!
//! Trace CSV header:
//!
//! ```text
//! iter,objective,phi,delta_phi,projected_gradient_norm,min_coordinate
//! ```
//!
//! All floating-point output uses 17 significant digits in scientific
//! notation, so identical runs produce identical bytes.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::KarmarkarProblem;
use crate::solver::IterationRecord;
use crate::Vector;

pub const TRACE_HEADER: &str =
    "iter,objective,phi,delta_phi,projected_gradient_norm,min_coordinate";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub c: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl ProblemFile {
    pub fn from_problem(problem: &KarmarkarProblem, comment: Option<String>) -> Self {
        Self {
            n: problem.n(),
            m: problem.m(),
            a: problem
                .a()
                .row_iter()
                .map(|row| row.iter().copied().collect())
                .collect(),
            c: problem.c().iter().copied().collect(),
            comment,
        }
    }

    /// Check declared sizes and finiteness, naming the offending field.
    pub fn into_problem(self) -> Result<KarmarkarProblem> {
        let Self { n, m, a, c, .. } = self;
        if n < 2 {
            return Err(Error::Parse(format!(
                "field \"n\": must be at least 2, got {n}"
            )));
        }
        if a.len() != m {
            return Err(Error::Parse(format!(
                "field \"A\": expected m = {m} rows, got {}",
                a.len()
            )));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "field \"A\"[{i}]: expected n = {n} entries, got {}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Parse(format!(
                    "field \"A\"[{i}][{j}]: non-finite value"
                )));
            }
        }
        if c.len() != n {
            return Err(Error::Parse(format!(
                "field \"c\": expected n = {n} entries, got {}",
                c.len()
            )));
        }
        if let Some(j) = c.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse(format!("field \"c\"[{j}]: non-finite value")));
        }
        KarmarkarProblem::from_rows(n, &a, &c)
    }
}

pub fn parse_problem(text: &str) -> Result<KarmarkarProblem> {
    let file: ProblemFile = serde_json::from_str(text)
        .map_err(|err| Error::Parse(format!("invalid problem file: {err}")))?;
    file.into_problem()
}

pub fn problem_to_json(problem: &KarmarkarProblem, comment: Option<String>) -> String {
    serde_json::to_string_pretty(&ProblemFile::from_problem(problem, comment))
        .expect("problem data is finite and serialisable")
}

/// A float with 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_vector(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(|&x| fmt_float(x)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn write_trace_csv<W: Write>(records: &[IterationRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.k,
            fmt_float(r.objective),
            fmt_float(r.phi),
            fmt_float(r.delta_phi),
            fmt_float(r.projected_gradient_norm),
            fmt_float(r.min_coordinate),
        )?;
    }
    out.flush()
}
