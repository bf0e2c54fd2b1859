//! Command-line front end: `solve`, `check`, `bound`, `vertices`.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use karmarkar::format::{self, fmt_float, fmt_vector};
use karmarkar::geometry::SimplexGeometry;
use karmarkar::oracle;
use karmarkar::potential::PSI_ONE;
use karmarkar::problem::{Tolerances, ValidationReport};
use karmarkar::solver::{self, SolveStatus, SolverConfig};
use karmarkar::{Error, KarmarkarProblem};

#[derive(Parser)]
#[command(
    name = "karmarkar",
    version,
    about = "Projective-scaling LP solver for canonical-form problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the iteration from the centre until c^T x < epsilon
    Solve(SolveArgs),
    /// Check the canonical-form assumptions
    Check { path: PathBuf },
    /// Print the geometry constants and the iteration bound
    Bound {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
    },
    /// Enumerate the vertices of the feasible set (n <= 16)
    Vertices {
        path: PathBuf,
        /// Also report the optimum of c^T x over the vertices
        #[arg(long)]
        cost: bool,
    },
}

#[derive(Args)]
struct SolveArgs {
    path: PathBuf,
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Iteration cap; 0 means four times the theoretical bound
    #[arg(long = "max-iter", default_value_t = 0)]
    max_iter: usize,
    /// Step fraction, or "auto" for 1/(r+1)
    #[arg(long, default_value = "auto")]
    alpha: String,
    /// Write the per-iteration trace as CSV
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print a JSON result object instead of text
    #[arg(long)]
    json: bool,
}

/// Exit code for a finished solve.
fn status_code(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Converged | SolveStatus::TrivialCentreOptimal => 0,
        SolveStatus::IterationLimit => 2,
        SolveStatus::ConstantObjectiveOnFeasibleSet => 3,
        SolveStatus::NumericalBreakdown => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Check { path } => cmd_check(&path),
        Command::Bound { path, epsilon } => cmd_bound(&path, epsilon),
        Command::Vertices { path, cost } => cmd_vertices(&path, cost),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<KarmarkarProblem, String> {
    let text = fs::read_to_string(path).map_err(|err| format!("{}: {err}", path.display()))?;
    format::parse_problem(&text).map_err(|err| format!("{}: {err}", path.display()))
}

fn cmd_solve(args: SolveArgs) -> Result<u8, String> {
    let alpha_override = match args.alpha.as_str() {
        "auto" => None,
        text => Some(
            text.parse::<f64>()
                .map_err(|_| format!("--alpha: expected a number or \"auto\", got {text:?}"))?,
        ),
    };
    if args.epsilon <= 0.0 || !args.epsilon.is_finite() {
        return Err(format!("--epsilon: must be positive, got {}", args.epsilon));
    }
    let problem = load(&args.path)?;
    let config = SolverConfig {
        epsilon: args.epsilon,
        max_iterations: (args.max_iter > 0).then_some(args.max_iter),
        alpha_override,
        tolerances: Tolerances::default(),
        trace_enabled: args.trace.is_some(),
    };
    config
        .geometry(problem.n())
        .map_err(|err| format!("--alpha: {err}"))?;

    let result = solver::solve(&problem, &config).map_err(|err| err.to_string())?;

    if let Some(path) = &args.trace {
        let file = File::create(path).map_err(|err| format!("{}: {err}", path.display()))?;
        format::write_trace_csv(&result.trace, BufWriter::new(file))
            .map_err(|err| format!("{}: {err}", path.display()))?;
    }

    if args.json {
        let value = json!({
            "status": result.status.as_str(),
            "objective": result.final_objective,
            "x": result.final_x.iter().collect::<Vec<_>>(),
            "iterations": result.iterations,
            "theoretical_bound": result.theoretical_bound,
            "within_bound": result.within_bound(),
            "flagged_steps": result.flagged_steps,
            "message": result.message,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("result is serialisable")
        );
    } else {
        println!("status: {}", result.status);
        println!("objective: {}", fmt_float(result.final_objective));
        println!("x: {}", fmt_vector(&result.final_x));
        println!("iterations: {}", result.iterations);
        println!("theoretical_bound: {}", result.theoretical_bound);
        println!("flagged_steps: {}", result.flagged_steps);
        if let Some(msg) = &result.message {
            println!("message: {msg}");
        }
    }
    Ok(status_code(result.status))
}

fn cmd_check(path: &Path) -> Result<u8, String> {
    let problem = load(path)?;
    let report = ValidationReport::assess(&problem, Tolerances::default().feas);
    print!("{report}");
    if report.passed() {
        println!("result: PASS");
        Ok(0)
    } else {
        println!("result: FAIL");
        Ok(1)
    }
}

fn cmd_bound(path: &Path, epsilon: f64) -> Result<u8, String> {
    let problem = load(path)?;
    let n = problem.n();
    let geometry = SimplexGeometry::new(n).map_err(|err| err.to_string())?;
    let c_dot_e = problem.cost_at_centre();
    let bound = solver::iteration_bound(n, c_dot_e, epsilon).map_err(|err| err.to_string())?;
    println!("n: {n}");
    println!("c^T e: {}", fmt_float(c_dot_e));
    println!("epsilon: {}", fmt_float(epsilon));
    println!("R: {}", fmt_float(geometry.outer_radius));
    println!("r: {}", fmt_float(geometry.inner_radius));
    println!("alpha: {}", fmt_float(geometry.alpha));
    println!("psi(1): {}", fmt_float(PSI_ONE));
    println!("bound: {bound}");
    Ok(0)
}

fn cmd_vertices(path: &Path, cost: bool) -> Result<u8, String> {
    let problem = load(path)?;
    let set = oracle::enumerate_vertices(&problem).map_err(|err| match err {
        Error::TooLarge { .. } => format!("TooLarge: {err}"),
        other => other.to_string(),
    })?;
    let vertices: Vec<Vec<f64>> = set
        .vertices
        .iter()
        .map(|v| v.iter().copied().collect())
        .collect();
    let value = if cost {
        json!({
            "vertices": vertices,
            "optimum_value": set.optimum_value,
            "optimum_vertex": set.optimum_vertex.iter().collect::<Vec<_>>(),
        })
    } else {
        json!({ "vertices": vertices })
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("vertices are serialisable")
    );
    Ok(0)
}
