//! `sephide`: verification, bounds, exact PPT solves and hiding-protocol simulation.
//!
//! Exit status is 0 when every check passes, 1 when a mathematical check fails
//! and 2 for usage errors.

mod angle;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "sephide", version, about = "Data-hiding bounds for orthogonal separable ensembles")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every closed-form identity of the example ensemble at one angle.
    Verify {
        #[arg(long, value_parser = angle::parse)]
        theta: f64,
    },
    /// Tabulate f0, f1, their product and the decay bound over an angle grid.
    Sweep {
        #[arg(long, value_parser = angle::parse, default_value = "0")]
        theta_min: f64,
        #[arg(long, value_parser = angle::parse, default_value = "pi/3")]
        theta_max: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Copy number for the thm1_bound_L column.
        #[arg(long = "L", default_value_t = 10)]
        copies: usize,
    },
    /// Global value and certificate bounds for the L-copy parity ensemble.
    Bounds {
        #[arg(long, value_parser = angle::parse)]
        theta: f64,
        #[arg(long = "L")]
        copies: usize,
        /// Copies covered by the certificate (2, or 4 for the squared product certificate).
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Exact PPT value by trace-norm minimization.
    Solve(SolveArgs),
    /// Monte Carlo run of the hiding protocol against a receiver strategy.
    Simulate(SimulateArgs),
    /// Print the example ensemble, its certificate or Λ as JSON.
    Dump {
        #[arg(long, value_parser = angle::parse)]
        theta: f64,
        #[arg(long = "L", default_value_t = 1)]
        copies: usize,
        #[arg(long, value_enum, default_value = "ensemble")]
        what: commands::DumpTarget,
    },
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_parser = angle::parse, required_unless_present = "ensemble", conflicts_with = "ensemble")]
    theta: Option<f64>,
    /// Ensemble JSON (`{eta0, eta1, rho0, rho1}`) instead of the example.
    #[arg(long, value_name = "FILE")]
    ensemble: Option<PathBuf>,
    #[arg(long = "L", default_value_t = 1)]
    copies: usize,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Proximal step relative to the operator norm of Λ.
    #[arg(long)]
    step: Option<f64>,
    /// Include the minimizing operator in JSON output.
    #[arg(long)]
    minimizer: bool,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_parser = angle::parse)]
    theta: f64,
    #[arg(long = "L", default_value_t = 1)]
    copies: usize,
    /// Run every copy number from --L up to this one.
    #[arg(long = "L-max")]
    copies_max: Option<usize>,
    /// `global`, `best` (best local catalog entry per L), `blind`, or a catalog name such as `z0*t+`.
    #[arg(long, default_value = "global")]
    strategy: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { theta } => commands::verify(theta, cli.format),
        Command::Sweep {
            theta_min,
            theta_max,
            points,
            copies,
        } => commands::sweep(theta_min, theta_max, points, copies, cli.format),
        Command::Bounds { theta, copies, k } => commands::bounds(theta, copies, k, cli.format),
        Command::Solve(a) => commands::solve(
            commands::SolveRequest {
                theta: a.theta,
                ensemble: a.ensemble,
                copies: a.copies,
                tol: a.tol,
                max_iters: a.max_iters,
                step: a.step,
                minimizer: a.minimizer,
            },
            cli.format,
        ),
        Command::Simulate(a) => commands::simulate(
            commands::SimulateRequest {
                theta: a.theta,
                copies: a.copies,
                copies_max: a.copies_max,
                strategy: a.strategy,
                trials: a.trials,
                seed: a.seed,
                workers: a.workers,
            },
            cli.format,
        ),
        Command::Dump { theta, copies, what } => commands::dump(theta, copies, what, cli.format),
    };
    let outcome = match result {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(err.code());
        }
    };
    if let Err(err) = output::emit(&outcome.text, cli.out.as_deref()) {
        eprintln!("error: cannot write output: {err}");
        return ExitCode::from(2);
    }
    match outcome.failure {
        None => ExitCode::SUCCESS,
        Some(msg) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
