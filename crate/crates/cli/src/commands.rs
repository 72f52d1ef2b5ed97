use std::fmt;
use std::fs;
use std::path::PathBuf;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use sephide_core::bounds::{example_bound_report, example_certificate, tilde_h, BoundReport, Certificate};
use sephide_core::ensemble::{example_h, f0, f1};
use sephide_core::protocol::{best_strategy, run_protocol_parallel};
use sephide_core::{
    example_ensemble, solve_ppt, verify_example, Error, HidingInstance, SolverConfig, Strategy, ThetaInstance,
    TwoStateEnsemble,
};

use crate::output::{csv_table, json_text, Cell, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Math(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::HypothesisViolated(_)
            | Error::NonConvergence { .. }
            | Error::MaxIterationsExceeded(_)
            | Error::NotPtInvariant { .. }
            | Error::ResidualTooLarge { .. }
            | Error::DegenerateBranch { .. } => CliError::Math(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Rendered output plus the failed check, if any.
pub struct Outcome {
    pub text: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, failure: None }
    }
}

type CmdResult = Result<Outcome, CliError>;

fn theta_instance(theta: f64) -> Result<ThetaInstance, CliError> {
    Ok(ThetaInstance::new(theta)?)
}

fn positive(name: &str, n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage(format!("--{name} must be at least 1")));
    }
    Ok(())
}

pub fn verify(theta: f64, format: Format) -> CmdResult {
    let report = verify_example(theta_instance(theta)?)?;
    let text = match format {
        Format::Json => json_text(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = report
                .residuals
                .iter()
                .map(|r| vec![Cell::Text(r.name.into()), Cell::Float(r.value), Cell::Bool(r.passed)])
                .chain([
                    vec![Cell::Text("f0".into()), Cell::Float(report.f0), Cell::Bool(true)],
                    vec![Cell::Text("f1".into()), Cell::Float(report.f1), Cell::Bool(true)],
                    vec![Cell::Text("product".into()), Cell::Float(report.product), Cell::Bool(report.hiding_ok)],
                ])
                .collect();
            csv_table(&["check", "value", "passed"], &rows)
        }
    };
    let failure = report
        .first_failure()
        .map(|r| format!("{} residual {:e} exceeds {:e}", r.name, r.value, report.tolerance));
    Ok(Outcome { text, failure })
}

#[derive(Serialize)]
struct SweepRow {
    theta: f64,
    f0: f64,
    f1: f64,
    product: f64,
    hiding_ok: bool,
    #[serde(rename = "thm1_bound_L")]
    thm1_bound: Option<f64>,
}

pub const SWEEP_HEADER: [&str; 6] = ["theta", "f0", "f1", "product", "hiding_ok", "thm1_bound_L"];

pub fn sweep(theta_min: f64, theta_max: f64, points: usize, copies: usize, format: Format) -> CmdResult {
    let lo = theta_instance(theta_min)?;
    theta_instance(theta_max)?;
    positive("L", copies)?;
    if points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if theta_max < theta_min {
        return Err(CliError::Usage("--theta-max is below --theta-min".into()));
    }
    let step = (theta_max - theta_min) / (points - 1) as f64;
    let rows: Vec<SweepRow> = (0..points)
        .into_par_iter()
        .map(|i| {
            let theta = if i + 1 == points { theta_max } else { lo.theta() + step * i as f64 };
            let t = theta_instance(theta)?;
            let (a, b) = (f0(t), f1(t));
            let report = example_bound_report(t, copies)?;
            Ok(SweepRow {
                theta,
                f0: a,
                f1: b,
                product: 4.0 * a * b,
                hiding_ok: 4.0 * a * b < 1.0,
                thm1_bound: report.ppt_upper_thm1,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let text = match format {
        Format::Json => json_text(&json!({ "L": copies, "rows": rows }))?,
        Format::Csv => {
            let cells: Vec<Vec<Cell>> = rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Float(r.theta),
                        Cell::Float(r.f0),
                        Cell::Float(r.f1),
                        Cell::Float(r.product),
                        Cell::Bool(r.hiding_ok),
                        Cell::OptFloat(r.thm1_bound),
                    ]
                })
                .collect();
            csv_table(&SWEEP_HEADER, &cells)
        }
    };
    Ok(Outcome::ok(text))
}

fn example_certificate_for(t: ThetaInstance, k: usize) -> Result<Certificate, CliError> {
    match k {
        2 => Ok(example_certificate(t)?),
        4 => Ok(Certificate::new(&example_ensemble(t), tilde_h(&example_h(t), 2)?, 4)?),
        _ => Err(CliError::Usage(format!("--k must be 2 or 4, got {k}"))),
    }
}

pub fn bounds(theta: f64, copies: usize, k: usize, format: Format) -> CmdResult {
    let t = theta_instance(theta)?;
    positive("L", copies)?;
    let cert = example_certificate_for(t, k)?;
    let report = BoundReport::new(&example_ensemble(t), &cert, copies, Some(theta))?;
    let text = match format {
        Format::Json => json_text(&report)?,
        Format::Csv => csv_table(
            &["theta", "L", "p_G", "thm1_bound", "cor1_bound", "product_4T"],
            &[vec![
                Cell::Float(theta),
                Cell::Int(copies as u64),
                Cell::Float(report.p_g),
                Cell::OptFloat(report.ppt_upper_thm1),
                Cell::OptFloat(report.ppt_upper_cor1),
                Cell::Float(report.product_4t),
            ]],
        ),
    };
    let failure = cert.theorem1(copies).err().map(|e| e.to_string());
    Ok(Outcome { text, failure })
}

pub struct SolveRequest {
    pub theta: Option<f64>,
    pub ensemble: Option<PathBuf>,
    pub copies: usize,
    pub tol: Option<f64>,
    pub max_iters: Option<usize>,
    pub step: Option<f64>,
    pub minimizer: bool,
}

pub fn solve(req: SolveRequest, format: Format) -> CmdResult {
    positive("L", req.copies)?;
    let base = match (&req.ensemble, req.theta) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<TwoStateEnsemble>(&text)?
        }
        (None, Some(theta)) => example_ensemble(theta_instance(theta)?),
        (None, None) => return Err(CliError::Usage("give --theta or --ensemble".into())),
    };
    let defaults = SolverConfig::default();
    let cfg = SolverConfig {
        relative_tolerance: req.tol.unwrap_or(defaults.relative_tolerance),
        max_iterations: req.max_iters.unwrap_or(defaults.max_iterations),
        proximal_step: req.step.unwrap_or(defaults.proximal_step),
        ..defaults
    };
    let e = base.coarse_grain(req.copies)?;
    let (result, failure) = match solve_ppt(&e, &cfg) {
        Ok(r) => (r, None),
        Err(Error::MaxIterationsExceeded(r)) => {
            let msg = format!("solver stopped after {} iterations without converging", r.iterations);
            (*r, Some(msg))
        }
        Err(other) => return Err(other.into()),
    };
    let text = match format {
        Format::Json => {
            let mut v = serde_json::to_value(&result)?;
            let obj = v.as_object_mut().expect("result serializes to an object");
            if !req.minimizer {
                obj.remove("minimizer");
            }
            obj.insert("theta".into(), json!(req.theta));
            obj.insert("L".into(), json!(req.copies));
            obj.insert("config".into(), serde_json::to_value(cfg)?);
            json_text(&v)?
        }
        Format::Csv => csv_table(
            &[
                "theta",
                "L",
                "p_ppt",
                "value",
                "iterations",
                "converged",
                "constraint_residual",
                "subspace_residual",
                "dual_bound",
                "duality_gap",
            ],
            &[vec![
                Cell::OptFloat(req.theta),
                Cell::Int(req.copies as u64),
                Cell::Float(result.p_ppt),
                Cell::Float(result.value),
                Cell::Int(result.iterations as u64),
                Cell::Bool(result.converged),
                Cell::Float(result.constraint_residual),
                Cell::Float(result.subspace_residual),
                Cell::Float(result.dual_bound),
                Cell::Float(result.duality_gap),
            ]],
        ),
    };
    Ok(Outcome { text, failure })
}

pub struct SimulateRequest {
    pub theta: f64,
    pub copies: usize,
    pub copies_max: Option<usize>,
    pub strategy: String,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

fn resolve_strategy(theta: f64, name: &str, inst: &HidingInstance) -> Result<Strategy, CliError> {
    match name {
        "best" => Ok(best_strategy(inst, &Strategy::qubit_catalog(theta))?.0),
        "blind" => Ok(Strategy::blind()),
        _ => Strategy::by_name(theta, name).ok_or_else(|| {
            let names: Vec<String> = Strategy::qubit_catalog(theta).iter().map(|s| s.name().to_owned()).collect();
            CliError::Usage(format!(
                "unknown strategy '{name}'; use global, best, blind or one of {}",
                names.join(" ")
            ))
        }),
    }
}

pub fn simulate(req: SimulateRequest, format: Format) -> CmdResult {
    let t = theta_instance(req.theta)?;
    positive("L", req.copies)?;
    positive("workers", req.workers)?;
    if req.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let last = req.copies_max.unwrap_or(req.copies);
    if last < req.copies {
        return Err(CliError::Usage("--L-max is below --L".into()));
    }
    let e = example_ensemble(t);
    let mut reports = Vec::new();
    for copies in req.copies..=last {
        let inst = HidingInstance::new(e.clone(), copies)?;
        let strat = resolve_strategy(req.theta, &req.strategy, &inst)?;
        reports.push(run_protocol_parallel(&inst, &strat, req.trials, req.seed, req.workers)?);
    }
    let text = match format {
        Format::Json => json_text(&json!({ "theta": req.theta, "runs": reports }))?,
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = reports
                .iter()
                .map(|r| {
                    let name = match &r.strategy {
                        sephide_core::protocol::StrategyDescriptor::GlobalOrthogonal => "global".to_owned(),
                        sephide_core::protocol::StrategyDescriptor::PerCopyLocal { name } => name.clone(),
                    };
                    vec![
                        Cell::Float(req.theta),
                        Cell::Int(r.parameters.copies as u64),
                        Cell::Text(name),
                        Cell::Float(r.exact_rate),
                        Cell::Float(r.empirical_rate),
                        Cell::Int(r.trials),
                        Cell::Int(r.seed),
                    ]
                })
                .collect();
            csv_table(
                &["theta", "L", "strategy", "exact_rate", "empirical_rate", "trials", "seed"],
                &rows,
            )
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpTarget {
    /// The L-copy parity ensemble.
    Ensemble,
    /// The two-copy certificate H.
    Certificate,
    /// Λ of the L-copy parity ensemble.
    Lambda,
}

pub fn dump(theta: f64, copies: usize, what: DumpTarget, format: Format) -> CmdResult {
    if format != Format::Json {
        return Err(CliError::Usage("dump only writes JSON".into()));
    }
    let t = theta_instance(theta)?;
    positive("L", copies)?;
    let value: Value = match what {
        DumpTarget::Ensemble => serde_json::to_value(example_ensemble(t).coarse_grain(copies)?)?,
        DumpTarget::Certificate => serde_json::to_value(example_h(t))?,
        DumpTarget::Lambda => serde_json::to_value(example_ensemble(t).coarse_grain(copies)?.lambda())?,
    };
    Ok(Outcome::ok(json_text(&value)?))
}
