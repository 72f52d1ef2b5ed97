//! Exact PPT discrimination value for PT-invariant ensembles.
//!
//! Solves `min Tr|H|` over Hermitian `H` with `H + H^Γ = Λ`. Every feasible
//! point is `Λ/2 + K` with `K^Γ = −K`, so the problem is a trace-norm
//! minimization over an affine subspace. It is handled by Douglas–Rachford
//! splitting: the trace-norm proximal map soft-thresholds eigenvalues, and the
//! projection onto the feasible set is `H ↦ (H − H^Γ)/2 + Λ/2`.
//!
//! A lower bound comes for free from the proximal step. For `y = prox(w)` the
//! operator `G = (w − y)/t` is a subgradient of the trace norm at `y`; its
//! PT-symmetric part `W`, rescaled to operator norm at most one, satisfies
//! `Tr|H| ≥ Tr(WH) = ½ Tr(WΛ)` for every feasible `H`.

use rayon::prelude::*;
use serde::Serialize;

use crate::ensemble::TwoStateEnsemble;
use crate::error::{Error, Result};
use crate::linalg::eigen::{self, DEFAULT_MAX_SWEEPS};
use crate::linalg::{BipartiteOperator, HermitianEigen};

/// Tolerance for the PT-invariance precondition.
pub const PT_INVARIANCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub relative_tolerance: f64,
    /// Proximal step in units of `‖Λ‖_op`, so the iteration is scale-free
    /// across copy numbers.
    pub proximal_step: f64,
    pub over_relaxation: f64,
    /// Largest operator side length accepted (four copies of two qubits).
    pub max_dimension: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 20_000,
            relative_tolerance: 1e-9,
            proximal_step: 0.1,
            over_relaxation: 1.8,
            max_dimension: 256,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0) {
            return Err(Error::InvalidConfig("relative_tolerance must be positive".into()));
        }
        if !(self.proximal_step > 0.0) {
            return Err(Error::InvalidConfig("proximal_step must be positive".into()));
        }
        if !(self.over_relaxation > 0.0 && self.over_relaxation < 2.0) {
            return Err(Error::InvalidConfig("over_relaxation must lie in (0, 2)".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverResult {
    /// `min Tr|H|` (attained by `minimizer`).
    pub value: f64,
    /// `½ + value`.
    pub p_ppt: f64,
    pub minimizer: BipartiteOperator,
    pub iterations: usize,
    pub converged: bool,
    /// `‖H + H^Γ − Λ‖_F` at the minimizer.
    pub constraint_residual: f64,
    /// Distance of the last proximal iterate from the feasible set.
    pub subspace_residual: f64,
    /// Certified lower bound on `min Tr|H|` from the dual certificate.
    pub dual_bound: f64,
    /// `value − dual_bound`.
    pub duality_gap: f64,
    /// Best feasible objective after each iteration that improved it.
    #[serde(skip)]
    pub objective_history: Vec<f64>,
}

/// Trace-norm proximal map for Hermitian input: soft-thresholds the spectrum.
pub fn prox_trace_norm(eig: &HermitianEigen, dims: crate::linalg::BipartiteDims, step: f64) -> BipartiteOperator {
    BipartiteOperator::from_spectrum(dims, eig, |x| x.signum() * (x.abs() - step).max(0.0))
}

/// Eigendecompositions warm-started from the previous basis.
struct WarmEigen {
    n: usize,
    basis: Option<Vec<num_complex::Complex64>>,
}

impl WarmEigen {
    fn new(n: usize) -> Self {
        Self { n, basis: None }
    }

    fn decompose(&mut self, op: &BipartiteOperator) -> Result<HermitianEigen> {
        let eig = match self.basis.take() {
            Some(b) => eigen::eigen_from_basis(self.n, op.entries(), b, DEFAULT_MAX_SWEEPS)?,
            None => eigen::eigen(self.n, op.entries(), DEFAULT_MAX_SWEEPS)?,
        };
        self.basis = Some(eig.vectors.clone());
        Ok(eig)
    }
}

fn project_feasible(h: &BipartiteOperator, half_lambda: &BipartiteOperator) -> BipartiteOperator {
    h.combine(0.5, &h.partial_transpose(), -0.5)
        .and_then(|k| k.add(half_lambda))
        .expect("operators share dims")
}

/// Lower bound `½ Tr(WΛ)` from the subgradient `g` of the trace norm.
fn dual_bound(g: &BipartiteOperator, lambda: &BipartiteOperator) -> Result<f64> {
    let w = g.combine(0.5, &g.partial_transpose(), 0.5)?;
    let norm = w.operator_norm()?.max(1.0);
    Ok(0.5 * w.trace_product(lambda)? / norm)
}

/// Minimizes `Tr|H|` subject to `H + H^Γ = Λ_E`; `p_PPT(E) = ½ + min`.
pub fn solve_ppt(e: &TwoStateEnsemble, cfg: &SolverConfig) -> Result<SolverResult> {
    cfg.validate()?;
    let distance = e.pt_asymmetry();
    if distance > PT_INVARIANCE_TOLERANCE {
        return Err(Error::NotPtInvariant { distance });
    }
    let dims = e.dims();
    let n = dims.total();
    if n > cfg.max_dimension {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: cfg.max_dimension,
        });
    }

    let lambda = e.lambda();
    let half_lambda = lambda.scale(0.5);
    let scale = lambda.frobenius_norm().max(1.0);
    let step = cfg.proximal_step * lambda.operator_norm()?.max(f64::MIN_POSITIVE);
    let tol = cfg.relative_tolerance;

    let mut prox_eigen = WarmEigen::new(n);
    let mut objective_eigen = WarmEigen::new(n);

    // K = 0, i.e. H = Λ/2: feasible and deterministic.
    let mut z = half_lambda.clone();
    let mut best = half_lambda.clone();
    let mut best_value = half_lambda.trace_norm()?;
    let mut history = vec![best_value];
    let mut last_subgradient = None;
    let mut previous_objective = f64::INFINITY;
    let mut subspace_residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    if best_value == 0.0 {
        converged = true;
    }

    while !converged && iterations < cfg.max_iterations {
        iterations += 1;
        let x = project_feasible(&z, &half_lambda);
        let x_value: f64 = objective_eigen.decompose(&x)?.values.iter().map(|v| v.abs()).sum();
        if x_value < best_value {
            best_value = x_value;
            best = x.clone();
            history.push(best_value);
        }

        let w = x.combine(2.0, &z, -1.0)?;
        let eig = prox_eigen.decompose(&w)?;
        let y = prox_trace_norm(&eig, dims, step);
        let y_value: f64 = eig.values.iter().map(|v| (v.abs() - step).max(0.0)).sum();
        last_subgradient = Some(w.combine(1.0 / step, &y, -1.0 / step)?);

        subspace_residual = y.add(&y.partial_transpose())?.frobenius_distance(&lambda)? / scale;
        let change = (y_value - previous_objective).abs() / y_value.abs().max(1.0);
        previous_objective = y_value;
        if change < tol && subspace_residual < tol {
            converged = true;
        }

        z = z.combine(1.0, &y.sub(&x)?, cfg.over_relaxation)?;
    }

    let dual = match &last_subgradient {
        Some(g) => dual_bound(g, &lambda)?,
        None => best_value,
    };
    let constraint_residual = best.add(&best.partial_transpose())?.frobenius_distance(&lambda)?;
    let result = SolverResult {
        value: best_value,
        p_ppt: 0.5 + best_value,
        minimizer: best,
        iterations,
        converged,
        constraint_residual,
        subspace_residual,
        dual_bound: dual,
        duality_gap: best_value - dual,
        objective_history: history,
    };
    if converged {
        Ok(result)
    } else {
        Err(Error::MaxIterationsExceeded(Box::new(result)))
    }
}

/// Solves the PPT value of `E^(L)` for `L = 1..=max_copies`, one independent task per `L`.
pub fn monotonicity_scan(
    e: &TwoStateEnsemble,
    max_copies: usize,
    cfg: &SolverConfig,
) -> Result<Vec<SolverResult>> {
    (1..=max_copies)
        .into_par_iter()
        .map(|copies| solve_ppt(&e.coarse_grain(copies)?, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{example_ensemble, ThetaInstance};
    use crate::linalg::BipartiteDims;
    use num_complex::Complex64;

    #[test]
    fn prox_on_diagonal_is_soft_threshold() {
        let dims = BipartiteDims::qubits();
        let d = BipartiteOperator::from_diagonal(dims, &[1.5, -0.2, -3.0, 0.5]).unwrap();
        let out = prox_trace_norm(&d.eigen().unwrap(), dims, 1.0);
        let expected = BipartiteOperator::from_diagonal(dims, &[0.5, 0.0, -2.0, 0.0]).unwrap();
        assert!(out.max_abs_difference(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_non_invariant_ensemble() {
        let dims = BipartiteDims::qubits();
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let bell = BipartiteOperator::projector(dims, &[s, z, z, s]).unwrap();
        let mixed = BipartiteOperator::identity(dims).scale(0.25);
        let e = TwoStateEnsemble::new(0.5, 0.5, bell, mixed).unwrap();
        assert!(matches!(
            solve_ppt(&e, &SolverConfig::default()),
            Err(Error::NotPtInvariant { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let e = example_ensemble(ThetaInstance::new(0.3).unwrap());
        for cfg in [
            SolverConfig { relative_tolerance: 0.0, ..Default::default() },
            SolverConfig { proximal_step: -1.0, ..Default::default() },
            SolverConfig { over_relaxation: 2.0, ..Default::default() },
        ] {
            assert!(matches!(solve_ppt(&e, &cfg), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn iteration_cap_returns_best_so_far() {
        let e = example_ensemble(ThetaInstance::new(std::f64::consts::FRAC_PI_4).unwrap());
        let cfg = SolverConfig { max_iterations: 3, ..Default::default() };
        match solve_ppt(&e, &cfg) {
            Err(Error::MaxIterationsExceeded(r)) => {
                assert!(!r.converged);
                assert_eq!(r.iterations, 3);
                assert!(r.constraint_residual < 1e-12);
            }
            other => panic!("expected iteration cap, got {other:?}"),
        }
    }

    #[test]
    fn identical_states_have_value_half() {
        let dims = BipartiteDims::qubits();
        let rho = BipartiteOperator::identity(dims).scale(0.25);
        let e = TwoStateEnsemble::new(0.5, 0.5, rho.clone(), rho).unwrap();
        let r = solve_ppt(&e, &SolverConfig::default()).unwrap();
        assert_eq!(r.p_ppt, 0.5);
    }

    #[test]
    fn dimension_cap() {
        let e = example_ensemble(ThetaInstance::new(0.3).unwrap()).coarse_grain(2).unwrap();
        let cfg = SolverConfig { max_dimension: 4, ..Default::default() };
        assert!(matches!(solve_ppt(&e, &cfg), Err(Error::DimensionTooLarge { .. })));
    }
}
