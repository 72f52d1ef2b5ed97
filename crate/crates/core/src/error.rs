use thiserror::Error;

use crate::ppt::SolverResult;

/// Hypotheses checked before a decay bound is quoted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// Lambda is invariant under partial transposition.
    PtInvariant,
    /// H + H^Γ equals Lambda^{⊗k}.
    CertificateEquation,
    /// 4 Tr|H| Tr|H^Γ| < 1.
    ProductBelowOne,
    /// Tr|H| + Tr|H^Γ| ≤ 1.
    NormSumAtMostOne,
    /// Tr|H| < 1/2.
    NormBelowHalf,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::PtInvariant => "pinv (Λ not invariant under partial transposition)",
            Hypothesis::CertificateEquation => "hlek (H + H^Γ differs from Λ^{⊗k})",
            Hypothesis::ProductBelowOne => "fhho (4 Tr|H| Tr|H^Γ| is not below 1)",
            Hypothesis::NormSumAtMostOne => "idsf (Tr|H| + Tr|H^Γ| exceeds 1)",
            Hypothesis::NormBelowHalf => "idss (Tr|H| is not below 1/2)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bipartite dimensions {d_a}x{d_b}: both parties need dimension at least 2")]
    InvalidDims { d_a: usize, d_b: usize },

    #[error("expected {expected} matrix entries, got {got}")]
    EntryCount { expected: usize, got: usize },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off_diagonal:e})")]
    NonConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("theta = {0} lies outside [0, pi/3]")]
    ThetaOutOfRange(f64),

    #[error("branch {branch} of the coarse-grained ensemble has negligible weight {weight:e}")]
    DegenerateBranch { branch: usize, weight: f64 },

    #[error("certificate residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),

    #[error("ensemble is not invariant under partial transposition (distance {distance:e})")]
    NotPtInvariant { distance: f64 },

    #[error("solver stopped after {} iterations without converging", .0.iterations)]
    MaxIterationsExceeded(Box<SolverResult>),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
