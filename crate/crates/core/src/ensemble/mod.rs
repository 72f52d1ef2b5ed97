//! Two-state ensembles, their Helstrom operator and parity coarse-graining.

pub mod example;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{BipartiteDims, BipartiteOperator};

pub use example::{
    example_ensemble, example_h, f0, f1, psi_basis, Psi16Basis, PsiBasis, PsiExpansion, Sign,
    ThetaInstance,
};

const PRIOR_TOLERANCE: f64 = 1e-12;
const STATE_PSD_TOLERANCE: f64 = 1e-10;
const STATE_TRACE_TOLERANCE: f64 = 1e-12;

/// Weight below which a coarse-grained branch cannot be normalized.
pub const DEGENERATE_BRANCH_WEIGHT: f64 = 1e-15;

/// `{η₀, ρ₀; η₁, ρ₁}` on a common two-party space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EnsembleRepr", into = "EnsembleRepr")]
pub struct TwoStateEnsemble {
    eta0: f64,
    eta1: f64,
    rho0: BipartiteOperator,
    rho1: BipartiteOperator,
}

impl TwoStateEnsemble {
    /// Validates priors (non-negative, summing to one) and states
    /// (positive semidefinite, unit trace, equal dims).
    pub fn new(eta0: f64, eta1: f64, rho0: BipartiteOperator, rho1: BipartiteOperator) -> Result<Self> {
        if !(eta0 >= 0.0 && eta1 >= 0.0) {
            return Err(Error::InvalidEnsemble(format!("negative prior ({eta0}, {eta1})")));
        }
        if (eta0 + eta1 - 1.0).abs() > PRIOR_TOLERANCE {
            return Err(Error::InvalidEnsemble(format!("priors sum to {}", eta0 + eta1)));
        }
        if rho0.dims() != rho1.dims() {
            return Err(Error::DimensionMismatch(format!(
                "states live on {} and {}",
                rho0.dims(),
                rho1.dims()
            )));
        }
        for (i, rho) in [&rho0, &rho1].into_iter().enumerate() {
            if (rho.trace() - 1.0).abs() > STATE_TRACE_TOLERANCE {
                return Err(Error::InvalidEnsemble(format!("rho{i} has trace {}", rho.trace())));
            }
            if !rho.is_psd(STATE_PSD_TOLERANCE)? {
                return Err(Error::InvalidEnsemble(format!("rho{i} is not positive semidefinite")));
            }
        }
        Ok(Self { eta0, eta1, rho0, rho1 })
    }

    pub(crate) fn from_parts_unchecked(
        eta0: f64,
        eta1: f64,
        rho0: BipartiteOperator,
        rho1: BipartiteOperator,
    ) -> Self {
        Self { eta0, eta1, rho0, rho1 }
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn prior(&self, i: usize) -> f64 {
        if i == 0 {
            self.eta0
        } else {
            self.eta1
        }
    }

    pub fn rho0(&self) -> &BipartiteOperator {
        &self.rho0
    }

    pub fn rho1(&self) -> &BipartiteOperator {
        &self.rho1
    }

    pub fn state(&self, i: usize) -> &BipartiteOperator {
        if i == 0 {
            &self.rho0
        } else {
            &self.rho1
        }
    }

    pub fn dims(&self) -> BipartiteDims {
        self.rho0.dims()
    }

    /// `Λ_E = η₀ρ₀ − η₁ρ₁`.
    pub fn lambda(&self) -> BipartiteOperator {
        self.rho0
            .combine(self.eta0, &self.rho1, -self.eta1)
            .expect("states share dims by construction")
    }

    /// `η₀ρ₀ + η₁ρ₁`.
    pub fn average_state(&self) -> BipartiteOperator {
        self.rho0
            .combine(self.eta0, &self.rho1, self.eta1)
            .expect("states share dims by construction")
    }

    /// Frobenius distance between `Λ_E` and its partial transpose.
    pub fn pt_asymmetry(&self) -> f64 {
        let lambda = self.lambda();
        lambda
            .frobenius_distance(&lambda.partial_transpose())
            .expect("partial transpose keeps dims")
    }

    pub fn is_pt_invariant(&self, tol: f64) -> bool {
        self.pt_asymmetry() <= tol
    }

    /// The two-state ensemble `E^(L)` obtained by grouping `L`-copy preparations
    /// by the parity of their labels.
    ///
    /// Uses `η_i^(L) ρ_i^(L) = ½[(η₀ρ₀+η₁ρ₁)^{⊗L} + (−1)^i (η₀ρ₀−η₁ρ₁)^{⊗L}]`, so
    /// only two tensor powers are formed regardless of `L`.
    pub fn coarse_grain(&self, copies: usize) -> Result<TwoStateEnsemble> {
        if copies == 0 {
            return Err(Error::InvalidConfig("coarse-graining needs at least one copy".into()));
        }
        if copies == 1 {
            return Ok(self.clone());
        }
        let even = self.average_state().tensor_power(copies)?;
        let odd = self.lambda().tensor_power(copies)?;
        let weighted0 = even.combine(0.5, &odd, 0.5)?;
        let weighted1 = even.combine(0.5, &odd, -0.5)?;
        let eta0 = weighted0.trace();
        let eta1 = weighted1.trace();
        for (branch, weight) in [(0, eta0), (1, eta1)] {
            if weight < DEGENERATE_BRANCH_WEIGHT {
                return Err(Error::DegenerateBranch { branch, weight });
            }
        }
        Ok(TwoStateEnsemble::from_parts_unchecked(
            eta0,
            eta1,
            weighted0.scale(1.0 / eta0),
            weighted1.scale(1.0 / eta1),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct EnsembleRepr {
    eta0: f64,
    eta1: f64,
    rho0: BipartiteOperator,
    rho1: BipartiteOperator,
}

impl From<TwoStateEnsemble> for EnsembleRepr {
    fn from(e: TwoStateEnsemble) -> Self {
        EnsembleRepr {
            eta0: e.eta0,
            eta1: e.eta1,
            rho0: e.rho0,
            rho1: e.rho1,
        }
    }
}

impl TryFrom<EnsembleRepr> for TwoStateEnsemble {
    type Error = Error;

    fn try_from(r: EnsembleRepr) -> Result<Self> {
        TwoStateEnsemble::new(r.eta0, r.eta1, r.rho0, r.rho1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn maximally_mixed() -> BipartiteOperator {
        BipartiteOperator::identity(BipartiteDims::qubits()).scale(0.25)
    }

    fn bell() -> BipartiteOperator {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        BipartiteOperator::projector(BipartiteDims::qubits(), &[s, z, z, s]).unwrap()
    }

    #[test]
    fn identical_states_give_zero_lambda() {
        let e = TwoStateEnsemble::new(0.5, 0.5, bell(), bell()).unwrap();
        assert_eq!(e.lambda().frobenius_norm(), 0.0);
        assert!(e.is_pt_invariant(0.0));
    }

    #[test]
    fn bell_versus_mixed_is_not_pt_invariant() {
        let e = TwoStateEnsemble::new(0.5, 0.5, bell(), maximally_mixed()).unwrap();
        assert!(!e.is_pt_invariant(1e-12));
    }

    #[test]
    fn validation_rejects_bad_priors_and_states() {
        assert!(TwoStateEnsemble::new(0.6, 0.6, bell(), bell()).is_err());
        assert!(TwoStateEnsemble::new(-0.1, 1.1, bell(), bell()).is_err());
        let not_normalized = bell().scale(2.0);
        assert!(TwoStateEnsemble::new(0.5, 0.5, not_normalized, bell()).is_err());
        let dims = BipartiteDims::qubits();
        let negative = BipartiteOperator::from_diagonal(dims, &[1.5, -0.5, 0.0, 0.0]).unwrap();
        assert!(TwoStateEnsemble::new(0.5, 0.5, negative, bell()).is_err());
    }

    #[test]
    fn degenerate_branch_is_reported() {
        let e = TwoStateEnsemble::new(1.0, 0.0, bell(), maximally_mixed()).unwrap();
        assert!(matches!(e.coarse_grain(2), Err(Error::DegenerateBranch { branch: 1, .. })));
        assert_eq!(e.coarse_grain(1).unwrap(), e);
    }

    #[test]
    fn coarse_grain_guard() {
        let e = TwoStateEnsemble::new(0.5, 0.5, bell(), maximally_mixed()).unwrap();
        assert!(matches!(e.coarse_grain(7), Err(Error::DimensionTooLarge { .. })));
        assert!(e.coarse_grain(0).is_err());
    }

    #[test]
    fn json_round_trip_validates() {
        let e = TwoStateEnsemble::new(0.25, 0.75, bell(), maximally_mixed()).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        let back: TwoStateEnsemble = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["eta0"] = serde_json::json!(0.9);
        assert!(serde_json::from_value::<TwoStateEnsemble>(v).is_err());
    }
}
