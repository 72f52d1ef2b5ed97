//! Numerical check of every closed-form identity of the example ensemble at one angle.

use num_complex::Complex64;
use serde::Serialize;

use crate::ensemble::{example_ensemble, f0, f1, psi_basis, Psi16Basis, PsiExpansion, ThetaInstance};
use crate::error::Result;
use crate::linalg::BipartiteOperator;

/// Largest residual accepted by [`VerifyReport::passed`].
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub name: &'static str,
    pub value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub theta: f64,
    pub f0: f64,
    pub f1: f64,
    pub product: f64,
    /// Whether `4 f₀ f₁ < 1`, i.e. the angle gives a hiding scheme.
    pub hiding_ok: bool,
    pub tolerance: f64,
    pub residuals: Vec<Residual>,
    pub passed: bool,
}

impl VerifyReport {
    /// The first residual above tolerance, if any.
    pub fn first_failure(&self) -> Option<&Residual> {
        self.residuals.iter().find(|r| !r.passed)
    }
}

fn gram_residual<'a>(vectors: impl Iterator<Item = &'a [Complex64]>) -> f64 {
    let vs: Vec<&[Complex64]> = vectors.collect();
    let mut worst: f64 = 0.0;
    for (i, u) in vs.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            let ip: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((ip - target).norm());
        }
    }
    worst
}

fn coefficient_residual(actual: &[Complex64], expected: &[f64]) -> f64 {
    actual
        .iter()
        .zip(expected)
        .map(|(a, e)| (a - e).norm())
        .fold(0.0, f64::max)
}

/// Runs the identity suite at `t`: orthonormality of both Bell-like bases,
/// the two-copy expansion of `Λ`, the certificate equation, the closed form
/// of the certificate's partial transpose and both trace norms.
pub fn verify_example(t: ThetaInstance) -> Result<VerifyReport> {
    let e = example_ensemble(t);
    let lambda = e.lambda();
    let lambda2 = lambda.tensor(&lambda)?;
    let basis = Psi16Basis::new(t);

    let h = PsiExpansion::certificate(t).assemble(&basis);
    let h_pt = h.partial_transpose();
    let h_pt_closed = PsiExpansion::certificate_transposed(t).assemble(&basis);
    let (f0v, f1v) = (f0(t), f1(t));

    let mut raw = vec![
        ("two_qubit_basis_gram", gram_residual(psi_basis(t).vectors())),
        ("four_qubit_basis_gram", gram_residual(basis.vectors())),
        (
            "lambda_squared_expansion",
            coefficient_residual(
                &basis.coefficients(&lambda2)?,
                &PsiExpansion::lambda_squared(t).coefficient_matrix(),
            ),
        ),
        ("certificate_equation", h.add(&h_pt)?.frobenius_distance(&lambda2)?),
        ("certificate_transpose_closed_form", h_pt.max_abs_difference(&h_pt_closed)?),
        ("trace_norm_f0", (h.trace_norm()? - f0v).abs()),
        ("trace_norm_pt_f1", (h_pt.trace_norm()? - f1v).abs()),
    ];
    let residuals: Vec<Residual> = raw
        .drain(..)
        .map(|(name, value)| Residual {
            name,
            value,
            passed: value <= VERIFY_TOLERANCE,
        })
        .collect();
    let passed = residuals.iter().all(|r| r.passed);
    let product = 4.0 * f0v * f1v;
    Ok(VerifyReport {
        theta: t.theta(),
        f0: f0v,
        f1: f1v,
        product,
        hiding_ok: product < 1.0,
        tolerance: VERIFY_TOLERANCE,
        residuals,
        passed,
    })
}

/// `Λ^{⊗2}` of the example at `t`, on the 4⊗4 space.
pub fn example_lambda_squared(t: ThetaInstance) -> Result<BipartiteOperator> {
    let lambda = example_ensemble(t).lambda();
    lambda.tensor(&lambda)
}
