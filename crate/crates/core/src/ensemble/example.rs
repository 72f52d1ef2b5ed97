//! The two-qubit orthogonal separable ensemble parameterized by `θ ∈ [0, π/3]`,
//! its Bell-like bases and the closed-form certificate for two copies.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::TwoStateEnsemble;
use crate::error::{Error, Result};
use crate::linalg::{tensor_vectors, BipartiteDims, BipartiteOperator};

/// A validated angle `0 ≤ θ ≤ π/3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ThetaInstance(f64);

impl ThetaInstance {
    pub fn new(theta: f64) -> Result<Self> {
        if (0.0..=FRAC_PI_3).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::ThetaOutOfRange(theta))
        }
    }

    pub fn theta(&self) -> f64 {
        self.0
    }

    fn cos_sin(&self) -> (f64, f64) {
        (self.0.cos(), self.0.sin())
    }
}

impl TryFrom<f64> for ThetaInstance {
    type Error = Error;

    fn try_from(theta: f64) -> Result<Self> {
        ThetaInstance::new(theta)
    }
}

impl From<ThetaInstance> for f64 {
    fn from(t: ThetaInstance) -> f64 {
        t.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn qubit_projector(v: [f64; 2]) -> Vec<Complex64> {
    vec![r(v[0] * v[0]), r(v[0] * v[1]), r(v[1] * v[0]), r(v[1] * v[1])]
}

fn lincomb(terms: &[(f64, &[Complex64])]) -> Vec<Complex64> {
    let n = terms[0].1.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (w, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += x * *w;
        }
    }
    out
}

/// The ensemble with equal priors and
///
/// ```text
/// ρ₀ = ½ |0⟩⟨0| ⊗ |+θ⟩⟨+θ| + ½ |+θ⟩⟨+θ| ⊗ |0⟩⟨0|
/// ρ₁ = ½ |1⟩⟨1| ⊗ |1⟩⟨1|   + ½ |−θ⟩⟨−θ| ⊗ |−θ⟩⟨−θ|
/// ```
///
/// with `|+θ⟩ = cos θ|0⟩ + sin θ|1⟩` and `|−θ⟩ = sin θ|0⟩ − cos θ|1⟩`.
pub fn example_ensemble(t: ThetaInstance) -> TwoStateEnsemble {
    let (c, s) = t.cos_sin();
    let zero = qubit_projector([1.0, 0.0]);
    let one = qubit_projector([0.0, 1.0]);
    let plus = qubit_projector([c, s]);
    let minus = qubit_projector([s, -c]);
    let prod = |a: &[Complex64], b: &[Complex64]| {
        BipartiteOperator::product(a, b).expect("qubit factors are square")
    };
    let rho0 = prod(&zero, &plus).combine(0.5, &prod(&plus, &zero), 0.5).unwrap();
    let rho1 = prod(&one, &one).combine(0.5, &prod(&minus, &minus), 0.5).unwrap();
    TwoStateEnsemble::from_parts_unchecked(0.5, 0.5, rho0, rho1)
}

/// The two-qubit orthonormal basis `{|ψ_i^±⟩}`, `i ∈ {0, 1}`.
#[derive(Debug, Clone)]
pub struct PsiBasis {
    vectors: [[Vec<Complex64>; 2]; 2],
}

impl PsiBasis {
    pub fn get(&self, i: usize, sign: Sign) -> &[Complex64] {
        &self.vectors[i][sign as usize]
    }

    /// Vectors in the order ψ₀⁺, ψ₀⁻, ψ₁⁺, ψ₁⁻.
    pub fn vectors(&self) -> impl Iterator<Item = &[Complex64]> {
        self.vectors.iter().flat_map(|pair| pair.iter().map(Vec::as_slice))
    }
}

pub fn psi_basis(t: ThetaInstance) -> PsiBasis {
    let (c, s) = t.cos_sin();
    let h = FRAC_1_SQRT_2;
    // |00⟩, |01⟩, |10⟩, |11⟩
    let v = |a: f64, b: f64, cc: f64, d: f64| vec![r(a), r(b), r(cc), r(d)];
    let p0p = v(h, 0.0, 0.0, h);
    let p1p = v(0.0, h, -h, 0.0);
    let p0m = v(c * h, s * h, s * h, -c * h);
    let p1m = v(s * h, -c * h, -c * h, -s * h);
    PsiBasis {
        vectors: [[p0p, p0m], [p1p, p1m]],
    }
}

/// The 4⊗4 orthonormal basis `{|Ψ_i^±⟩}`, `i = 0..8`, built from [`PsiBasis`]
/// with Alice holding both first-party qubits.
#[derive(Debug, Clone)]
pub struct Psi16Basis {
    vectors: Vec<[Vec<Complex64>; 2]>,
}

impl Psi16Basis {
    pub fn new(t: ThetaInstance) -> Self {
        let small = psi_basis(t);
        let q = BipartiteDims::qubits();
        let kron = |u: &[Complex64], v: &[Complex64]| tensor_vectors(u, q, v, q).expect("two qubit pairs");
        let (c, _) = t.cos_sin();
        let norm = (1.0 + c * c).sqrt();
        let (a, b) = (c / norm, 1.0 / norm);

        let p0p = small.get(0, Sign::Plus);
        let p0m = small.get(0, Sign::Minus);
        let p1p = small.get(1, Sign::Plus);
        let p1m = small.get(1, Sign::Minus);

        let pp = kron(p0p, p0p);
        let pm = kron(p0p, p0m);
        let mp = kron(p0m, p0p);
        let mm = kron(p0m, p0m);
        let h = FRAC_1_SQRT_2;

        // (c|ψ₀^±⟩ ± |ψ₀^∓⟩)/√(1+c²) and (c|ψ₀^∓⟩ ∓ |ψ₀^±⟩)/√(1+c²)
        let mix_a_plus = lincomb(&[(a, p0p), (b, p0m)]);
        let mix_a_minus = lincomb(&[(a, p0m), (-b, p0p)]);
        let mix_b_plus = lincomb(&[(a, p0m), (-b, p0p)]);
        let mix_b_minus = lincomb(&[(a, p0p), (b, p0m)]);

        let vectors = vec![
            [lincomb(&[(h, &pp), (-h, &mm)]), lincomb(&[(h, &pm), (h, &mp)])],
            [lincomb(&[(h, &pp), (h, &mm)]), lincomb(&[(h, &pm), (-h, &mp)])],
            [kron(p1p, p1p), kron(p1p, p1m)],
            [kron(p1m, p1m), kron(p1m, p1p)],
            [kron(&mix_a_plus, p1p), kron(&mix_a_minus, p1p)],
            [kron(&mix_b_plus, p1m), kron(&mix_b_minus, p1m)],
            [kron(p1p, &mix_a_plus), kron(p1p, &mix_a_minus)],
            [kron(p1m, &mix_b_plus), kron(p1m, &mix_b_minus)],
        ];
        Self { vectors }
    }

    pub fn get(&self, i: usize, sign: Sign) -> &[Complex64] {
        &self.vectors[i][sign as usize]
    }

    /// The 16 vectors ordered Ψ₀⁺, Ψ₀⁻, Ψ₁⁺, Ψ₁⁻, ...
    pub fn vectors(&self) -> impl Iterator<Item = &[Complex64]> {
        self.vectors.iter().flat_map(|pair| pair.iter().map(Vec::as_slice))
    }

    /// Matrix `⟨Ψ_i|X|Ψ_j⟩` of a 4⊗4 operator, indexed in [`Self::vectors`] order.
    pub fn coefficients(&self, op: &BipartiteOperator) -> Result<Vec<Complex64>> {
        let basis: Vec<&[Complex64]> = self.vectors().collect();
        let mut out = Vec::with_capacity(256);
        for u in &basis {
            for v in &basis {
                out.push(op.matrix_element(u, v)?);
            }
        }
        Ok(out)
    }

    fn dims() -> BipartiteDims {
        BipartiteDims::new(4, 4).expect("valid dims")
    }
}

/// An operator of the form
///
/// ```text
/// d0 D₀ + x0 (|Ψ₀⁺⟩⟨Ψ₀⁻| + |Ψ₀⁻⟩⟨Ψ₀⁺|) + d1 D₁ + d23 (D₂ + D₃) + d47 (D₄ + … + D₇)
/// ```
///
/// where `D_i = |Ψ_i⁺⟩⟨Ψ_i⁺| − |Ψ_i⁻⟩⟨Ψ_i⁻|`. Every closed-form two-copy
/// operator of the example has this shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiExpansion {
    pub d0: f64,
    pub x0: f64,
    pub d1: f64,
    pub d23: f64,
    pub d47: f64,
}

impl PsiExpansion {
    /// Closed form of `Λ_E^{⊗2}`.
    pub fn lambda_squared(t: ThetaInstance) -> Self {
        let (c, s) = t.cos_sin();
        let (c2, s2) = (c * c, s * s);
        Self {
            d0: (s2 * s2 - 4.0 * c2) / 16.0,
            x0: -c * s2 / 4.0,
            d1: (1.0 + c2) * (1.0 + c2) / 16.0,
            d23: s2 * s2 / 16.0,
            d47: (1.0 - c2 * c2) / 16.0,
        }
    }

    /// Closed form of the two-copy certificate `H`.
    pub fn certificate(t: ThetaInstance) -> Self {
        let (c, s) = t.cos_sin();
        let (c2, s2) = (c * c, s * s);
        Self {
            d0: (s2 * s2 - 2.0 * c2) / 16.0,
            x0: -c * s2 / 8.0,
            d1: (1.0 + c2 * c2) / 16.0,
            d23: 0.0,
            d47: (1.0 - c2 * c2) / 32.0,
        }
    }

    /// Closed form of the certificate's partial transpose `H^Γ`.
    pub fn certificate_transposed(t: ThetaInstance) -> Self {
        let (c, s) = t.cos_sin();
        let (c2, s2) = (c * c, s * s);
        Self {
            d0: -c2 / 8.0,
            x0: -c * s2 / 8.0,
            d1: c2 / 8.0,
            d23: s2 * s2 / 16.0,
            d47: (1.0 - c2 * c2) / 32.0,
        }
    }

    /// The 16x16 coefficient matrix in the Ψ basis, [`Psi16Basis::vectors`] order.
    pub fn coefficient_matrix(&self) -> Vec<f64> {
        let mut m = vec![0.0; 256];
        let mut diag = |i: usize, w: f64| {
            m[(2 * i) * 16 + 2 * i] = w;
            m[(2 * i + 1) * 16 + 2 * i + 1] = -w;
        };
        diag(0, self.d0);
        diag(1, self.d1);
        for i in 2..4 {
            diag(i, self.d23);
        }
        for i in 4..8 {
            diag(i, self.d47);
        }
        m[1] = self.x0;
        m[16] = self.x0;
        m
    }

    /// Assembles the operator on the 4⊗4 space.
    pub fn assemble(&self, basis: &Psi16Basis) -> BipartiteOperator {
        let dims = Psi16Basis::dims();
        let mut acc = BipartiteOperator::zeros(dims);
        let mut add = |op: BipartiteOperator, w: f64| {
            if w != 0.0 {
                acc = acc.combine(1.0, &op, w).expect("same dims");
            }
        };
        for i in 0..8 {
            let w = match i {
                0 => self.d0,
                1 => self.d1,
                2 | 3 => self.d23,
                _ => self.d47,
            };
            let plus = BipartiteOperator::projector(dims, basis.get(i, Sign::Plus)).unwrap();
            let minus = BipartiteOperator::projector(dims, basis.get(i, Sign::Minus)).unwrap();
            add(plus.sub(&minus).unwrap(), w);
        }
        let cross =
            BipartiteOperator::symmetric_dyad(dims, basis.get(0, Sign::Plus), basis.get(0, Sign::Minus))
                .unwrap();
        add(cross, self.x0);
        acc
    }
}

/// The two-copy certificate `H` with `H + H^Γ = Λ_E^{⊗2}`, on the 4⊗4 space.
pub fn example_h(t: ThetaInstance) -> BipartiteOperator {
    PsiExpansion::certificate(t).assemble(&Psi16Basis::new(t))
}

/// `f₀(θ) = (3 − cos⁴θ + √(4cos⁴θ + sin⁸θ)) / 8`, the trace norm of the certificate.
pub fn f0(t: ThetaInstance) -> f64 {
    let (c, s) = t.cos_sin();
    let (c4, s4) = (c.powi(4), s.powi(4));
    (3.0 - c4 + (4.0 * c4 + s4 * s4).sqrt()) / 8.0
}

/// `f₁(θ) = (1 + sin²θ + cos θ √(cos²θ + sin⁴θ)) / 4`, the trace norm of its partial transpose.
pub fn f1(t: ThetaInstance) -> f64 {
    let (c, s) = t.cos_sin();
    let s2 = s * s;
    (1.0 + s2 + c * (c * c + s2 * s2).sqrt()) / 4.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(x: f64) -> ThetaInstance {
        ThetaInstance::new(x).unwrap()
    }

    #[test]
    fn theta_range_is_enforced() {
        assert!(ThetaInstance::new(-1e-9).is_err());
        assert!(ThetaInstance::new(FRAC_PI_3 + 1e-9).is_err());
        assert!(ThetaInstance::new(f64::NAN).is_err());
        assert!(ThetaInstance::new(FRAC_PI_3).is_ok());
    }

    #[test]
    fn theta_zero_collapses_to_computational_states() {
        let e = example_ensemble(theta(0.0));
        let dims = BipartiteDims::qubits();
        let p00 = BipartiteOperator::from_diagonal(dims, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let p11 = BipartiteOperator::from_diagonal(dims, &[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(e.rho0().max_abs_difference(&p00).unwrap() < 1e-15);
        assert!(e.rho1().max_abs_difference(&p11).unwrap() < 1e-15);
        let lambda = e.lambda();
        assert_eq!(lambda.eigenvalues().unwrap(), vec![-0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn psi_vectors_at_zero_and_theta_independent_member() {
        let h = FRAC_1_SQRT_2;
        let b = psi_basis(theta(0.0));
        let expected = [h, 0.0, 0.0, -h];
        for (x, y) in b.get(0, Sign::Minus).iter().zip(expected) {
            assert!((x.re - y).abs() < 1e-15);
        }
        let b = psi_basis(theta(0.7));
        for (x, y) in b.get(1, Sign::Plus).iter().zip([0.0, h, -h, 0.0]) {
            assert!((x.re - y).abs() < 1e-15);
        }
    }

    #[test]
    fn first_lambda_squared_coefficient_at_quarter_pi() {
        let e = PsiExpansion::lambda_squared(theta(std::f64::consts::FRAC_PI_4));
        assert!((e.d0 + 7.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn f_values_at_zero() {
        assert!((f0(theta(0.0)) - 0.5).abs() < 1e-15);
        assert!((f1(theta(0.0)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn example_operators_are_real() {
        let t = theta(0.9);
        let e = example_ensemble(t);
        for op in [e.rho0().clone(), e.rho1().clone(), example_h(t), e.lambda().tensor(&e.lambda()).unwrap()] {
            assert!(op.max_imaginary() < 1e-14);
        }
    }
}
