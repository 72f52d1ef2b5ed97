//! Closed-form discrimination bounds: the global (Helstrom) value, certificate
//! upper bounds on the PPT value, the exponential decay bounds for coarse-grained
//! ensembles, and the product certificate used to prove them.

use serde::Serialize;

use crate::ensemble::{example_ensemble, example_h, ThetaInstance, TwoStateEnsemble};
use crate::error::{Error, Hypothesis, Result};
use crate::linalg::BipartiteOperator;

/// Residual allowed in `H + H^Γ = Λ` style certificate equations.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-9;

/// Tolerance for the PT-invariance precondition on `Λ_E`.
pub const PT_INVARIANCE_TOLERANCE: f64 = 1e-9;

/// `½(1 + Tr|Λ_E|)`, the optimal success probability with unrestricted measurements.
pub fn helstrom_value(e: &TwoStateEnsemble) -> Result<f64> {
    Ok(0.5 * (1.0 + e.lambda().trace_norm()?))
}

/// Global value of the `L`-copy parity ensemble, `½(1 + Tr|Λ_E|^L)`.
///
/// Relies on `Λ_{E^(L)} = Λ_E^{⊗L}` and multiplicativity of the trace norm, so no
/// `4^L`-dimensional operator is formed.
pub fn helstrom_value_copies(e: &TwoStateEnsemble, copies: usize) -> Result<f64> {
    let norm = e.lambda().trace_norm()?;
    Ok(0.5 * (1.0 + norm.powi(copies as i32)))
}

/// `½ + Tr|H|`, an upper bound on the PPT value whenever `H + H^Γ = Λ_E`.
pub fn candidate_ppt_upper(e: &TwoStateEnsemble, h: &BipartiteOperator) -> Result<f64> {
    let residual = certificate_residual(h, &e.lambda())?;
    if residual > CERTIFICATE_TOLERANCE {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance: CERTIFICATE_TOLERANCE,
        });
    }
    Ok(0.5 + h.trace_norm()?)
}

/// `‖H + H^Γ − target‖_F`.
pub fn certificate_residual(h: &BipartiteOperator, target: &BipartiteOperator) -> Result<f64> {
    h.add(&h.partial_transpose())?.frobenius_distance(target)
}

/// A bound value before and after capping at one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayBound {
    pub raw: f64,
    pub value: f64,
}

impl DecayBound {
    fn new(raw: f64) -> Self {
        Self {
            raw,
            value: raw.min(1.0),
        }
    }
}

/// A Hermitian `H` together with the quantities every decay bound needs.
#[derive(Debug, Clone)]
pub struct Certificate {
    copies: usize,
    h: BipartiteOperator,
    h_pt: BipartiteOperator,
    trace_norm: f64,
    trace_norm_pt: f64,
    residual: f64,
    pt_invariant: bool,
}

impl Certificate {
    /// Evaluates `H` as a certificate for `Λ_E^{⊗copies}`. No hypothesis is
    /// enforced here; see [`Certificate::theorem1`] and [`Certificate::corollary1`].
    pub fn new(e: &TwoStateEnsemble, h: BipartiteOperator, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidConfig("certificate needs k >= 1".into()));
        }
        let target = e.lambda().tensor_power(copies)?;
        let h_pt = h.partial_transpose();
        let residual = h.add(&h_pt)?.frobenius_distance(&target)?;
        Ok(Self {
            copies,
            trace_norm: h.trace_norm()?,
            trace_norm_pt: h_pt.trace_norm()?,
            h,
            h_pt,
            residual,
            pt_invariant: e.is_pt_invariant(PT_INVARIANCE_TOLERANCE),
        })
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn operator(&self) -> &BipartiteOperator {
        &self.h
    }

    pub fn transposed(&self) -> &BipartiteOperator {
        &self.h_pt
    }

    /// `Tr|H|`.
    pub fn trace_norm(&self) -> f64 {
        self.trace_norm
    }

    /// `Tr|H^Γ|`.
    pub fn trace_norm_pt(&self) -> f64 {
        self.trace_norm_pt
    }

    /// `‖H + H^Γ − Λ^{⊗k}‖_F`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn pt_invariant(&self) -> bool {
        self.pt_invariant
    }

    /// `4 Tr|H| Tr|H^Γ|`.
    pub fn product(&self) -> f64 {
        4.0 * self.trace_norm * self.trace_norm_pt
    }

    /// `½ + ½(4 Tr|H| Tr|H^Γ|)^{(L−k+1)/(2k)}` for the `L`-copy parity ensemble.
    pub fn theorem1(&self, copies: usize) -> Result<DecayBound> {
        if !self.pt_invariant {
            return Err(Error::HypothesisViolated(Hypothesis::PtInvariant));
        }
        if self.residual > CERTIFICATE_TOLERANCE {
            return Err(Error::HypothesisViolated(Hypothesis::CertificateEquation));
        }
        if self.product() >= 1.0 {
            return Err(Error::HypothesisViolated(Hypothesis::ProductBelowOne));
        }
        Ok(theorem1_envelope(self.product(), self.copies, copies))
    }

    /// `½ + ½(4 Tr|H| Tr|H^Γ|)^{L/2}` for a single-copy certificate with
    /// `Tr|H| + Tr|H^Γ| ≤ 1` and `Tr|H| < ½`.
    pub fn corollary1(&self, copies: usize) -> Result<DecayBound> {
        if self.copies != 1 || self.residual > CERTIFICATE_TOLERANCE {
            return Err(Error::HypothesisViolated(Hypothesis::CertificateEquation));
        }
        if self.trace_norm + self.trace_norm_pt > 1.0 {
            return Err(Error::HypothesisViolated(Hypothesis::NormSumAtMostOne));
        }
        if self.trace_norm >= 0.5 {
            return Err(Error::HypothesisViolated(Hypothesis::NormBelowHalf));
        }
        Ok(DecayBound::new(0.5 + 0.5 * self.product().powf(copies as f64 / 2.0)))
    }

    /// `½ + ½(4 Tr|H| Tr|H^Γ|)^{m/2}`, the bound for `mk` copies.
    pub fn lemma1(&self, m: usize) -> f64 {
        0.5 + 0.5 * self.product().powf(m as f64 / 2.0)
    }
}

/// `½ + ½ p^{(L−k+1)/(2k)}` with `p = 4 Tr|H| Tr|H^Γ|`, capped at one.
pub fn theorem1_envelope(product: f64, k: usize, copies: usize) -> DecayBound {
    let exponent = (copies as f64 - k as f64 + 1.0) / (2.0 * k as f64);
    DecayBound::new(0.5 + 0.5 * product.powf(exponent))
}

pub fn theorem1_bound(
    e: &TwoStateEnsemble,
    h: &BipartiteOperator,
    k: usize,
    copies: usize,
) -> Result<DecayBound> {
    if !e.is_pt_invariant(PT_INVARIANCE_TOLERANCE) {
        return Err(Error::HypothesisViolated(Hypothesis::PtInvariant));
    }
    Certificate::new(e, h.clone(), k)?.theorem1(copies)
}

pub fn corollary1_bound(e: &TwoStateEnsemble, h: &BipartiteOperator, copies: usize) -> Result<DecayBound> {
    Certificate::new(e, h.clone(), 1)?.corollary1(copies)
}

pub fn lemma1_bound(hk: &BipartiteOperator, m: usize) -> Result<f64> {
    let product = 4.0 * hk.trace_norm()? * hk.partial_transpose().trace_norm()?;
    Ok(0.5 + 0.5 * product.powf(m as f64 / 2.0))
}

/// The pieces of the `m`-fold product certificate built from `H_k`.
#[derive(Debug, Clone)]
pub struct TildeH {
    /// `H'`: whichever of `H`, `H^Γ` has the smaller trace norm.
    pub h_prime: BipartiteOperator,
    pub h_prime_pt: BipartiteOperator,
    /// `components[r]`: sum of all `m`-fold products with exactly `r` factors `H'^Γ`.
    pub components: Vec<BipartiteOperator>,
}

impl TildeH {
    pub fn m(&self) -> usize {
        self.components.len() - 1
    }

    /// Sum of the components with `r < m/2`, plus half of the middle one for even `m`.
    pub fn combined(&self) -> BipartiteOperator {
        let m = self.m();
        let mut acc = BipartiteOperator::zeros(self.components[0].dims());
        for r in 0..=m {
            let w = match (2 * r).cmp(&m) {
                std::cmp::Ordering::Less => 1.0,
                std::cmp::Ordering::Equal => 0.5,
                std::cmp::Ordering::Greater => continue,
            };
            acc = acc.combine(1.0, &self.components[r], w).expect("equal dims");
        }
        acc
    }

    /// The weights multiplying `Tr|H̃_r|` in the triangle-inequality chain.
    pub fn weights(&self) -> Vec<f64> {
        let m = self.m();
        (0..=m)
            .map(|r| match (2 * r).cmp(&m) {
                std::cmp::Ordering::Less => 1.0,
                std::cmp::Ordering::Equal => 0.5,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect()
    }
}

/// All `r`-subsets of `0..m` as bitmasks, in increasing order.
fn subsets_of_weight(m: usize, r: usize) -> Vec<u32> {
    fn rec(start: usize, m: usize, left: usize, mask: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..=(m - left) {
            rec(i + 1, m, left - 1, mask | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, m, r, 0, &mut out);
    out
}

pub fn tilde_h_components(hk: &BipartiteOperator, m: usize) -> Result<TildeH> {
    if m == 0 {
        return Err(Error::InvalidConfig("m must be positive".into()));
    }
    let mut dims = hk.dims();
    for _ in 1..m {
        dims = dims.tensor(&hk.dims())?;
    }
    let hk_pt = hk.partial_transpose();
    let (h_prime, h_prime_pt) = if hk.trace_norm()? <= hk_pt.trace_norm()? {
        (hk.clone(), hk_pt)
    } else {
        (hk_pt, hk.clone())
    };
    let mut components = Vec::with_capacity(m + 1);
    for r in 0..=m {
        let mut sum = BipartiteOperator::zeros(dims);
        for mask in subsets_of_weight(m, r) {
            let factor = |l: usize| if mask & (1 << l) != 0 { &h_prime_pt } else { &h_prime };
            let mut term = factor(0).clone();
            for l in 1..m {
                term = term.tensor(factor(l))?;
            }
            sum = sum.add(&term)?;
        }
        components.push(sum);
    }
    Ok(TildeH {
        h_prime,
        h_prime_pt,
        components,
    })
}

/// `H̃` for `m` tensor factors of `H_k`; satisfies `H̃ + H̃^Γ = (H_k + H_k^Γ)^{⊗m}`.
pub fn tilde_h(hk: &BipartiteOperator, m: usize) -> Result<BipartiteOperator> {
    Ok(tilde_h_components(hk, m)?.combined())
}

/// Flags recording which hypotheses hold for the certificate behind a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Feasibility {
    pub pt_invariant: bool,
    #[serde(rename = "hlek_residual")]
    pub certificate_residual: f64,
    #[serde(rename = "fhho_product")]
    pub norm_product: f64,
    #[serde(rename = "idsf_sum")]
    pub norm_sum: f64,
    #[serde(rename = "idss_half")]
    pub norm_below_half: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub theta: Option<f64>,
    #[serde(rename = "L")]
    pub copies: usize,
    pub k: usize,
    #[serde(rename = "p_G")]
    pub p_g: f64,
    pub ppt_upper_thm1: Option<f64>,
    pub ppt_upper_cor1: Option<f64>,
    pub ppt_upper_thm1_raw: Option<f64>,
    pub ppt_upper_cor1_raw: Option<f64>,
    #[serde(rename = "product_4T")]
    pub product_4t: f64,
    pub feasibility: Feasibility,
}

impl BoundReport {
    /// Bounds for the `L`-copy parity ensemble of `e` certified by `cert`.
    /// Bounds whose hypotheses fail are reported as absent.
    pub fn new(e: &TwoStateEnsemble, cert: &Certificate, copies: usize, theta: Option<f64>) -> Result<Self> {
        let thm1 = cert.theorem1(copies).ok();
        let cor1 = cert.corollary1(copies).ok();
        Ok(Self {
            theta,
            copies,
            k: cert.copies(),
            p_g: helstrom_value_copies(e, copies)?,
            ppt_upper_thm1: thm1.map(|b| b.value),
            ppt_upper_cor1: cor1.map(|b| b.value),
            ppt_upper_thm1_raw: thm1.map(|b| b.raw),
            ppt_upper_cor1_raw: cor1.map(|b| b.raw),
            product_4t: cert.product(),
            feasibility: Feasibility {
                pt_invariant: cert.pt_invariant(),
                certificate_residual: cert.residual(),
                norm_product: cert.product(),
                norm_sum: cert.trace_norm() + cert.trace_norm_pt(),
                norm_below_half: cert.trace_norm() < 0.5,
            },
        })
    }
}

/// The two-copy certificate of the example ensemble at `t`.
pub fn example_certificate(t: ThetaInstance) -> Result<Certificate> {
    Certificate::new(&example_ensemble(t), example_h(t), 2)
}

/// Bound report for the example ensemble at `t` with `L` copies.
pub fn example_bound_report(t: ThetaInstance, copies: usize) -> Result<BoundReport> {
    let e = example_ensemble(t);
    let cert = example_certificate(t)?;
    BoundReport::new(&e, &cert, copies, Some(t.theta()))
}
