//! Seeded Monte Carlo simulation of the one-bit hiding scheme.
//!
//! Each trial: the hider draws the hidden bit `x`, prepares `L` copies with
//! labels `b_l` drawn from the ensemble priors, and broadcasts
//! `z = x ⊕ (b_1 ⊕ … ⊕ b_L)`. The receivers measure, estimate the parity `ŷ`
//! and output `x̂ = z ⊕ ŷ`. Outcomes are sampled from exact Born probabilities;
//! no state vectors are evolved.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ensemble::TwoStateEnsemble;
use crate::error::{Error, Result};
use crate::linalg::{BipartiteOperator, MAX_DIMENSION};

const MEASUREMENT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct HidingInstance {
    pub ensemble: TwoStateEnsemble,
    pub copies: usize,
    /// Probability that the hidden bit is 0.
    pub hidden_bit_zero_prob: f64,
}

impl HidingInstance {
    pub fn new(ensemble: TwoStateEnsemble, copies: usize) -> Result<Self> {
        Self::with_bit_prior(ensemble, copies, 0.5)
    }

    pub fn with_bit_prior(ensemble: TwoStateEnsemble, copies: usize, hidden_bit_zero_prob: f64) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidConfig("at least one copy is required".into()));
        }
        if !(0.0..=1.0).contains(&hidden_bit_zero_prob) {
            return Err(Error::InvalidConfig(format!(
                "hidden-bit prior {hidden_bit_zero_prob} is not a probability"
            )));
        }
        Ok(Self {
            ensemble,
            copies,
            hidden_bit_zero_prob,
        })
    }

    fn descriptor(&self) -> InstanceDescriptor {
        let dims = self.ensemble.dims();
        InstanceDescriptor {
            copies: self.copies,
            hidden_bit_zero_prob: self.hidden_bit_zero_prob,
            eta0: self.ensemble.eta0(),
            eta1: self.ensemble.eta1(),
            d_a: dims.alice(),
            d_b: dims.bob(),
        }
    }
}

/// A two-outcome product measurement `M₀ = A₀ ⊗ B₀`, `M₁ = 1 − M₀`, applied to every copy.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMeasurement {
    pub name: String,
    pub alice: Vec<Complex64>,
    pub bob: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Strategy {
    /// Projects the whole `L`-copy system onto the positive part of `Λ_E^{⊗L}`,
    /// which for orthogonal states is the support of `ρ₀^(L)`.
    GlobalOrthogonal,
    /// Per-copy product measurement, maximum-likelihood label estimate per copy
    /// (ties go to 0), then parity.
    PerCopyLocal(LocalMeasurement),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum StrategyDescriptor {
    GlobalOrthogonal,
    PerCopyLocal { name: String },
}

impl Strategy {
    pub fn descriptor(&self) -> StrategyDescriptor {
        match self {
            Strategy::GlobalOrthogonal => StrategyDescriptor::GlobalOrthogonal,
            Strategy::PerCopyLocal(m) => StrategyDescriptor::PerCopyLocal { name: m.name.clone() },
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Strategy::GlobalOrthogonal => "global",
            Strategy::PerCopyLocal(m) => &m.name,
        }
    }

    /// Two-qubit product measurements built from projectors onto the
    /// computational, Hadamard and `θ`-rotated bases (or the identity) on each side.
    pub fn qubit_catalog(theta: f64) -> Vec<Strategy> {
        let (c, s) = (theta.cos(), theta.sin());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let locals: [(&str, Option<[f64; 2]>); 7] = [
            ("id", None),
            ("z0", Some([1.0, 0.0])),
            ("z1", Some([0.0, 1.0])),
            ("x+", Some([h, h])),
            ("x-", Some([h, -h])),
            ("t+", Some([c, s])),
            ("t-", Some([s, -c])),
        ];
        let matrix = |v: Option<[f64; 2]>| match v {
            None => vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
            Some([a, b]) => vec![
                Complex64::new(a * a, 0.0),
                Complex64::new(a * b, 0.0),
                Complex64::new(b * a, 0.0),
                Complex64::new(b * b, 0.0),
            ],
        };
        let mut out = Vec::with_capacity(locals.len() * locals.len());
        for (na, va) in &locals {
            for (nb, vb) in &locals {
                out.push(Strategy::PerCopyLocal(LocalMeasurement {
                    name: format!("{na}*{nb}"),
                    alice: matrix(*va),
                    bob: matrix(*vb),
                }));
            }
        }
        out
    }

    /// The blind strategy `M₀ = 1`: always guesses parity 0.
    pub fn blind() -> Strategy {
        Strategy::qubit_catalog(0.0).swap_remove(0)
    }

    pub fn by_name(theta: f64, name: &str) -> Option<Strategy> {
        if name == "global" {
            return Some(Strategy::GlobalOrthogonal);
        }
        Strategy::qubit_catalog(theta).into_iter().find(|s| s.name() == name)
    }
}

/// Per-copy statistics of a local strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopyChannel {
    /// `likelihood[b][o] = Tr(ρ_b M_o)`.
    pub likelihood: [[f64; 2]; 2],
    /// Label estimate for each outcome.
    pub decode: [usize; 2],
    /// Probability that one copy's label is estimated wrongly.
    pub error: f64,
}

fn local_channel(e: &TwoStateEnsemble, m: &LocalMeasurement) -> Result<CopyChannel> {
    let m0 = BipartiteOperator::product(&m.alice, &m.bob)
        .map_err(|err| Error::InvalidStrategy(format!("{}: {err}", m.name)))?;
    if m0.dims() != e.dims() {
        return Err(Error::InvalidStrategy(format!(
            "{} acts on {}, states on {}",
            m.name,
            m0.dims(),
            e.dims()
        )));
    }
    let m1 = BipartiteOperator::identity(m0.dims()).sub(&m0)?;
    if !m0.is_psd(MEASUREMENT_TOLERANCE)? || !m1.is_psd(MEASUREMENT_TOLERANCE)? {
        return Err(Error::InvalidStrategy(format!("{}: elements are not positive", m.name)));
    }
    let mut likelihood = [[0.0; 2]; 2];
    for (b, row) in likelihood.iter_mut().enumerate() {
        row[0] = e.state(b).trace_product(&m0)?;
        row[1] = e.state(b).trace_product(&m1)?;
    }
    let decode = [0, 1].map(|o| usize::from(likelihood[1][o] > likelihood[0][o]));
    let mut error = 0.0;
    for b in 0..2 {
        for o in 0..2 {
            if decode[o] != b {
                error += e.prior(b) * likelihood[b][o];
            }
        }
    }
    Ok(CopyChannel {
        likelihood,
        decode,
        error,
    })
}

/// Outcome-0 probability of the global projector for every label string,
/// indexed by the string read as a binary number (copy 1 most significant).
fn global_outcome_table(e: &TwoStateEnsemble, copies: usize) -> Result<Vec<f64>> {
    let d = e.dims().total();
    let total = (d as u128).checked_pow(copies as u32).unwrap_or(u128::MAX);
    if total > MAX_DIMENSION as u128 {
        return Err(Error::DimensionTooLarge {
            dim: usize::try_from(total).unwrap_or(usize::MAX),
            max: MAX_DIMENSION,
        });
    }
    // Λ^{⊗L} is diagonal in products of single-copy eigenvectors of Λ.
    let eig = e.lambda().eigen()?;
    let diag: Vec<[f64; 2]> = (0..d)
        .map(|j| {
            let v: Vec<Complex64> = (0..d).map(|i| eig.vectors[i * d + j]).collect();
            Ok([e.rho0().expectation(&v)?, e.rho1().expectation(&v)?])
        })
        .collect::<Result<_>>()?;
    let mut table = vec![0.0; 1 << copies];
    let mut index = vec![0usize; copies];
    loop {
        let eigenvalue: f64 = index.iter().map(|&j| eig.values[j]).product();
        if eigenvalue > 0.0 {
            for (labels, entry) in table.iter_mut().enumerate() {
                let mut p = 1.0;
                for (l, &j) in index.iter().enumerate() {
                    let b = (labels >> (copies - 1 - l)) & 1;
                    p *= diag[j][b];
                }
                *entry += p;
            }
        }
        // odometer over j ∈ {0..d}^L
        let mut pos = copies;
        loop {
            if pos == 0 {
                return Ok(table.into_iter().map(|p| p.clamp(0.0, 1.0)).collect());
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < d {
                break;
            }
            index[pos] = 0;
        }
    }
}

fn labels_prior(e: &TwoStateEnsemble, labels: usize, copies: usize) -> f64 {
    (0..copies).map(|l| e.prior((labels >> l) & 1)).product()
}

/// Exact success probability of `strat` at guessing the hidden bit.
pub fn strategy_success_probability(inst: &HidingInstance, strat: &Strategy) -> Result<f64> {
    let e = &inst.ensemble;
    match strat {
        Strategy::PerCopyLocal(m) => {
            let channel = local_channel(e, m)?;
            // Parity is right iff an even number of copies is misread.
            Ok(0.5 * (1.0 + (1.0 - 2.0 * channel.error).powi(inst.copies as i32)))
        }
        Strategy::GlobalOrthogonal => {
            let table = global_outcome_table(e, inst.copies)?;
            let mut success = 0.0;
            for (labels, &q0) in table.iter().enumerate() {
                let parity = labels.count_ones() as usize % 2;
                let correct = if parity == 0 { q0 } else { 1.0 - q0 };
                success += labels_prior(e, labels, inst.copies) * correct;
            }
            Ok(success)
        }
    }
}

/// The catalog strategy with the highest exact success probability.
pub fn best_strategy(inst: &HidingInstance, catalog: &[Strategy]) -> Result<(Strategy, f64)> {
    let mut best: Option<(Strategy, f64)> = None;
    for s in catalog {
        let p = strategy_success_probability(inst, s)?;
        if best.as_ref().map_or(true, |(_, q)| p > *q) {
            best = Some((s.clone(), p));
        }
    }
    best.ok_or_else(|| Error::InvalidStrategy("empty catalog".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InstanceDescriptor {
    #[serde(rename = "L")]
    pub copies: usize,
    pub hidden_bit_zero_prob: f64,
    pub eta0: f64,
    pub eta1: f64,
    #[serde(rename = "d_A")]
    pub d_a: usize,
    #[serde(rename = "d_B")]
    pub d_b: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub trials: u64,
    pub successes: u64,
    pub empirical_rate: f64,
    pub exact_rate: f64,
    pub seed: u64,
    pub workers: usize,
    pub strategy: StrategyDescriptor,
    pub parameters: InstanceDescriptor,
}

/// How a trial's receiver produces its parity estimate.
enum Receiver {
    Global(Vec<f64>),
    Local(CopyChannel),
}

fn run_trials(
    inst: &HidingInstance,
    receiver: &Receiver,
    trials: u64,
    seed: u64,
    stream: u64,
) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let e = &inst.ensemble;
    let copies = inst.copies;
    let mut successes = 0;
    for _ in 0..trials {
        let x = usize::from(rng.gen::<f64>() >= inst.hidden_bit_zero_prob);
        let mut labels = 0usize;
        let mut y_hat = 0usize;
        for _ in 0..copies {
            let b = usize::from(rng.gen::<f64>() < e.eta1());
            labels = (labels << 1) | b;
            if let Receiver::Local(ch) = receiver {
                let o = usize::from(rng.gen::<f64>() >= ch.likelihood[b][0]);
                y_hat ^= ch.decode[o];
            }
        }
        if let Receiver::Global(table) = receiver {
            y_hat = usize::from(rng.gen::<f64>() >= table[labels]);
        }
        let y = labels.count_ones() as usize % 2;
        let z = x ^ y;
        if z ^ y_hat == x {
            successes += 1;
        }
    }
    successes
}

/// Simulates `trials` rounds with a single worker.
pub fn run_protocol(inst: &HidingInstance, strat: &Strategy, trials: u64, seed: u64) -> Result<SimReport> {
    run_protocol_parallel(inst, strat, trials, seed, 1)
}

/// Splits the trials across `workers`, worker `w` drawing from stream `w` of the
/// seeded generator. Output is reproducible for a fixed worker count.
pub fn run_protocol_parallel(
    inst: &HidingInstance,
    strat: &Strategy,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<SimReport> {
    if trials == 0 || workers == 0 {
        return Err(Error::InvalidConfig("trials and workers must be positive".into()));
    }
    let receiver = match strat {
        Strategy::GlobalOrthogonal => Receiver::Global(global_outcome_table(&inst.ensemble, inst.copies)?),
        Strategy::PerCopyLocal(m) => Receiver::Local(local_channel(&inst.ensemble, m)?),
    };
    let exact_rate = strategy_success_probability(inst, strat)?;
    let per_worker = trials / workers as u64;
    let remainder = trials % workers as u64;
    let successes: u64 = (0..workers)
        .into_par_iter()
        .map(|w| {
            let count = per_worker + u64::from((w as u64) < remainder);
            run_trials(inst, &receiver, count, seed, w as u64)
        })
        .sum();
    Ok(SimReport {
        trials,
        successes,
        empirical_rate: successes as f64 / trials as f64,
        exact_rate,
        seed,
        workers,
        strategy: strat.descriptor(),
        parameters: inst.descriptor(),
    })
}

/// Per-copy outcome distribution `[Tr(ρ_b M₀), Tr(ρ_b M₁)]` for both labels.
pub fn local_outcome_distribution(e: &TwoStateEnsemble, m: &LocalMeasurement) -> Result<[[f64; 2]; 2]> {
    Ok(local_channel(e, m)?.likelihood)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{example_ensemble, ThetaInstance};

    fn instance(theta: f64, copies: usize) -> HidingInstance {
        HidingInstance::new(example_ensemble(ThetaInstance::new(theta).unwrap()), copies).unwrap()
    }

    #[test]
    fn blind_strategy_is_exactly_half() {
        for copies in 1..4 {
            let p = strategy_success_probability(&instance(0.5, copies), &Strategy::blind()).unwrap();
            assert!((p - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn computational_basis_reads_theta_zero_perfectly() {
        let inst = instance(0.0, 1);
        let zz = Strategy::by_name(0.0, "z0*z0").unwrap();
        assert!((strategy_success_probability(&inst, &zz).unwrap() - 1.0).abs() < 1e-15);
        let report = run_protocol(&inst, &zz, 5_000, 3).unwrap();
        assert_eq!(report.successes, 5_000);
    }

    #[test]
    fn invalid_measurement_is_rejected() {
        let inst = instance(0.2, 1);
        let two = Complex64::new(2.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let bad = Strategy::PerCopyLocal(LocalMeasurement {
            name: "too-big".into(),
            alice: vec![two, z, z, two],
            bob: vec![two, z, z, two],
        });
        assert!(matches!(run_protocol(&inst, &bad, 10, 0), Err(Error::InvalidStrategy(_))));
        let wrong_dims = Strategy::PerCopyLocal(LocalMeasurement {
            name: "qutrit".into(),
            alice: vec![Complex64::new(1.0, 0.0); 9],
            bob: vec![two, z, z, two],
        });
        assert!(matches!(run_protocol(&inst, &wrong_dims, 10, 0), Err(Error::InvalidStrategy(_))));
    }

    #[test]
    fn global_strategy_guard() {
        let inst = instance(0.2, 7);
        assert!(matches!(
            run_protocol(&inst, &Strategy::GlobalOrthogonal, 10, 0),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn per_copy_outcome_probabilities_sum_to_one() {
        let t = 0.7;
        let e = example_ensemble(ThetaInstance::new(t).unwrap());
        for s in Strategy::qubit_catalog(t) {
            if let Strategy::PerCopyLocal(m) = s {
                for row in local_outcome_distribution(&e, &m).unwrap() {
                    assert!((row[0] + row[1] - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn worker_split_is_deterministic() {
        let inst = instance(0.6, 2);
        let s = Strategy::by_name(0.6, "z0*t+").unwrap();
        let a = run_protocol_parallel(&inst, &s, 1001, 9, 4).unwrap();
        let b = run_protocol_parallel(&inst, &s, 1001, 9, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.workers, 4);
    }
}
