//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use sephide_core::{BipartiteDims, BipartiteOperator, TwoStateEnsemble};

pub const PI: f64 = std::f64::consts::PI;

/// Frozen output of `tests/oracle/ppt_sdp_oracle.py`, a general-purpose SDP
/// formulation of the primal PPT problem: `(θ, L, p_PPT)`.
pub const PPT_ORACLE: [(f64, usize, f64); 9] = [
    (0.0, 1, 1.000000000000),
    (PI / 12.0, 1, 0.984122918276),
    (PI / 6.0, 1, 0.950693909431),
    (PI / 4.0, 1, 0.933012701888),
    (PI / 3.0, 1, 0.950693909432),
    (PI / 6.0, 2, 0.920192867368),
    (PI / 4.0, 2, 0.912555093102),
    (PI / 6.0, 3, 0.885847548091),
    (PI / 4.0, 3, 0.880369296244),
];

/// Hermitian `(R + R†)/2` from `2n²` reals in `[-1, 1]`.
pub fn hermitian_from(dims: BipartiteDims, raw: &[f64]) -> BipartiteOperator {
    let n = dims.total();
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            let z = Complex64::new(raw[2 * (i * n + j)], raw[2 * (i * n + j) + 1]);
            m[i * n + j] += z * 0.5;
            m[j * n + i] += z.conj() * 0.5;
        }
    }
    BipartiteOperator::new(dims, m).unwrap()
}

/// Roots of `det(λ − A)` for Hermitian `A`, ascending.
///
/// Coefficients come from the Faddeev-LeVerrier recursion; roots from the
/// quadratic formula (`n = 2`) or Durand-Kerner followed by Newton polishing.
pub fn char_poly_roots(n: usize, a: &[Complex64]) -> Vec<f64> {
    // p(λ) = λⁿ + c[1] λⁿ⁻¹ + ... + c[n]
    let mut c = vec![Complex64::new(1.0, 0.0); n + 1];
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k)/k
        let mut next = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    s += a[i * n + l] * m[l * n + j];
                }
                next[i * n + j] = s;
            }
            next[i * n + i] += c[k - 1];
        }
        m = next;
        let mut tr = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for l in 0..n {
                tr += a[i * n + l] * m[l * n + i];
            }
        }
        c[k] = -tr / k as f64;
    }
    let coeffs: Vec<f64> = c.iter().map(|z| z.re).collect();
    let mut roots = if n == 2 {
        let (b, cc) = (coeffs[1], coeffs[2]);
        let disc = (b * b - 4.0 * cc).max(0.0).sqrt();
        let q = -0.5 * (b + b.signum() * disc);
        if q == 0.0 {
            vec![0.0, 0.0]
        } else {
            vec![q, cc / q]
        }
    } else {
        durand_kerner(&coeffs)
    };
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = horner(&coeffs, *r);
            if dp == 0.0 {
                break;
            }
            *r -= p / dp;
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn horner(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

fn durand_kerner(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    z.into_iter().map(|r| r.re).collect()
}

/// `max |a − b| / max(1, |b|)`.
pub fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        .fold(0.0, f64::max)
}

/// `E^(L)` by explicit enumeration of all `2^L` label strings.
pub fn coarse_grain_brute_force(e: &TwoStateEnsemble, copies: usize) -> (f64, f64, BipartiteOperator, BipartiteOperator) {
    let dims = {
        let mut d = e.dims();
        for _ in 1..copies {
            d = d.tensor(&e.dims()).unwrap();
        }
        d
    };
    let mut acc = [BipartiteOperator::zeros(dims), BipartiteOperator::zeros(dims)];
    for labels in 0..(1usize << copies) {
        let mut weight = 1.0;
        let mut state: Option<BipartiteOperator> = None;
        for l in 0..copies {
            let b = (labels >> l) & 1;
            weight *= e.prior(b);
            state = Some(match state {
                None => e.state(b).clone(),
                Some(s) => s.tensor(e.state(b)).unwrap(),
            });
        }
        let parity = labels.count_ones() as usize % 2;
        acc[parity] = acc[parity].combine(1.0, &state.unwrap(), weight).unwrap();
    }
    let [w0, w1] = acc;
    let (eta0, eta1) = (w0.trace(), w1.trace());
    (eta0, eta1, w0.scale(1.0 / eta0), w1.scale(1.0 / eta1))
}
