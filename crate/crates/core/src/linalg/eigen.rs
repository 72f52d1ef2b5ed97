//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation acts on a pivot pair `(p, q)`. The complex off-diagonal entry
//! `g = a_pq` is first stripped of its phase, leaving a real symmetric 2x2
//! block that a classical Givens rotation annihilates. Combined, the unitary is
//!
//! ```text
//! U = [[ c,          s        ],
//!      [ -s e^{-iφ}, c e^{-iφ} ]]      φ = arg(g)
//! ```
//!
//! applied as `A ← Uᴴ A U` on rows/columns `p` and `q`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on full sweeps before reporting [`Error::NonConvergence`].
pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius mass at which the iteration stops. Scaled by
/// `max(1, ‖A‖_F)` so that large-norm inputs are judged relatively.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in nondecreasing order.
    pub values: Vec<f64>,
    /// Row-major `n x n`; column `j` is the eigenvector of `values[j]`.
    pub vectors: Vec<Complex64>,
}

fn off_diagonal_mass(n: usize, a: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            acc += a[p * n + q].norm_sqr();
        }
    }
    (2.0 * acc).sqrt()
}

fn frobenius(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Runs cyclic sweeps on `a` (row-major, Hermitian, `n x n`) in place.
/// When `v` is given, the accumulated rotations are multiplied into it.
fn jacobi_in_place(
    n: usize,
    a: &mut [Complex64],
    mut v: Option<&mut [Complex64]>,
    max_sweeps: usize,
) -> Result<()> {
    let threshold = OFF_DIAGONAL_TOLERANCE * frobenius(a).max(1.0);
    for _sweep in 0..max_sweeps {
        if off_diagonal_mass(n, a) <= threshold {
            return Ok(());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[p * n + q];
                let g_abs = g.norm();
                if g_abs == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Entry is negligible against both diagonal entries.
                if app.abs() + 1e3 * g_abs == app.abs() && aqq.abs() + 1e3 * g_abs == aqq.abs() {
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = g / g_abs;
                let phase_conj = phase.conj();
                let tau = (aqq - app) / (2.0 * g_abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- A U
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * phase_conj * s;
                    a[k * n + q] = akp * s + akq * phase_conj * c;
                }
                // A <- U^H A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * phase * s;
                    a[q * n + k] = apk * s + aqk * phase * c;
                }
                a[p * n + p] = Complex64::new(app - t * g_abs, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * g_abs, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);

                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * c - vkq * phase_conj * s;
                        v[k * n + q] = vkp * s + vkq * phase_conj * c;
                    }
                }
            }
        }
    }
    let off_diagonal = off_diagonal_mass(n, a);
    if off_diagonal <= threshold {
        Ok(())
    } else {
        Err(Error::NonConvergence {
            sweeps: max_sweeps,
            off_diagonal,
        })
    }
}

/// Eigenvalues of the Hermitian matrix `a` (row-major `n x n`), sorted ascending.
pub fn eigenvalues(n: usize, a: &[Complex64], max_sweeps: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    let mut work = a.to_vec();
    jacobi_in_place(n, &mut work, None, max_sweeps)?;
    let mut values: Vec<f64> = (0..n).map(|i| work[i * n + i].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Full eigen-decomposition of the Hermitian matrix `a`.
pub fn eigen(n: usize, a: &[Complex64], max_sweeps: usize) -> Result<HermitianEigen> {
    let mut basis = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        basis[i * n + i] = Complex64::new(1.0, 0.0);
    }
    eigen_from_basis(n, a, basis, max_sweeps)
}

/// Eigen-decomposition started from a unitary guess `basis` (columns).
///
/// `a` is first rotated into the guess, `B = Vᴴ A V`; if the guess is close to
/// an eigenbasis of `a` the remaining Jacobi work is a sweep or two. Used by the
/// proximal solver whose successive iterates change little.
pub fn eigen_from_basis(
    n: usize,
    a: &[Complex64],
    basis: Vec<Complex64>,
    max_sweeps: usize,
) -> Result<HermitianEigen> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(basis.len(), n * n);
    let mut work = congruence(n, a, &basis);
    let mut vectors = basis;
    jacobi_in_place(n, &mut work, Some(&mut vectors), max_sweeps)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[i * n + i].re.total_cmp(&work[j * n + j].re));
    let values = order.iter().map(|&i| work[i * n + i].re).collect();
    let mut sorted = vec![Complex64::new(0.0, 0.0); n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            sorted[k * n + new_col] = vectors[k * n + old_col];
        }
    }
    Ok(HermitianEigen {
        values,
        vectors: sorted,
    })
}

/// `Vᴴ A V`, re-symmetrized so that roundoff does not break Hermiticity.
fn congruence(n: usize, a: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    // av = A V
    let mut av = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = &v[k * n..(k + 1) * n];
            let out = &mut av[i * n..(i + 1) * n];
            for (o, x) in out.iter_mut().zip(row) {
                *o += aik * x;
            }
        }
    }
    // out = V^H (A V)
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        for i in 0..n {
            let vki = v[k * n + i].conj();
            if vki == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = &av[k * n..(k + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for (o, x) in dst.iter_mut().zip(row) {
                *o += vki * x;
            }
        }
    }
    for i in 0..n {
        out[i * n + i].im = 0.0;
        for j in (i + 1)..n {
            let m = (out[i * n + j] + out[j * n + i].conj()) * 0.5;
            out[i * n + j] = m;
            out[j * n + i] = m.conj();
        }
    }
    out
}
