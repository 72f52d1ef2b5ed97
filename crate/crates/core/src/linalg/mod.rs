//! Dense Hermitian operators on a two-party space `C^{d_A} ⊗ C^{d_B}`.
//!
//! Storage is row-major in the product basis `|a⟩⊗|b⟩` with Bob's index
//! running fastest, so the flat index of `(a, b)` is `a * d_B + b`.

pub mod eigen;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eigen::HermitianEigen;

/// Largest supported total dimension `d_A * d_B` (six copies of a two-qubit system).
pub const MAX_DIMENSION: usize = 4096;

/// Hermiticity tolerance applied when an operator is built from raw entries.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Local dimensions of the two parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteDims {
    #[serde(rename = "d_A")]
    d_a: usize,
    #[serde(rename = "d_B")]
    d_b: usize,
}

impl BipartiteDims {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a < 2 || d_b < 2 {
            return Err(Error::InvalidDims { d_a, d_b });
        }
        let dims = Self { d_a, d_b };
        dims.check_guard()?;
        Ok(dims)
    }

    /// Two qubits.
    pub fn qubits() -> Self {
        Self { d_a: 2, d_b: 2 }
    }

    pub fn alice(&self) -> usize {
        self.d_a
    }

    pub fn bob(&self) -> usize {
        self.d_b
    }

    /// Total dimension `d_A * d_B`.
    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }

    /// Dimensions of the tensor product with the A:B grouping preserved.
    pub fn tensor(&self, other: &BipartiteDims) -> Result<BipartiteDims> {
        let d_a = self.d_a.checked_mul(other.d_a);
        let d_b = self.d_b.checked_mul(other.d_b);
        match (d_a, d_b) {
            (Some(d_a), Some(d_b)) => {
                let dims = BipartiteDims { d_a, d_b };
                dims.check_guard()?;
                Ok(dims)
            }
            _ => Err(Error::DimensionTooLarge {
                dim: usize::MAX,
                max: MAX_DIMENSION,
            }),
        }
    }

    fn check_guard(&self) -> Result<()> {
        match self.d_a.checked_mul(self.d_b) {
            Some(dim) if dim <= MAX_DIMENSION => Ok(()),
            Some(dim) => Err(Error::DimensionTooLarge {
                dim,
                max: MAX_DIMENSION,
            }),
            None => Err(Error::DimensionTooLarge {
                dim: usize::MAX,
                max: MAX_DIMENSION,
            }),
        }
    }
}

impl fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.d_a, self.d_b)
    }
}

/// A Hermitian operator on a two-party space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct BipartiteOperator {
    dims: BipartiteDims,
    data: Vec<Complex64>,
}

impl BipartiteOperator {
    /// Builds an operator from row-major entries, rejecting non-Hermitian input.
    pub fn new(dims: BipartiteDims, entries: Vec<Complex64>) -> Result<Self> {
        let n = dims.total();
        if entries.len() != n * n {
            return Err(Error::EntryCount {
                expected: n * n,
                got: entries.len(),
            });
        }
        let op = Self {
            dims,
            data: entries,
        };
        let scale = op.data.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let deviation = op.hermitian_deviation();
        if deviation > HERMITIAN_TOLERANCE * scale {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(op)
    }

    /// Trusted constructor for results of Hermiticity-preserving operations.
    pub(crate) fn from_raw(dims: BipartiteDims, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), dims.total() * dims.total());
        Self { dims, data }
    }

    pub fn zeros(dims: BipartiteDims) -> Self {
        let n = dims.total();
        Self::from_raw(dims, vec![ZERO; n * n])
    }

    pub fn identity(dims: BipartiteDims) -> Self {
        let n = dims.total();
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = ONE;
        }
        Self::from_raw(dims, data)
    }

    pub fn from_diagonal(dims: BipartiteDims, diagonal: &[f64]) -> Result<Self> {
        let n = dims.total();
        if diagonal.len() != n {
            return Err(Error::EntryCount {
                expected: n,
                got: diagonal.len(),
            });
        }
        let mut data = vec![ZERO; n * n];
        for (i, d) in diagonal.iter().enumerate() {
            data[i * n + i] = Complex64::new(*d, 0.0);
        }
        Ok(Self::from_raw(dims, data))
    }

    /// Rank-one operator `|v⟩⟨v|` (no normalization applied).
    pub fn projector(dims: BipartiteDims, v: &[Complex64]) -> Result<Self> {
        Self::outer(dims, v, v)
    }

    /// `|u⟩⟨v| + |v⟩⟨u|`, the Hermitian part of an off-diagonal dyad (times two).
    pub fn symmetric_dyad(dims: BipartiteDims, u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        let uv = Self::outer(dims, u, v)?;
        let n = dims.total();
        let mut data = uv.data;
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] += u[j].conj() * v[i];
            }
        }
        Ok(Self::from_raw(dims, data))
    }

    fn outer(dims: BipartiteDims, u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        let n = dims.total();
        if u.len() != n || v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} / {} on a {dims} space",
                u.len(),
                v.len()
            )));
        }
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = u[i] * v[j].conj();
            }
        }
        Ok(Self::from_raw(dims, data))
    }

    /// `P ⊗ Q` for local Hermitian matrices `P` (`d_A x d_A`) and `Q` (`d_B x d_B`).
    pub fn product(alice: &[Complex64], bob: &[Complex64]) -> Result<Self> {
        let d_a = square_side(alice.len())?;
        let d_b = square_side(bob.len())?;
        let dims = BipartiteDims::new(d_a, d_b)?;
        let n = dims.total();
        let mut data = vec![ZERO; n * n];
        for a in 0..d_a {
            for a2 in 0..d_a {
                let p = alice[a * d_a + a2];
                for b in 0..d_b {
                    for b2 in 0..d_b {
                        data[(a * d_b + b) * n + a2 * d_b + b2] = p * bob[b * d_b + b2];
                    }
                }
            }
        }
        Self::new(dims, data)
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    /// Matrix side length `d_A * d_B`.
    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.data
    }

    fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Largest absolute imaginary part among the entries.
    pub fn max_imaginary(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Tensor product regrouped so that all of Alice's factors precede Bob's:
    /// the plain Kronecker product followed by `A₁B₁A₂B₂ → A₁A₂B₁B₂`.
    pub fn tensor(&self, other: &BipartiteOperator) -> Result<BipartiteOperator> {
        let dims = self.dims.tensor(&other.dims)?;
        let map = regroup_map(self.dims, other.dims);
        let (n1, n2) = (self.dim(), other.dim());
        let n = dims.total();
        let mut data = vec![ZERO; n * n];
        for i1 in 0..n1 {
            for j1 in 0..n1 {
                let x = self.data[i1 * n1 + j1];
                if x == ZERO {
                    continue;
                }
                for i2 in 0..n2 {
                    let row = map[i1 * n2 + i2] * n;
                    for j2 in 0..n2 {
                        data[row + map[j1 * n2 + j2]] = x * other.data[i2 * n2 + j2];
                    }
                }
            }
        }
        Ok(BipartiteOperator::from_raw(dims, data))
    }

    /// `X^{⊗copies}` using `copies - 1` bipartite tensor products.
    pub fn tensor_power(&self, copies: usize) -> Result<BipartiteOperator> {
        if copies == 0 {
            return Err(Error::InvalidConfig("tensor power needs at least one copy".into()));
        }
        let mut acc = self.clone();
        for _ in 1..copies {
            acc = acc.tensor(self)?;
        }
        Ok(acc)
    }

    /// Transposes Bob's factor: `X[(a,b),(a',b')] ↦ X[(a,b'),(a',b)]`.
    pub fn partial_transpose(&self) -> BipartiteOperator {
        let (d_a, d_b) = (self.dims.d_a, self.dims.d_b);
        let n = self.dim();
        let mut data = vec![ZERO; n * n];
        for a in 0..d_a {
            for a2 in 0..d_a {
                for b in 0..d_b {
                    for b2 in 0..d_b {
                        data[(a * d_b + b) * n + a2 * d_b + b2] =
                            self.data[(a * d_b + b2) * n + a2 * d_b + b];
                    }
                }
            }
        }
        BipartiteOperator::from_raw(self.dims, data)
    }

    /// Transposes Alice's factor instead of Bob's.
    pub fn partial_transpose_alice(&self) -> BipartiteOperator {
        let (d_a, d_b) = (self.dims.d_a, self.dims.d_b);
        let n = self.dim();
        let mut data = vec![ZERO; n * n];
        for a in 0..d_a {
            for a2 in 0..d_a {
                for b in 0..d_b {
                    for b2 in 0..d_b {
                        data[(a * d_b + b) * n + a2 * d_b + b2] =
                            self.data[(a2 * d_b + b) * n + a * d_b + b2];
                    }
                }
            }
        }
        BipartiteOperator::from_raw(self.dims, data)
    }

    /// All eigenvalues in nondecreasing order (cyclic Jacobi, default sweep cap).
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigen::eigenvalues(self.dim(), &self.data, eigen::DEFAULT_MAX_SWEEPS)
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        eigen::eigen(self.dim(), &self.data, eigen::DEFAULT_MAX_SWEEPS)
    }

    /// Sum of absolute eigenvalues.
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().map(|x| x.abs()).sum())
    }

    /// Largest absolute eigenvalue.
    pub fn operator_norm(&self) -> Result<f64> {
        let vals = self.eigenvalues()?;
        Ok(vals.first().map_or(0.0, |x| x.abs()).max(vals.last().map_or(0.0, |x| x.abs())))
    }

    /// `true` iff the smallest eigenvalue is at least `-tol`.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        let vals = self.eigenvalues()?;
        Ok(vals.first().map_or(true, |&m| m >= -tol))
    }

    /// Rebuilds `V f(Λ) Vᴴ` from a decomposition of an operator on `dims`.
    pub fn from_spectrum(
        dims: BipartiteDims,
        eig: &HermitianEigen,
        f: impl Fn(f64) -> f64,
    ) -> BipartiteOperator {
        let n = dims.total();
        let weights: Vec<f64> = eig.values.iter().map(|&x| f(x)).collect();
        let mut data = vec![ZERO; n * n];
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = eig.vectors[i * n + k] * w;
                if vik == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += vik * eig.vectors[j * n + k].conj();
                }
            }
        }
        for i in 0..n {
            data[i * n + i].im = 0.0;
        }
        BipartiteOperator::from_raw(dims, data)
    }

    fn check_same_dims(&self, other: &BipartiteOperator) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dims, other.dims)));
        }
        Ok(())
    }

    pub fn add(&self, other: &BipartiteOperator) -> Result<BipartiteOperator> {
        self.check_same_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect();
        Ok(BipartiteOperator::from_raw(self.dims, data))
    }

    pub fn sub(&self, other: &BipartiteOperator) -> Result<BipartiteOperator> {
        self.check_same_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect();
        Ok(BipartiteOperator::from_raw(self.dims, data))
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &BipartiteOperator, b: f64) -> Result<BipartiteOperator> {
        self.check_same_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x * a + y * b).collect();
        Ok(BipartiteOperator::from_raw(self.dims, data))
    }

    pub fn scale(&self, factor: f64) -> BipartiteOperator {
        BipartiteOperator::from_raw(self.dims, self.data.iter().map(|x| x * factor).collect())
    }

    /// Real trace (the imaginary part of a Hermitian trace vanishes).
    pub fn trace(&self) -> f64 {
        let n = self.dim();
        (0..n).map(|i| self.data[i * n + i].re).sum()
    }

    /// `Tr(self · other)`, real for Hermitian arguments.
    pub fn trace_product(&self, other: &BipartiteOperator) -> Result<f64> {
        self.check_same_dims(other)?;
        let n = self.dim();
        let mut acc = ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i * n + j] * other.data[j * n + i];
            }
        }
        Ok(acc.re)
    }

    /// `⟨v|X|v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> Result<f64> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!("vector length {} on {}", v.len(), self.dims)));
        }
        let mut acc = ZERO;
        for i in 0..n {
            let mut row = ZERO;
            for j in 0..n {
                row += self.data[i * n + j] * v[j];
            }
            acc += v[i].conj() * row;
        }
        Ok(acc.re)
    }

    /// `⟨u|X|v⟩`.
    pub fn matrix_element(&self, u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
        let n = self.dim();
        if u.len() != n || v.len() != n {
            return Err(Error::DimensionMismatch(format!("vector length on {}", self.dims)));
        }
        let mut acc = ZERO;
        for i in 0..n {
            let mut row = ZERO;
            for j in 0..n {
                row += self.data[i * n + j] * v[j];
            }
            acc += u[i].conj() * row;
        }
        Ok(acc)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &BipartiteOperator) -> Result<f64> {
        self.check_same_dims(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_difference(&self, other: &BipartiteOperator) -> Result<f64> {
        self.check_same_dims(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }
}

fn square_side(len: usize) -> Result<usize> {
    let side = (len as f64).sqrt().round() as usize;
    if side * side != len {
        return Err(Error::DimensionMismatch(format!("{len} entries do not form a square matrix")));
    }
    Ok(side)
}

/// For a product index `i1 * n2 + i2` in the Kronecker ordering, the position
/// of the same basis state in the regrouped `A₁A₂B₁B₂` ordering.
fn regroup_map(first: BipartiteDims, second: BipartiteDims) -> Vec<usize> {
    let (a1, b1) = (first.d_a, first.d_b);
    let (a2, b2) = (second.d_a, second.d_b);
    let b = b1 * b2;
    let mut map = Vec::with_capacity(a1 * b1 * a2 * b2);
    for x1 in 0..a1 {
        for y1 in 0..b1 {
            for x2 in 0..a2 {
                for y2 in 0..b2 {
                    map.push((x1 * a2 + x2) * b + y1 * b2 + y2);
                }
            }
        }
    }
    map
}

/// Tensor product of two bipartite state vectors, regrouped like [`BipartiteOperator::tensor`].
pub fn tensor_vectors(
    u: &[Complex64],
    u_dims: BipartiteDims,
    v: &[Complex64],
    v_dims: BipartiteDims,
) -> Result<Vec<Complex64>> {
    if u.len() != u_dims.total() || v.len() != v_dims.total() {
        return Err(Error::DimensionMismatch("vector length does not match its dims".into()));
    }
    let dims = u_dims.tensor(&v_dims)?;
    let map = regroup_map(u_dims, v_dims);
    let mut out = vec![ZERO; dims.total()];
    for (i1, x) in u.iter().enumerate() {
        for (i2, y) in v.iter().enumerate() {
            out[map[i1 * v.len() + i2]] = x * y;
        }
    }
    Ok(out)
}

/// Wire form: `{"d_A": .., "d_B": .., "entries": [[re, im], ...]}`, row-major.
#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    #[serde(rename = "d_A")]
    d_a: usize,
    #[serde(rename = "d_B")]
    d_b: usize,
    entries: Vec<[f64; 2]>,
}

impl From<BipartiteOperator> for OperatorRepr {
    fn from(op: BipartiteOperator) -> Self {
        OperatorRepr {
            d_a: op.dims.d_a,
            d_b: op.dims.d_b,
            entries: op.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<OperatorRepr> for BipartiteOperator {
    type Error = Error;

    fn try_from(repr: OperatorRepr) -> Result<Self> {
        let dims = BipartiteDims::new(repr.d_a, repr.d_b)?;
        let entries = repr.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        BipartiteOperator::new(dims, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn qubit(m: [[f64; 2]; 2]) -> Vec<Complex64> {
        vec![c(m[0][0]), c(m[0][1]), c(m[1][0]), c(m[1][1])]
    }

    #[test]
    fn dims_reject_single_level_parties() {
        assert!(matches!(BipartiteDims::new(1, 2), Err(Error::InvalidDims { .. })));
        assert!(matches!(BipartiteDims::new(128, 64), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn non_hermitian_entries_are_rejected() {
        let mut e = vec![c(0.0); 16];
        e[1] = c(1.0);
        assert!(matches!(
            BipartiteOperator::new(BipartiteDims::qubits(), e),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn identity_tensor_identity_is_identity() {
        let id = BipartiteOperator::identity(BipartiteDims::qubits());
        let big = id.tensor(&id).unwrap();
        assert_eq!(big.dims(), BipartiteDims::new(4, 4).unwrap());
        assert_eq!(big, BipartiteOperator::identity(big.dims()));
    }

    #[test]
    fn tensor_of_products_regroups_parties() {
        let p = qubit([[1.0, 2.0], [2.0, -1.0]]);
        let q = qubit([[0.5, 0.0], [0.0, 3.0]]);
        let r = qubit([[0.0, 1.0], [1.0, 0.0]]);
        let s = qubit([[2.0, -1.0], [-1.0, 4.0]]);
        let lhs = BipartiteOperator::product(&p, &q)
            .unwrap()
            .tensor(&BipartiteOperator::product(&r, &s).unwrap())
            .unwrap();
        let kron = |x: &[Complex64], y: &[Complex64]| {
            let mut out = vec![c(0.0); 16];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            out[(i * 2 + k) * 4 + j * 2 + l] = x[i * 2 + j] * y[k * 2 + l];
                        }
                    }
                }
            }
            out
        };
        let rhs = BipartiteOperator::product(&kron(&p, &r), &kron(&q, &s)).unwrap();
        assert!(lhs.max_abs_difference(&rhs).unwrap() == 0.0);
    }

    #[test]
    fn partial_transpose_of_product_transposes_bob() {
        let p = qubit([[1.0, 2.0], [2.0, -1.0]]);
        let q = vec![c(1.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), c(2.0)];
        let qt = vec![q[0], q[2], q[1], q[3]];
        let x = BipartiteOperator::product(&p, &q).unwrap();
        assert_eq!(x.partial_transpose(), BipartiteOperator::product(&p, &qt).unwrap());
        assert_eq!(x.partial_transpose().partial_transpose(), x);
    }

    #[test]
    fn bell_projector_partial_transpose_has_negative_eigenvalue() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = vec![c(s), c(0.0), c(0.0), c(s)];
        let bell = BipartiteOperator::projector(BipartiteDims::qubits(), &v).unwrap();
        let vals = bell.partial_transpose().eigenvalues().unwrap();
        assert!((vals[0] + 0.5).abs() < 1e-14);
        assert!(!bell.partial_transpose().is_psd(1e-9).unwrap());
    }

    #[test]
    fn trace_norm_and_psd_on_diagonals() {
        let dims = BipartiteDims::qubits();
        let d = BipartiteOperator::from_diagonal(dims, &[1.0, -2.0, 0.0, 0.0]).unwrap();
        assert_eq!(d.trace_norm().unwrap(), 3.0);
        assert_eq!(d.eigenvalues().unwrap(), vec![-2.0, 0.0, 0.0, 1.0]);
        assert!(BipartiteOperator::identity(dims).is_psd(0.0).unwrap());
        assert_eq!(BipartiteOperator::identity(dims).eigenvalues().unwrap(), vec![1.0; 4]);
        let small = BipartiteOperator::from_diagonal(dims, &[1.0, -1e-6, 0.0, 0.0]).unwrap();
        assert!(!small.is_psd(1e-9).unwrap());
    }

    #[test]
    fn json_wire_format() {
        let dims = BipartiteDims::qubits();
        let d = BipartiteOperator::from_diagonal(dims, &[1.0, -2.0, 0.0, 0.5]).unwrap();
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["d_A"], 2);
        assert_eq!(json["d_B"], 2);
        assert_eq!(json["entries"][5], serde_json::json!([-2.0, 0.0]));
        let back: BipartiteOperator = serde_json::from_value(json).unwrap();
        assert_eq!(back, d);

        let bad = serde_json::json!({"d_A": 2, "d_B": 2, "entries": [[0.0, 0.0]]});
        assert!(serde_json::from_value::<BipartiteOperator>(bad).is_err());
    }
}
