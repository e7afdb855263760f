//! Dense complex matrices for small multi-qubit systems.
//!
//! Basis convention: the leftmost tensor factor is the most significant bit.
//! Qubit position `p` of an `n`-qubit register therefore maps to bit
//! `n - 1 - p` of the basis index.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest row or column count [`tensor_product`] will build by default.
pub const DEFAULT_MAX_DIM: usize = 1024;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::argument("matrix dimensions must be positive"));
        }
        let len = rows
            .checked_mul(cols)
            .ok_or(Error::Size { requested: usize::MAX, max: DEFAULT_MAX_DIM })?;
        if entries.len() != len {
            return Err(Error::DimensionMismatch { expected: len, actual: entries.len() });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numeric("matrix entries"));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, entries: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = ONE;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|ket><ket|`.
    pub fn outer(ket: &[Complex64]) -> Self {
        let n = ket.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = ket[i] * ket[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.cols + col] = value;
    }

    pub(crate) fn add_at(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.cols + col] += value;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                let row = &rhs.entries[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Linear combination `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| x * a + y * b)
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest element-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: other.rows * other.cols,
            });
        }
        Ok(())
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.entries[row * self.cols + col]
    }
}

/// Eigendecomposition of the Hermitian part of a square matrix.
///
/// Eigenvalues are sorted in descending order; column `k` of the returned
/// matrix is the eigenvector for eigenvalue `k`.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows, actual: m.cols });
    }
    let n = m.rows;
    let a = m.to_nalgebra();
    let herm = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("hermitian eigendecomposition"));
    }
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, eig.eigenvectors[(row, k)]);
        }
    }
    Ok((values, vectors))
}

/// Validation thresholds for density matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub trace: f64,
    /// Smallest eigenvalue still accepted as positive semidefinite.
    pub psd_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { hermiticity: 1e-10, trace: 1e-10, psd_floor: -1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NotSquare { rows: usize, cols: usize },
    DimensionNotPowerOfTwo(usize),
    Hermiticity { max_deviation: f64 },
    /// `|Tr(m) - 1|`.
    Trace { deviation: f64 },
    NegativeEigenvalue { min_eigenvalue: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Violation::DimensionNotPowerOfTwo(d) => write!(f, "dimension {d} is not a power of two"),
            Violation::Hermiticity { max_deviation } => {
                write!(f, "not hermitian (max deviation {max_deviation:e})")
            }
            Violation::Trace { deviation } => write!(f, "trace differs from 1 by {deviation:e}"),
            Violation::NegativeEigenvalue { min_eigenvalue } => {
                write!(f, "negative eigenvalue {min_eigenvalue:e}")
            }
        }
    }
}

/// Every invariant a candidate density matrix failed.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Certify `m` as a density matrix, or report which invariants fail.
pub fn validate_density(m: &ComplexMatrix, tol: &Tolerances) -> Result<DensityMatrix, ViolationReport> {
    let mut violations = Vec::new();
    if !m.is_square() {
        violations.push(Violation::NotSquare { rows: m.rows, cols: m.cols });
        return Err(ViolationReport { violations });
    }
    if !m.rows.is_power_of_two() {
        violations.push(Violation::DimensionNotPowerOfTwo(m.rows));
    }
    let herm = m.hermiticity_deviation();
    if herm > tol.hermiticity {
        violations.push(Violation::Hermiticity { max_deviation: herm });
    }
    let deviation = (m.trace() - ONE).norm();
    if deviation > tol.trace {
        violations.push(Violation::Trace { deviation });
    }
    match hermitian_eigen(m) {
        Ok((values, _)) => {
            let min = values.last().copied().unwrap_or(0.0);
            if min < tol.psd_floor {
                violations.push(Violation::NegativeEigenvalue { min_eigenvalue: min });
            }
        }
        Err(_) => violations.push(Violation::NegativeEigenvalue { min_eigenvalue: f64::NAN }),
    }
    if violations.is_empty() {
        Ok(DensityMatrix::from_matrix_unchecked(m.clone()))
    } else {
        Err(ViolationReport { violations })
    }
}

/// Position of a qubit in a register, zero-based from the most significant
/// tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitIndex(pub usize);

/// A certified density matrix on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    n_qubits: usize,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix, tol: &Tolerances) -> Result<Self, ViolationReport> {
        validate_density(&m, tol)
    }

    /// Wraps a matrix produced by a validity-preserving operation.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square() && matrix.rows.is_power_of_two());
        let n_qubits = matrix.rows.trailing_zeros() as usize;
        Self { matrix, n_qubits }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self::from_matrix_unchecked(ComplexMatrix::outer(psi.amplitudes()))
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        Self::from_matrix_unchecked(ComplexMatrix::diagonal(&vec![1.0 / d as f64; d]))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.get(row, col)
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // rho is hermitian, so Tr(rho^2) = sum |rho_ij|^2
        self.matrix.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.matrix.max_abs_diff(&other.matrix)
    }

    /// Reorders qubits so that new position `k` holds old qubit `order[k]`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: order.len() });
        }
        for &q in order {
            if q >= n || seen[q] {
                return Err(Error::argument("qubit order must be a permutation"));
            }
            seen[q] = true;
        }
        let d = self.dim();
        let map = |old: usize| -> usize {
            let mut new = 0;
            for (k, &q) in order.iter().enumerate() {
                if old >> (n - 1 - q) & 1 == 1 {
                    new |= 1 << (n - 1 - k);
                }
            }
            new
        };
        let perm: Vec<usize> = (0..d).map(map).collect();
        let mut out = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                out.set(perm[i], perm[j], self.matrix.get(i, j));
            }
        }
        Ok(Self::from_matrix_unchecked(out))
    }
}

/// Normalized state vector on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    n_qubits: usize,
}

impl PureState {
    pub const NORM_TOLERANCE: f64 = 1e-10;

    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let d = amplitudes.len();
        if d == 0 || !d.is_power_of_two() {
            return Err(Error::argument("state dimension must be a power of two"));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numeric("state amplitudes"));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > Self::NORM_TOLERANCE {
            return Err(Error::argument("state is not normalized"));
        }
        Ok(Self { amplitudes, n_qubits: d.trailing_zeros() as usize })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = libm::sqrt(amplitudes.iter().map(|z| z.norm_sqr()).sum());
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::argument("cannot normalize a zero vector"));
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Self::new(amplitudes)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let d = 1usize << n_qubits;
        if index >= d {
            return Err(Error::argument("basis index out of range"));
        }
        let mut amplitudes = vec![ZERO; d];
        amplitudes[index] = ONE;
        Ok(Self { amplitudes, n_qubits })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `|self> ⊗ |other>`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        PureState { amplitudes, n_qubits: self.n_qubits + other.n_qubits }
    }
}

/// Kronecker product with the default size limit.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    tensor_product_with_limit(a, b, DEFAULT_MAX_DIM)
}

pub fn tensor_product_with_limit(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    max_dim: usize,
) -> Result<ComplexMatrix> {
    let rows = a.rows.checked_mul(b.rows).ok_or(Error::Size { requested: usize::MAX, max: max_dim })?;
    let cols = a.cols.checked_mul(b.cols).ok_or(Error::Size { requested: usize::MAX, max: max_dim })?;
    if rows.max(cols) > max_dim {
        return Err(Error::Size { requested: rows.max(cols), max: max_dim });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i1 in 0..a.rows {
        for j1 in 0..a.cols {
            let x = a.get(i1, j1);
            if x == ZERO {
                continue;
            }
            for i2 in 0..b.rows {
                for j2 in 0..b.cols {
                    out.set(i1 * b.rows + i2, j1 * b.cols + j2, x * b.get(i2, j2));
                }
            }
        }
    }
    Ok(out)
}

/// Spreads the bits of `value` (MSB first) onto the given qubit positions of
/// an `n`-qubit basis index.
fn scatter_bits(value: usize, positions: &[usize], n: usize) -> usize {
    let len = positions.len();
    positions.iter().enumerate().fold(0, |acc, (k, &p)| {
        if value >> (len - 1 - k) & 1 == 1 {
            acc | 1 << (n - 1 - p)
        } else {
            acc
        }
    })
}

/// Traces out the qubits in `drop`. The remaining qubits keep their relative
/// order.
pub fn partial_trace(rho: &DensityMatrix, drop: &[QubitIndex]) -> Result<DensityMatrix> {
    let n = rho.n_qubits;
    let mut dropped = vec![false; n];
    for q in drop {
        if q.0 >= n {
            return Err(Error::argument("qubit index out of range"));
        }
        if dropped[q.0] {
            return Err(Error::argument("duplicate qubit in trace set"));
        }
        dropped[q.0] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&p| !dropped[p]).collect();
    if kept.is_empty() {
        return Err(Error::argument("cannot trace out every qubit"));
    }
    let traced: Vec<usize> = (0..n).filter(|&p| dropped[p]).collect();

    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let base: Vec<usize> = (0..dk).map(|i| scatter_bits(i, &kept, n)).collect();
    let offsets: Vec<usize> = (0..dt).map(|t| scatter_bits(t, &traced, n)).collect();

    let mut out = ComplexMatrix::zeros(dk, dk);
    for i in 0..dk {
        for j in 0..dk {
            let sum: Complex64 = offsets
                .iter()
                .map(|&o| rho.matrix.get(base[i] | o, base[j] | o))
                .sum();
            out.set(i, j, sum);
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ket(amps: &[f64]) -> Vec<Complex64> {
        amps.iter().map(|&x| c(x)).collect()
    }

    fn bell() -> DensityMatrix {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_pure(&PureState::new(ket(&[s, 0.0, 0.0, s])).unwrap())
    }

    #[test]
    fn identity_tensor_identity() {
        let i4 = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn product_projector_lands_on_index_two() {
        let p0 = ComplexMatrix::diagonal(&[1.0, 0.0]);
        let p1 = ComplexMatrix::diagonal(&[0.0, 1.0]);
        let m = tensor_product(&p0, &p1).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if (i, j) == (1, 1) { 1.0 } else { 0.0 };
                assert_eq!(m.get(i, j), c(expected), "({i},{j})");
            }
        }
        // |1><1| ⊗ |0><0| sits at (2,2)
        let m = tensor_product(&p1, &p0).unwrap();
        assert_eq!(m.get(2, 2), c(1.0));
    }

    #[test]
    fn bell_density_from_tensored_kets() {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let k0 = ComplexMatrix::from_real(2, 1, &[1.0, 0.0]).unwrap();
        let k1 = ComplexMatrix::from_real(2, 1, &[0.0, 1.0]).unwrap();
        let k00 = tensor_product(&k0, &k0).unwrap();
        let k11 = tensor_product(&k1, &k1).unwrap();
        let psi = k00.combine(s, &k11, s).unwrap();
        let rho = psi.matmul(&psi.adjoint()).unwrap();
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[0.5, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.5],
        )
        .unwrap();
        assert!(rho.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn tensor_product_respects_size_limit() {
        let a = ComplexMatrix::identity(64);
        let err = tensor_product(&a, &a).unwrap_err();
        assert_eq!(err, Error::Size { requested: 4096, max: DEFAULT_MAX_DIM });
        assert!(tensor_product_with_limit(&a, &ComplexMatrix::identity(2), 128).is_ok());
    }

    #[test]
    fn bell_marginals_are_maximally_mixed() {
        let half = DensityMatrix::maximally_mixed(1);
        for q in 0..2 {
            let r = partial_trace(&bell(), &[QubitIndex(q)]).unwrap();
            assert!(r.max_abs_diff(&half).unwrap() < 1e-15);
        }
    }

    #[test]
    fn tracing_product_partner_returns_factor() {
        let sigma = ComplexMatrix::new(
            2,
            2,
            alloc::vec![c(0.3), Complex64::new(0.1, -0.2), Complex64::new(0.1, 0.2), c(0.7)],
        )
        .unwrap();
        let zero = ComplexMatrix::diagonal(&[1.0, 0.0]);
        let rho = DensityMatrix::new(tensor_product(&zero, &sigma).unwrap(), &Tolerances::default()).unwrap();
        let r = partial_trace(&rho, &[QubitIndex(0)]).unwrap();
        assert_eq!(r.matrix(), &sigma);
        let r = partial_trace(&rho, &[QubitIndex(1)]).unwrap();
        assert_eq!(r.matrix(), &zero);
    }

    #[test]
    fn tracing_everything_is_an_error() {
        let err = partial_trace(&bell(), &[QubitIndex(0), QubitIndex(1)]).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
        assert!(partial_trace(&bell(), &[QubitIndex(2)]).is_err());
        assert!(partial_trace(&bell(), &[QubitIndex(0), QubitIndex(0)]).is_err());
    }

    #[test]
    fn validate_accepts_maximally_mixed() {
        let m = ComplexMatrix::diagonal(&[0.5, 0.5]);
        assert!(validate_density(&m, &Tolerances::default()).is_ok());
    }

    #[test]
    fn validate_reports_trace_excess() {
        let m = ComplexMatrix::diagonal(&[0.6, 0.5]);
        let report = validate_density(&m, &Tolerances::default()).unwrap_err();
        assert_eq!(report.violations.len(), 1);
        match report.violations[0] {
            Violation::Trace { deviation } => assert!((deviation - 0.1).abs() < 1e-15),
            ref v => panic!("unexpected violation {v:?}"),
        }
    }

    #[test]
    fn validate_reports_negative_eigenvalue() {
        let m = ComplexMatrix::from_real(2, 2, &[0.5, 0.7, 0.7, 0.5]).unwrap();
        let report = validate_density(&m, &Tolerances::default()).unwrap_err();
        assert_eq!(report.violations.len(), 1);
        match report.violations[0] {
            Violation::NegativeEigenvalue { min_eigenvalue } => {
                assert!((min_eigenvalue + 0.2).abs() < 1e-14)
            }
            ref v => panic!("unexpected violation {v:?}"),
        }
    }

    #[test]
    fn validate_reports_non_hermitian_and_shape() {
        let m = ComplexMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
        let report = validate_density(&m, &Tolerances::default()).unwrap_err();
        assert!(matches!(report.violations[0], Violation::Hermiticity { .. }));

        let m = ComplexMatrix::zeros(2, 3);
        let report = validate_density(&m, &Tolerances::default()).unwrap_err();
        assert_eq!(report.violations, alloc::vec![Violation::NotSquare { rows: 2, cols: 3 }]);
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::from_real(1, 2, &[f64::NAN, 0.0]).unwrap_err();
        assert_eq!(err, Error::Numeric("matrix entries"));
    }

    #[test]
    fn swapping_qubits_moves_product_factors() {
        let a = ComplexMatrix::diagonal(&[0.25, 0.75]);
        let b = ComplexMatrix::diagonal(&[1.0, 0.0]);
        let ab = DensityMatrix::from_matrix_unchecked(tensor_product(&a, &b).unwrap());
        let ba = ab.permute_qubits(&[1, 0]).unwrap();
        assert_eq!(ba.matrix(), &tensor_product(&b, &a).unwrap());
        assert!(ab.permute_qubits(&[0, 0]).is_err());
    }

    #[test]
    fn eigen_is_sorted_descending() {
        let m = ComplexMatrix::diagonal(&[0.1, 0.6, 0.3]);
        let (values, vectors) = hermitian_eigen(&m).unwrap();
        assert!((values[0] - 0.6).abs() < 1e-15 && (values[2] - 0.1).abs() < 1e-15);
        assert!((vectors.get(1, 0).norm() - 1.0).abs() < 1e-15);
    }
}
