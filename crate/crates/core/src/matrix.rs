//! Dense complex matrices and the tensor-product structure they live on.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Arithmetic comparison tolerance. Every value the library reproduces is a
/// small exact rational, so double precision lands well inside it.
pub const TOL: f64 = 1e-12;

/// Lower bound accepted for `⟨ψ|A|ψ⟩` on the positivity probe set.
pub(crate) const PROBE_TOL: f64 = 1e-10;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Ordered factor dimensions of a tensor-product space, e.g. `[2, 2, 2]` for
/// three qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimensionProfile(Vec<usize>);

impl DimensionProfile {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::Dimension("profile has no factors".into()));
        }
        if factor_dims.contains(&0) {
            return Err(Error::Dimension(format!(
                "factor dimensions must be >= 1, got {factor_dims:?}"
            )));
        }
        Ok(Self(factor_dims))
    }

    /// `n` qubits, `[2; n]`.
    pub fn qubits(n: usize) -> Self {
        Self(vec![2; n.max(1)])
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Splits a big-endian basis index into per-factor digits.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (slot, &d) in self.0.iter().enumerate().rev() {
            out[slot] = index % d;
            index /= d;
        }
        out
    }

    /// Validates 1-based factor positions and returns them 0-based, sorted.
    pub(crate) fn zero_based(&self, positions: &[usize]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(positions.len());
        for &p in positions {
            if p == 0 || p > self.0.len() {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    len: self.0.len(),
                });
            }
            out.push(p - 1);
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSelection(format!(
                "repeated factor in {positions:?}"
            )));
        }
        Ok(out)
    }

    /// For every full basis index, the pair (index within the `selected`
    /// factors, index within the remaining factors), both big-endian.
    pub(crate) fn split_indices(&self, selected: &[usize]) -> Vec<(usize, usize)> {
        let mut is_sel = vec![false; self.0.len()];
        for &s in selected {
            is_sel[s] = true;
        }
        (0..self.total())
            .map(|i| {
                let digits = self.digits(i);
                let (mut a, mut b) = (0, 0);
                for (slot, &dig) in digits.iter().enumerate() {
                    if is_sel[slot] {
                        a = a * self.0[slot] + dig;
                    } else {
                        b = b * self.0[slot] + dig;
                    }
                }
                (a, b)
            })
            .collect()
    }

    /// Profile of the factors not listed in `removed` (0-based, sorted).
    pub(crate) fn without(&self, removed: &[usize]) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, &d)| d)
            .collect()
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        Self::from_fn(N, N, |i, j| rows[i][j])
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { c(0.0, 0.0) })
    }

    /// `|ψ⟩⟨φ|`.
    pub fn outer(ket: &[C64], bra: &[C64]) -> Self {
        Self::from_fn(ket.len(), bra.len(), |i, j| ket[i] * bra[j].conj())
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

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `A·v`.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect())
    }

    pub fn kron(&self, other: &Self) -> Self {
        kron(self, other)
    }

    pub fn trace(&self) -> Result<C64> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// `Tr(A·B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<C64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::Dimension(format!(
                "Tr(AB) needs compatible shapes, got {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, i);
            }
        }
        Ok(acc)
    }

    /// Reduced operator on the factors not listed in `traced` (1-based).
    /// The remaining factors keep their original order; tracing every factor
    /// leaves the 1×1 matrix holding the full trace.
    pub fn partial_trace(&self, profile: &DimensionProfile, traced: &[usize]) -> Result<Self> {
        self.require_square()?;
        if profile.total() != self.rows {
            return Err(Error::Dimension(format!(
                "profile {:?} has total dimension {}, matrix is {}x{}",
                profile.factors(),
                profile.total(),
                self.rows,
                self.cols
            )));
        }
        if traced.is_empty() {
            return Err(Error::InvalidSelection("no factors to trace out".into()));
        }
        let traced = profile.zero_based(traced)?;
        let kept_dim: usize = profile.without(&traced).iter().product();
        // (traced-part index, kept-part index) for every basis index
        let split = profile.split_indices(&traced);
        let mut out = Self::zeros(kept_dim, kept_dim);
        for (i, &(ti, ki)) in split.iter().enumerate() {
            for (j, &(tj, kj)) in split.iter().enumerate() {
                if ti == tj {
                    out.data[ki * kept_dim + kj] += self.get(i, j);
                }
            }
        }
        Ok(out)
    }

    /// `‖A − B‖_max`; infinite when the shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| abs(*a - *b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|&a| abs(a)).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if abs(self.get(i, j) - self.get(j, i).conj()) > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Self-adjoint and idempotent within `tol` (max-entry norm).
    pub fn is_projection(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        match self.matmul(self) {
            Ok(sq) => sq.max_abs_diff(self) <= tol,
            Err(_) => false,
        }
    }

    pub fn commutes_with(&self, other: &Self, tol: f64) -> bool {
        match (self.matmul(other), other.matmul(self)) {
            (Ok(ab), Ok(ba)) => ab.max_abs_diff(&ba) <= tol,
            _ => false,
        }
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, psi: &[C64]) -> Result<C64> {
        let a_psi = self.apply(psi)?;
        Ok(psi.iter().zip(&a_psi).map(|(p, q)| p.conj() * q).sum())
    }

    /// Smallest real part of `⟨v|A|v⟩` over the probe set: the computational
    /// basis plus `(e_i + ω e_j)/√2` for every pair `i < j` and
    /// `ω ∈ {1, −1, i, −i}`. Not a full spectral check; it catches
    /// construction errors in operators of dimension ≤ 8.
    pub fn min_probe_expectation(&self) -> f64 {
        let n = self.rows;
        if !self.is_square() || n == 0 {
            return f64::NAN;
        }
        let mut best = f64::INFINITY;
        for i in 0..n {
            best = best.min(self.get(i, i).re);
        }
        let phases = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
        for i in 0..n {
            for j in (i + 1)..n {
                for w in phases {
                    // ⟨v|A|v⟩ for v = (e_i + w e_j)/√2
                    let val = (self.get(i, i)
                        + self.get(j, j)
                        + w * self.get(i, j)
                        + w.conj() * self.get(j, i))
                        * 0.5;
                    best = best.min(val.re);
                }
            }
        }
        best
    }
}

/// Kronecker product `a ⊗ b`: entry `(i·p + k, j·q + l) = a(i,j)·b(k,l)` where
/// `b` is `p×q`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (p, q) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * p, a.cols * q, |r, s| {
        a.get(r / p, s / q) * b.get(r % p, s % q)
    })
}

#[inline]
pub(crate) fn abs(z: C64) -> f64 {
    libm::sqrt(z.norm_sqr())
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs).expect("matrix shapes must match")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs).expect("matrix shapes must match")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs).expect("inner dimensions must match")
    }
}
