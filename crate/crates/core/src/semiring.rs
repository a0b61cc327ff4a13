//! Max-times and p-norm semiring arithmetic.
//!
//! The max-times semiring works over the nonnegative reals with
//! `a ⊕ b = max(a, b)` and `a ⊗ b = ab`. The p-semiring keeps the ordinary
//! product but adds via `a +_p b = (a^p + b^p)^(1/p)`, and tends to the
//! max-times semiring as `p → ∞`.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Relative comparison tolerance.
///
/// Two reals are considered equal when `|x − y| ≤ rel_eps · max(1, |x|, |y|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    rel_eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(rel_eps: f64) -> Result<Self> {
        if rel_eps > 0.0 && rel_eps.is_finite() {
            Ok(Tolerance { rel_eps })
        } else {
            Err(Error::Parse(format!(
                "tolerance must be positive and finite, found {rel_eps}"
            )))
        }
    }

    pub fn rel_eps(self) -> f64 {
        self.rel_eps
    }

    pub fn eq(self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.rel_eps * 1f64.max(x.abs()).max(y.abs())
    }

    /// `x ≤ y` up to the tolerance.
    pub fn le(self, x: f64, y: f64) -> bool {
        x <= y || self.eq(x, y)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_eps: Self::DEFAULT_EPS,
        }
    }
}

/// Semiring addition of the max-times semiring.
#[inline]
pub fn max_add(a: f64, b: f64) -> f64 {
    a.max(b)
}

/// Addition in the p-semiring: `(a^p + b^p)^(1/p)`.
///
/// Evaluated as `m · (1 + (s/m)^p)^(1/p)` with `m = max(a, b)` so large
/// `p` neither overflows nor underflows.
pub fn p_add(a: f64, b: f64, p: u32) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        return 0.0;
    }
    if lo == 0.0 {
        return hi;
    }
    if p == 1 {
        return a + b;
    }
    let ratio = lo / hi;
    hi * (ratio.powf(p as f64).ln_1p() / p as f64).exp()
}

/// The p-norm `(Σ x_k^p)^(1/p)` of nonnegative values, scaled by the
/// maximum so it stays accurate for large `p`.
pub fn p_sum<I>(values: I, p: u32) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let values: Vec<f64> = values.into_iter().collect();
    let max = values.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    if p == 1 {
        return values.iter().sum();
    }
    let scaled: f64 = values.iter().map(|&v| (v / max).powf(p as f64)).sum();
    max * (scaled.ln() / p as f64).exp()
}

/// Dense matrix of finite nonnegative reals, stored row-major.
///
/// Most operations need a square matrix; rectangular matrices appear only
/// as judge/competitor score tables.
#[derive(Clone, PartialEq)]
pub struct NonnegMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl NonnegMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        let ncols = rows[0].len();
        if ncols == 0 {
            return Err(Error::InvalidMatrix("matrix has no columns".into()));
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    ncols
                )));
            }
            data.extend(row);
        }
        Self::from_vec(nrows, ncols, data)
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(
                "matrix dimensions must be positive".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) = {} is not a finite nonnegative real",
                k / cols + 1,
                k % cols + 1,
                data[k]
            )));
        }
        Ok(NonnegMatrix { rows, cols, data })
    }

    /// Square matrix from a function of the (0-based) position.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::from_vec(n, n, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 }).expect("n must be positive")
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0.0).expect("n must be positive")
    }

    /// The matrix `E` with every entry equal to one.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0).expect("n must be positive")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix.
    pub fn n(&self) -> usize {
        self.rows
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.cols)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> NonnegMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        NonnegMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Entrywise map. The closure must keep entries finite and nonnegative.
    pub fn map(&self, f: impl FnMut(f64) -> f64) -> Result<NonnegMatrix> {
        Self::from_vec(
            self.rows,
            self.cols,
            self.data.iter().copied().map(f).collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Result<NonnegMatrix> {
        self.map(|x| x * factor)
    }

    pub fn row_maxima(&self) -> Vec<f64> {
        self.rows()
            .map(|r| r.iter().copied().fold(0.0, f64::max))
            .collect()
    }

    pub fn col_maxima(&self) -> Vec<f64> {
        let mut out = vec![0.0f64; self.cols];
        for row in self.rows() {
            for (m, &x) in out.iter_mut().zip(row) {
                *m = (*m).max(x);
            }
        }
        out
    }

    /// Indices of the positive entries of row `i`.
    pub fn support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0.0)
            .map(|(j, _)| j)
    }

    /// Largest entrywise difference `max |a_ij − b_ij|`.
    pub fn max_abs_diff(&self, other: &NonnegMatrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.data.len(),
                found: other.data.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

impl Index<(usize, usize)> for NonnegMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for NonnegMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Vector of finite nonnegative reals.
#[derive(Clone, PartialEq)]
pub struct NonnegVector(Vec<f64>);

impl NonnegVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(k) = entries.iter().position(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::InvalidVector(format!(
                "entry {} = {} is not a finite nonnegative real",
                k + 1,
                entries[k]
            )));
        }
        Ok(NonnegVector(entries))
    }

    /// The all-ones vector.
    pub fn ones(n: usize) -> Self {
        NonnegVector(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    pub fn max_abs_diff(&self, other: &NonnegVector) -> f64 {
        self.iter()
            .zip(other.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for NonnegVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for NonnegVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Max-times matrix product: `c_ij = max_k a_ik b_kj`.
pub fn max_matmul(a: &NonnegMatrix, b: &NonnegMatrix) -> Result<NonnegMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            found: b.rows,
        });
    }
    let mut data = vec![0.0f64; a.rows * b.cols];
    for i in 0..a.rows {
        let out = &mut data[i * b.cols..(i + 1) * b.cols];
        for (k, &aik) in a.row(i).iter().enumerate() {
            if aik == 0.0 {
                continue;
            }
            for (c, &bkj) in out.iter_mut().zip(b.row(k)) {
                *c = (*c).max(aik * bkj);
            }
        }
    }
    NonnegMatrix::from_vec(a.rows, b.cols, data)
}

/// Max-times matrix-vector product: `y_i = max_j a_ij x_j`.
pub fn max_matvec(a: &NonnegMatrix, x: &NonnegVector) -> Result<NonnegVector> {
    if a.cols != x.len() {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            found: x.len(),
        });
    }
    let y = a
        .rows()
        .map(|row| {
            row.iter()
                .zip(x.iter())
                .map(|(a, x)| a * x)
                .fold(0.0, f64::max)
        })
        .collect();
    NonnegVector::new(y)
}

/// `y = Aᵀ ⊗ x`, computed without materializing the transpose.
pub fn max_matvec_transposed(a: &NonnegMatrix, x: &NonnegVector) -> Result<NonnegVector> {
    if a.rows != x.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: x.len(),
        });
    }
    let mut y = vec![0.0f64; a.cols];
    for (row, xi) in a.rows().zip(x.iter()) {
        for (yj, &aij) in y.iter_mut().zip(row) {
            *yj = (*yj).max(aij * xi);
        }
    }
    NonnegVector::new(y)
}

/// True iff every row maximum equals 1 within `tol`.
pub fn is_max_stochastic(a: &NonnegMatrix, tol: Tolerance) -> bool {
    a.row_maxima().into_iter().all(|m| tol.eq(m, 1.0))
}

/// Returns the first row whose maximum is not 1, as an error.
pub(crate) fn require_max_stochastic(a: &NonnegMatrix, tol: Tolerance) -> Result<()> {
    match a
        .row_maxima()
        .into_iter()
        .enumerate()
        .find(|(_, m)| !tol.eq(*m, 1.0))
    {
        Some((row, max)) => Err(Error::NotMaxStochastic { row, max }),
        None => Ok(()),
    }
}

/// Scales every row by its maximum.
///
/// Returns `(Â, d)` with `d_i = max_j a_ij` and `Â = diag(d)⁻¹ A`. The
/// argmax entries of each row become exactly 1.
pub fn normalize_max_stochastic(a: &NonnegMatrix) -> Result<(NonnegMatrix, NonnegVector)> {
    let maxima = a.row_maxima();
    if let Some(row) = maxima.iter().position(|&m| m == 0.0) {
        return Err(Error::ZeroRow(row));
    }
    let mut data = Vec::with_capacity(a.data.len());
    for (row, &m) in a.rows().zip(&maxima) {
        data.extend(row.iter().map(|&x| x / m));
    }
    Ok((
        NonnegMatrix::from_vec(a.rows, a.cols, data)?,
        NonnegVector::new(maxima)?,
    ))
}

/// True iff every row has p-norm 1 within `tol`.
pub fn is_p_stochastic(a: &NonnegMatrix, p: u32, tol: Tolerance) -> bool {
    p >= 1
        && a.rows()
            .all(|row| tol.eq(p_sum(row.iter().copied(), p), 1.0))
}
