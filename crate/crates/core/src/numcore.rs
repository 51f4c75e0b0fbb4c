//! Precision-tagged dense storage, norms and precision conversion.
//!
//! Matrices are stored column-major: entry `(i, j)` of an `m x n` matrix lives at
//! `data[i + j * m]`. Everything outside this module goes through the accessors.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working precision of a matrix or a solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Precision {
    /// IEEE binary32.
    Low,
    /// IEEE binary64.
    High,
}

impl Precision {
    /// Unit roundoff: 2^-24 for binary32, 2^-53 for binary64.
    pub const fn unit_roundoff(self) -> f64 {
        match self {
            Precision::Low => 5.960_464_477_539_063e-8,
            Precision::High => 1.110_223_024_625_156_5e-16,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Low => f.write_str("binary32"),
            Precision::High => f.write_str("binary64"),
        }
    }
}

/// Unit roundoff of binary32.
pub const LOW_ROUNDOFF: f64 = Precision::Low.unit_roundoff();
/// Unit roundoff of binary64.
pub const HIGH_ROUNDOFF: f64 = Precision::High.unit_roundoff();

/// Floating-point element type of a [`DenseMatrix`].
pub trait Scalar: Float + Default + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const PRECISION: Precision;

    fn as_f64(self) -> f64;

    /// Round-to-nearest conversion from binary64.
    fn from_f64(x: f64) -> Self;

    fn unit_roundoff() -> f64 {
        Self::PRECISION.unit_roundoff()
    }
}

impl Scalar for f32 {
    const PRECISION: Precision = Precision::Low;

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }

    #[inline]
    fn from_f64(x: f64) -> Self {
        x as f32
    }
}

impl Scalar for f64 {
    const PRECISION: Precision = Precision::High;

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
}

/// Dot product accumulated in the element precision, with eight interleaved
/// partial sums (the summation order of a vectorized BLAS kernel).
#[inline]
pub fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    let mut acc = [T::zero(); 8];
    let mut xc = x.chunks_exact(8);
    let mut yc = y.chunks_exact(8);
    for (a, b) in (&mut xc).zip(&mut yc) {
        for k in 0..8 {
            acc[k] = acc[k] + a[k] * b[k];
        }
    }
    let mut tail = T::zero();
    for (&a, &b) in xc.remainder().iter().zip(yc.remainder()) {
        tail = tail + a * b;
    }
    ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7])) + tail
}

/// Dot product accumulated in binary64 regardless of the element precision.
#[inline]
pub fn dot_f64<T: Scalar>(x: &[T], y: &[T]) -> f64 {
    x.iter()
        .zip(y)
        .fold(0.0, |acc, (&a, &b)| acc + a.as_f64() * b.as_f64())
}

/// Euclidean norm accumulated in binary64.
#[inline]
pub fn norm2_f64<T: Scalar>(x: &[T]) -> f64 {
    dot_f64(x, x).sqrt()
}

/// Dense real matrix in column-major layout.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "DenseMatrix<{}> {}x{}",
            T::PRECISION,
            self.rows,
            self.cols
        )?;
        for i in 0..self.rows.min(8) {
            let row: Vec<String> = (0..self.cols.min(8))
                .map(|j| format!("{:>12.5e}", self.get(i, j).as_f64()))
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl<T: Scalar> DenseMatrix<T> {
    /// Builds a matrix from column-major data, rejecting NaN/Inf entries.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                row: k % rows.max(1),
                col: k / rows.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row-major data (the order a human writes a literal in).
    pub fn from_row_major(rows: usize, cols: usize, data: &[T]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        let mut out = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                out.push(data[i * cols + j]);
            }
        }
        Self::from_col_major(rows, cols, out)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Square matrix with `diag` on the diagonal.
    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { T::zero() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn precision(&self) -> Precision {
        T::PRECISION
    }

    /// Column-major backing storage.
    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.rows]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.rows] = value;
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[T] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Mutable access to two distinct columns, returned in the order requested.
    pub fn col_pair_mut(&mut self, i: usize, j: usize) -> (&mut [T], &mut [T]) {
        assert!(i != j, "column pair must be distinct");
        let m = self.rows;
        if i < j {
            let (lo, hi) = self.data.split_at_mut(j * m);
            (&mut lo[i * m..(i + 1) * m], &mut hi[..m])
        } else {
            let (lo, hi) = self.data.split_at_mut(i * m);
            let (ci, cj) = (&mut hi[..m], &mut lo[j * m..(j + 1) * m]);
            (ci, cj)
        }
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// `self * rhs`, accumulated in the element precision.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows in right operand", self.cols),
                found: format!("{}", rhs.rows),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for k in 0..self.cols {
                let b = rhs.get(k, j);
                if b == T::zero() {
                    continue;
                }
                for (d, &a) in dst.iter_mut().zip(self.col(k)) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ * rhs` without forming the transpose.
    pub fn t_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows in right operand", self.rows),
                found: format!("{}", rhs.rows),
            });
        }
        Ok(Self::from_fn(self.cols, rhs.cols, |i, j| {
            dot(self.col(i), rhs.col(j))
        }))
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![T::zero(); self.rows];
        for (j, &xj) in x.iter().enumerate() {
            for (yi, &a) in y.iter_mut().zip(self.col(j)) {
                *yi = *yi + a * xj;
            }
        }
        y
    }

    /// Entrywise `self - rhs`.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    /// Frobenius norm, accumulated in binary64.
    pub fn frobenius_norm(&self) -> f64 {
        norm2_f64(&self.data)
    }

    /// Euclidean norms of the columns, accumulated in binary64.
    pub fn column_norms(&self) -> Vec<f64> {
        (0..self.cols).map(|j| norm2_f64(self.col(j))).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.as_f64().abs()))
    }

    /// Entrywise round-to-nearest conversion to another precision.
    ///
    /// Narrowing fails with [`Error::PrecisionOverflow`] when a finite entry becomes infinite.
    pub fn cast<U: Scalar>(&self) -> Result<DenseMatrix<U>> {
        let mut data = Vec::with_capacity(self.data.len());
        for (k, &x) in self.data.iter().enumerate() {
            let y = U::from_f64(x.as_f64());
            if !y.is_finite() {
                return Err(Error::PrecisionOverflow {
                    row: k % self.rows,
                    col: k / self.rows,
                });
            }
            data.push(y);
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Writes the plain-text form: `rows cols` on the first line, then one
    /// row per line with 17 significant digits.
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:.16e}", self.get(i, j).as_f64()))
                .collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    /// Parses the plain-text form written by [`DenseMatrix::write_text`].
    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut tokens = Vec::new();
        for line in r.lines() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            tokens.extend(line.split_whitespace().map(str::to_owned));
        }
        let mut it = tokens.into_iter();
        let mut next_dim = |what: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| Error::Parse(format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
        };
        let rows = next_dim("row count")?;
        let cols = next_dim("column count")?;
        let values = it
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                rows * cols,
                values.len()
            )));
        }
        let values: Vec<T> = values.into_iter().map(T::from_f64).collect();
        Self::from_row_major(rows, cols, &values)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let io_err = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = std::fs::File::create(path).map_err(io_err)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_text(&mut w).map_err(io_err)?;
        w.flush().map_err(io_err)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::read_text(std::io::BufReader::new(file))
    }
}

/// A square matrix known to be exactly symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T: Scalar>(DenseMatrix<T>);

impl<T: Scalar> SymMatrix<T> {
    /// Wraps `m`, failing unless it is square and bitwise symmetric.
    pub fn new(m: DenseMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        for j in 0..m.cols {
            for i in 0..j {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Replaces `m` by `(m + mᵀ) / 2`.
    pub fn symmetrize(mut m: DenseMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        let half = T::from_f64(0.5);
        for j in 0..m.cols {
            for i in 0..j {
                let v = (m.get(i, j) + m.get(j, i)) * half;
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        Ok(Self(m))
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        Self(DenseMatrix::from_diagonal(diag))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.0.get(i, j)
    }

    /// Writes `value` at `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, value: T) {
        self.0.set(i, j, value);
        self.0.set(j, i, value);
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.0
    }

    pub fn into_inner(self) -> DenseMatrix<T> {
        self.0
    }

    /// Mutable storage for rotation kernels, which must keep the matrix symmetric.
    pub(crate) fn storage_mut(&mut self) -> &mut DenseMatrix<T> {
        &mut self.0
    }

    pub fn diagonal(&self) -> Vec<T> {
        self.0.diagonal()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn off_norm(&self) -> f64 {
        off_norm(&self.0)
    }

    pub fn cast<U: Scalar>(&self) -> Result<SymMatrix<U>> {
        Ok(SymMatrix(self.0.cast()?))
    }
}

/// Frobenius norm of `m - diag(m)`, accumulated in binary64.
pub fn off_norm<T: Scalar>(m: &DenseMatrix<T>) -> f64 {
    let mut acc = 0.0;
    for j in 0..m.cols() {
        for (i, &x) in m.col(j).iter().enumerate() {
            if i != j {
                let x = x.as_f64();
                acc += x * x;
            }
        }
    }
    acc.sqrt()
}

/// Frobenius norm of `m`.
pub fn frobenius_norm<T: Scalar>(m: &DenseMatrix<T>) -> f64 {
    m.frobenius_norm()
}

/// Entrywise conversion of `m` to the precision of `U`.
pub fn cast_precision<T: Scalar, U: Scalar>(m: &DenseMatrix<T>) -> Result<DenseMatrix<U>> {
    m.cast()
}
