//! Dense complex matrices and the small amount of linear algebra the
//! constructions need.
//!
//! Kronecker products use the convention `(A ⊗ B)[i·rows_B + k][j·cols_B + l]
//! = A[i][j]·B[k][l]`, so the left factor indexes the most significant digit.

mod eigen;
mod simdiag;

pub use eigen::{eig_hermitian, EigenDecomposition};
pub use simdiag::{normalize_phase, simultaneous_eigenbasis, MAX_REDRAWS};

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default tolerance for verification predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Row-major flat constructor. Rejects wrong lengths and non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: k / cols.max(1), col: k % cols.max(1) });
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.concat())
    }

    /// Convenience for real-valued literals in tests and examples.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<C64>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|col| col.len() != r) {
            return Err(Error::ShapeMismatch("columns of unequal length".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| columns[j][i]))
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<C64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.row_slice(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    fn row_slice(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        CMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("trace of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(C64, C64) -> C64) -> Result<CMatrix> {
        self.same_shape(other)?;
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    fn same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    /// Max-entry norm of A†A − I.
    pub fn unitarity_residual(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("unitarity of a {}x{} matrix", self.rows, self.cols)));
        }
        let gram = self.adjoint().matmul(self)?;
        gram.max_abs_diff(&CMatrix::identity(self.rows))
    }

    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        Ok(self.unitarity_residual()? < tol)
    }

    /// Max-entry norm of A† − A.
    pub fn hermitian_residual(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("Hermitian check of a non-square matrix".into()));
        }
        self.adjoint().max_abs_diff(self)
    }

    /// W† A W.
    pub fn conjugate_by(&self, w: &CMatrix) -> Result<CMatrix> {
        w.adjoint().matmul(self)?.matmul(w)
    }
}

/// Max-entry norm of AB − BA.
pub fn commutator_residual(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "commutator of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    a.matmul(b)?.max_abs_diff(&b.matmul(a)?)
}

pub fn commutes(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<bool> {
    Ok(commutator_residual(a, b)? < tol)
}

/// ⟨u|v⟩ with the conjugate on the left argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Unitary d×d DFT, F[j][k] = ω^{jk}/√d.
pub fn fourier(d: usize) -> CMatrix {
    let s = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(d, d, |j, k| root_of_unity(j * k, d).scale(s))
}

/// exp(2πi·k/n), reduced mod n so that quarter turns are exact.
pub fn root_of_unity(k: usize, n: usize) -> C64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}
