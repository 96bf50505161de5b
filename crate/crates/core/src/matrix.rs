//! Dense square matrices and the Hermitian wrapper used as algorithm input
//! and output.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative tolerance accepted for `|A_ij - conj(A_ji)|` before symmetrization.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense square matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds an `n x n` matrix from row-major data.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::NotSquare { len: data.len() });
        }
        Ok(Matrix { n, data })
    }

    /// Builds a matrix from a list of rows, all of which must have length `rows.len()`.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    /// Swaps the first `len` entries of rows `i` and `j`.
    pub fn swap_row_prefix(&mut self, i: usize, j: usize, len: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..lo * n + len].swap_with_slice(&mut tail[..len]);
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Matrix<T>) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let rk = rhs.row(k);
                let ro = out.row_mut(i);
                for j in 0..n {
                    ro[j] += a * rk[j];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.abs_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, |m, v| if v > m || v.is_nan() { v } else { m })
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.abs())
            .fold(0.0, |m, v| if v > m || v.is_nan() { v } else { m })
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        Ok(Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Dense Hermitian matrix (`A = A^H`), real symmetric when `T = f64`.
///
/// Construction checks that the input is Hermitian to within
/// [`HERMITIAN_TOL`] relative to `max(1, max |A_ij|)` and then enforces
/// exact symmetry by averaging `A` with `A^H`. Diagonal entries are real.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix<T> {
    inner: Matrix<T>,
}

impl<T: Scalar> HermitianMatrix<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        let n = m.n();
        for i in 0..n {
            for j in 0..n {
                if !m[(i, j)].is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        let scale = m.max_abs().max(1.0);
        for i in 0..n {
            for j in i..n {
                let dev = (m[(i, j)] - m[(j, i)].conj()).abs();
                if dev > HERMITIAN_TOL * scale {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation: dev,
                    });
                }
            }
        }
        Ok(Self::symmetrize(m))
    }

    /// Averages `m` with its conjugate transpose without any tolerance check.
    pub fn symmetrize(mut m: Matrix<T>) -> Self {
        let n = m.n();
        for i in 0..n {
            m[(i, i)] = T::from_real(m[(i, i)].re());
            for j in i + 1..n {
                let avg = (m[(i, j)] + m[(j, i)].conj()).scale(0.5);
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
        }
        HermitianMatrix { inner: m }
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        Self::new(Matrix::from_row_major(n, data)?)
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            inner: Matrix::identity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            inner: Matrix::zeros(n),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<T> = diag.iter().map(|&v| T::from_real(v)).collect();
        HermitianMatrix {
            inner: Matrix::from_diagonal(&d),
        }
    }

    /// Fills the upper triangle as the conjugate of the lower triangle.
    /// Entries above the diagonal in `m` are ignored.
    pub fn from_lower(mut m: Matrix<T>) -> Result<Self> {
        let n = m.n();
        for i in 0..n {
            for j in 0..i {
                m[(j, i)] = m[(i, j)].conj();
            }
        }
        Self::new(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.n()
    }

    /// Real diagonal entry `A_ii`.
    #[inline]
    pub fn diag(&self, i: usize) -> f64 {
        self.inner[(i, i)].re()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.diag(i)).collect()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        self.inner.row(i)
    }

    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.inner
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn norm_inf(&self) -> f64 {
        self.inner.norm_inf()
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.max_abs()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.diag(i)).sum()
    }
}

impl HermitianMatrix<f64> {
    /// Scaled sum `self + other` for real matrices of equal size.
    pub fn add(&self, other: &HermitianMatrix<f64>) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let data = self
            .inner
            .as_slice()
            .iter()
            .zip(other.inner.as_slice())
            .map(|(a, b)| a + b)
            .collect();
        Ok(HermitianMatrix::symmetrize(Matrix::from_row_major(
            self.n(),
            data,
        )?))
    }
}

impl<T> Index<(usize, usize)> for HermitianMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, idx: (usize, usize)) -> &T {
        &self.inner[idx]
    }
}
