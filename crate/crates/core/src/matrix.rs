//! Dense real matrices and stacks of equally-sized matrices.
//!
//! A [`MatrixStack`] is the input object of every solver: `N` slices of
//! common size `D x M`, the frontal slices of a 3-way tensor. Entries are
//! validated to be finite at construction, so downstream numerics never
//! meet NaN or infinity.

use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::SignVector;
use crate::error::{Error, Result};
use crate::num;

/// Dense row-major matrix of finite `f64` entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Build a matrix from row-major data. Fails on zero dimensions, a
    /// length mismatch, or non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain {
                context: "matrix dimensions must be positive",
            });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "data length must equal rows * cols",
            });
        }
        if !data.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Internal constructor for values produced by validated arithmetic.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert!(rows > 0 && cols > 0 && data.len() == rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_raw(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Build a matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let cols = columns.len();
        if cols == 0 {
            return Err(Error::Domain {
                context: "at least one column required",
            });
        }
        let rows = columns[0].len();
        if rows == 0 || columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                context: "columns must be non-empty and of equal length",
            });
        }
        let mut data = vec![0.0; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                data[i * cols + j] = x;
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.data[r * self.cols + c] = value;
    }

    /// Row-major entries.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0.0; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        Matrix::from_raw(self.cols, self.rows, data)
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix::from_raw(self.rows, self.cols, self.data.iter().map(|x| x * s).collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        num::norm(&self.data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0.0)
    }

    /// `A x` for a vector of length `cols`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows).map(|r| num::dot(self.row(r), x)).collect()
    }

    /// `A' x` for a vector of length `rows`.
    pub fn tr_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows, "tr_mul_vec length mismatch");
        let mut out = vec![0.0; self.cols];
        for r in 0..self.rows {
            let xr = x[r];
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o += xr * a;
            }
        }
        out
    }

    /// `u' A v`.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        assert_eq!(u.len(), self.rows, "bilinear row mismatch");
        assert_eq!(v.len(), self.cols, "bilinear column mismatch");
        (0..self.rows).map(|r| u[r] * num::dot(self.row(r), v)).sum()
    }

    /// Column-major flattening: column 1 first. With this convention
    /// `u' X v == vec(X)' (v (x) u)` holds exactly, so the vectorized stack
    /// and the arrangement machinery agree on signs.
    pub fn vectorize(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c));
            }
        }
        out
    }

    /// Exact inverse of [`Matrix::vectorize`] given the target shape.
    pub fn matricize(values: &[f64], rows: usize, cols: usize) -> Result<Matrix> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "vector length must equal rows * cols",
            });
        }
        let mut m = Matrix::zeros(rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                m.set(r, c, values[c * rows + r]);
            }
        }
        if !m.data.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }
}

/// An ordered collection of `N >= 1` matrices sharing the size `D x M`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixStack {
    d: usize,
    m: usize,
    slices: Vec<Matrix>,
}

impl MatrixStack {
    pub fn new(slices: Vec<Matrix>) -> Result<Self> {
        let first = slices.first().ok_or(Error::EmptyStack)?;
        let (d, m) = first.shape();
        if slices.iter().any(|s| s.shape() != (d, m)) {
            return Err(Error::DimensionMismatch {
                context: "all slices must share the same shape",
            });
        }
        Ok(Self { d, m, slices })
    }

    /// Row count of every slice.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Column count of every slice.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of slices.
    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn slices(&self) -> &[Matrix] {
        &self.slices
    }

    pub fn slice(&self, i: usize) -> &Matrix {
        &self.slices[i]
    }

    /// `sum_i b_i X_i` without materializing the `D x MN` concatenation or
    /// any Kronecker product.
    pub fn signed_sum(&self, b: &SignVector) -> Result<Matrix> {
        if b.len() != self.len() {
            return Err(Error::DimensionMismatch {
                context: "sign vector length must equal the slice count",
            });
        }
        let mut data = vec![0.0; self.d * self.m];
        for (i, x) in self.slices.iter().enumerate() {
            let s = f64::from(b.get(i));
            for (acc, &val) in data.iter_mut().zip(x.data()) {
                *acc += s * val;
            }
        }
        Ok(Matrix::from_raw(self.d, self.m, data))
    }

    /// `Y = [vec(X_1), ..., vec(X_N)]`, size `DM x N`.
    pub fn stacked_columns(&self) -> Matrix {
        let cols: Vec<Vec<f64>> = self.slices.iter().map(Matrix::vectorize).collect();
        Matrix::from_columns(&cols).expect("slices are non-empty and equally sized")
    }

    /// Mode-1 unfolding `[X_1, ..., X_N]`, size `D x MN`.
    pub fn mode1_unfolding(&self) -> Matrix {
        let n = self.len();
        let mut data = vec![0.0; self.d * self.m * n];
        let width = self.m * n;
        for (i, x) in self.slices.iter().enumerate() {
            for r in 0..self.d {
                for c in 0..self.m {
                    data[r * width + i * self.m + c] = x.get(r, c);
                }
            }
        }
        Matrix::from_raw(self.d, width, data)
    }

    /// Mode-2 unfolding `[X_1', ..., X_N']`, size `M x DN`.
    pub fn mode2_unfolding(&self) -> Matrix {
        let n = self.len();
        let mut data = vec![0.0; self.d * self.m * n];
        let width = self.d * n;
        for (i, x) in self.slices.iter().enumerate() {
            for r in 0..self.d {
                for c in 0..self.m {
                    data[c * width + i * self.d + r] = x.get(r, c);
                }
            }
        }
        Matrix::from_raw(self.m, width, data)
    }

    /// The same data viewed as `N` column vectors of length `DM` (an `M = 1`
    /// stack), the form consumed by the vectorized PCA-family methods.
    pub fn vectorized(&self) -> MatrixStack {
        let slices: Vec<Matrix> = self
            .slices
            .iter()
            .map(|x| Matrix::from_raw(self.d * self.m, 1, x.vectorize()))
            .collect();
        MatrixStack {
            d: self.d * self.m,
            m: 1,
            slices,
        }
    }

    pub fn scale(&self, s: f64) -> MatrixStack {
        MatrixStack {
            d: self.d,
            m: self.m,
            slices: self.slices.iter().map(|x| x.scale(s)).collect(),
        }
    }
}
