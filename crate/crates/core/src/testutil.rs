//! Shared helpers for unit tests, including independent oracles that must
//! not reuse the crate's SVD path.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Matrix, MatrixStack};

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform(-1, 1) entries; adequate for generic-position test data.
pub(crate) fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data: Vec<f64> = (0..rows * cols).map(|_| r.random_range(-1.0..1.0)).collect();
    Matrix::new(rows, cols, data).unwrap()
}

pub(crate) fn random_stack(r: &mut ChaCha8Rng, d: usize, m: usize, n: usize) -> MatrixStack {
    let slices = (0..n).map(|_| random_matrix(r, d, m)).collect();
    MatrixStack::new(slices).unwrap()
}

pub(crate) fn random_unit_vector(r: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len).map(|_| r.random_range(-1.0..1.0)).collect();
        let n = crate::num::norm(&v);
        if n > 1e-3 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

/// Kronecker product of two vectors: `(a (x) b)[i*len(b)+j] = a[i] b[j]`.
pub(crate) fn kron(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Largest eigenvalue of a symmetric matrix by classic two-sided Jacobi
/// rotations. Independent of the one-sided SVD implementation under test.
pub(crate) fn sym_eigen_max(a: &Matrix) -> f64 {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[p][q] * m[p][q];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // Rotate rows and columns p, q.
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
            }
        }
    }
    (0..n).map(|i| m[i][i]).fold(f64::NEG_INFINITY, f64::max)
}

/// Rank of a set of columns by Gram-Schmidt with a fixed threshold; an
/// independent check for the general-position test.
pub(crate) fn gram_schmidt_rank(columns: &[Vec<f64>], tol: f64) -> usize {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for col in columns {
        let mut r = col.clone();
        for b in &basis {
            let coeff = crate::num::dot(&r, b);
            for (x, &bx) in r.iter_mut().zip(b) {
                *x -= coeff * bx;
            }
        }
        let n = crate::num::norm(&r);
        if n > tol {
            crate::num::scale_in_place(&mut r, 1.0 / n);
            basis.push(r);
        }
    }
    basis.len()
}

/// Random matrix with orthonormal rows (rho x n, rho <= n), built by
/// Gram-Schmidt on random rows.
pub(crate) fn random_orthonormal_rows(r: &mut ChaCha8Rng, rho: usize, n: usize) -> Matrix {
    assert!(rho <= n);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(rho);
    while rows.len() < rho {
        let cand: Vec<f64> = (0..n).map(|_| r.random_range(-1.0..1.0)).collect();
        let mut resid = cand;
        for b in &rows {
            let coeff = crate::num::dot(&resid, b);
            for (x, &bx) in resid.iter_mut().zip(b) {
                *x -= coeff * bx;
            }
        }
        let nn = crate::num::norm(&resid);
        if nn > 1e-6 {
            crate::num::scale_in_place(&mut resid, 1.0 / nn);
            rows.push(resid);
        }
    }
    let mut data = vec![0.0; rho * n];
    for (i, row) in rows.iter().enumerate() {
        data[i * n..(i + 1) * n].copy_from_slice(row);
    }
    Matrix::new(rho, n, data).unwrap()
}
