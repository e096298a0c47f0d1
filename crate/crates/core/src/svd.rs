//! Singular-value machinery: dominant triplets, thin SVD, and complement
//! directions for the arrangement search.
//!
//! Everything is built on one-sided Jacobi orthogonalization, which for the
//! small dense matrices handled here converges to machine precision in a
//! handful of sweeps and keeps the computed factors orthonormal to ~1e-15.
//! The rotation sequence depends only on the input bytes, so repeated calls
//! are bitwise reproducible, and negating the input negates the work columns
//! without changing any rotation, leaving all singular values bit-identical.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::num;

/// Dominant singular value with its unit singular vector pair.
///
/// Canonical orientation: the entry of `u` with the largest absolute value is
/// positive (ties broken by the lowest index), with `v` flipped alongside `u`
/// so that `A v = sigma u` keeps holding.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularTriplet {
    pub sigma: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Thin SVD `Y = Q diag(S) W` with `Q' Q = W W' = I_rho`.
///
/// `rho` counts singular values above `1e-10` relative to the largest, the
/// numerical stand-in for exact rank.
#[derive(Clone, Debug, PartialEq)]
pub struct ThinSvd {
    pub q: Matrix,
    pub s: Vec<f64>,
    pub w: Matrix,
    pub rho: usize,
}

/// Relative threshold below which a singular value does not count towards
/// the numerical rank.
pub const RANK_TOL_REL: f64 = 1e-10;

/// Residual-norm threshold for the deterministic complement-direction search.
pub const COMPLEMENT_RESIDUAL_TOL: f64 = 1e-8;

const JACOBI_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 64;

struct SvdFactors {
    /// Singular values, descending.
    sigmas: Vec<f64>,
    /// Unit left vectors in work orientation, parallel to `sigmas`.
    /// All-zero where the singular value is exactly zero.
    left: Vec<Vec<f64>>,
    /// Unit right vectors in work orientation, when requested.
    right: Option<Vec<Vec<f64>>>,
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    debug_assert!(p < q);
    let (head, tail) = cols.split_at_mut(q);
    let cp = &mut head[p];
    let cq = &mut tail[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let yq = *y;
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

/// One-sided Jacobi on the orientation with the fewer columns. Returns
/// factors in work orientation plus whether the input was transposed.
fn jacobi_svd(a: &Matrix, want_right: bool) -> (SvdFactors, bool) {
    let transposed = a.rows() < a.cols();
    let work = if transposed { a.transpose() } else { a.clone() };
    let n = work.cols();
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| work.column(j)).collect();
    let mut right: Option<Vec<Vec<f64>>> =
        want_right.then(|| (0..n).map(|j| num::unit_basis_vector(n, j)).collect());

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let app = num::dot(&cols[p], &cols[p]);
                let aqq = num::dot(&cols[q], &cols[q]);
                let apq = num::dot(&cols[p], &cols[q]);
                if num::abs(apq) <= JACOBI_TOL * num::sqrt(app * aqq) {
                    continue;
                }
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + num::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + num::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / num::sqrt(1.0 + t * t);
                let s = c * t;
                rotate_pair(&mut cols, p, q, c, s);
                if let Some(r) = right.as_mut() {
                    rotate_pair(r, p, q, c, s);
                }
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols.iter().map(|c| num::norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));

    let mut sigmas = Vec::with_capacity(n);
    let mut left = Vec::with_capacity(n);
    let mut right_sorted = right.as_ref().map(|_| Vec::with_capacity(n));
    for &idx in &order {
        let sigma = norms[idx];
        sigmas.push(sigma);
        let mut col = cols[idx].clone();
        if sigma > 0.0 {
            num::scale_in_place(&mut col, 1.0 / sigma);
        }
        left.push(col);
        if let (Some(rs), Some(r)) = (right_sorted.as_mut(), right.as_ref()) {
            rs.push(r[idx].clone());
        }
    }

    (
        SvdFactors {
            sigmas,
            left,
            right: right_sorted,
        },
        transposed,
    )
}

fn ensure_finite(a: &Matrix) -> Result<()> {
    if a.data().iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn canonicalize(u: &mut [f64], v: &mut [f64]) {
    let mut best = 0;
    for i in 1..u.len() {
        if num::abs(u[i]) > num::abs(u[best]) {
            best = i;
        }
    }
    if u[best] < 0.0 {
        num::negate_in_place(u);
        num::negate_in_place(v);
    }
}

/// Largest singular value of `A`, the per-candidate objective of the
/// combinatorial search. Shares the rotation sequence with
/// [`top_singular_triplet`], so both report bit-identical values.
pub fn max_singular_value(a: &Matrix) -> Result<f64> {
    ensure_finite(a)?;
    if a.is_zero() {
        return Ok(0.0);
    }
    let (factors, _) = jacobi_svd(a, false);
    Ok(factors.sigmas[0])
}

/// Dominant singular triplet `(sigma, u, v)` with `A v = sigma u`.
///
/// The all-zero matrix yields `sigma = 0` with `u = e_1`, `v = e_1`, keeping
/// degenerate data on the ordinary path.
pub fn top_singular_triplet(a: &Matrix) -> Result<SingularTriplet> {
    ensure_finite(a)?;
    if a.is_zero() {
        return Ok(SingularTriplet {
            sigma: 0.0,
            u: num::unit_basis_vector(a.rows(), 0),
            v: num::unit_basis_vector(a.cols(), 0),
        });
    }
    let (factors, transposed) = jacobi_svd(a, true);
    let sigma = factors.sigmas[0];
    let work_left = factors.left[0].clone();
    let work_right = factors.right.expect("right vectors requested")[0].clone();
    let (mut u, mut v) = if transposed {
        (work_right, work_left)
    } else {
        (work_left, work_right)
    };
    canonicalize(&mut u, &mut v);
    Ok(SingularTriplet { sigma, u, v })
}

/// Thin SVD of `Y`. Fails on non-finite entries; the all-zero matrix has no
/// positive-rank factorization and reports a degenerate input.
pub fn thin_svd(y: &Matrix) -> Result<ThinSvd> {
    ensure_finite(y)?;
    if y.is_zero() {
        return Err(Error::Degenerate {
            context: "thin SVD of the all-zero matrix",
        });
    }
    let (factors, transposed) = jacobi_svd(y, true);
    let right = factors.right.expect("right vectors requested");
    let sigma_max = factors.sigmas[0];
    let rho = factors
        .sigmas
        .iter()
        .take_while(|&&s| s > RANK_TOL_REL * sigma_max)
        .count();
    debug_assert!(rho >= 1);

    // In work orientation the left vectors live in the row space of length
    // max(rows, cols); map back so q has y.rows()-length columns.
    let (q_cols, w_rows) = if transposed {
        (&right[..rho], &factors.left[..rho])
    } else {
        (&factors.left[..rho], &right[..rho])
    };
    let q = Matrix::from_columns(q_cols)?;
    let mut w = Matrix::zeros(rho, y.cols());
    for (r, row) in w_rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            w.set(r, c, x);
        }
    }
    Ok(ThinSvd {
        q,
        s: factors.sigmas[..rho].to_vec(),
        w,
        rho,
    })
}

fn project_out(r: &mut [f64], basis: &[Vec<f64>]) {
    // Two passes keep the residual orthogonal to the basis at machine level.
    for _ in 0..2 {
        for b in basis {
            let coeff = num::dot(r, b);
            for (x, &bx) in r.iter_mut().zip(b) {
                *x -= coeff * bx;
            }
        }
    }
}

/// Unit vector orthogonal to all given columns of `R^dim`.
///
/// Deterministic: orthonormalizes the inputs by Gram-Schmidt, then tries the
/// standard basis vectors `e_1, e_2, ...` in order and normalizes the first
/// residual with norm above [`COMPLEMENT_RESIDUAL_TOL`]. An empty input list
/// yields `e_1`. Any residual collapse below the threshold reports a
/// degenerate input, which callers treat as a general-position violation.
pub fn orthonormal_complement_vector(columns: &[Vec<f64>], dim: usize) -> Result<Vec<f64>> {
    if dim == 0 {
        return Err(Error::Domain {
            context: "complement dimension must be positive",
        });
    }
    if columns.iter().any(|c| c.len() != dim) {
        return Err(Error::DimensionMismatch {
            context: "complement columns must have the requested dimension",
        });
    }
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(columns.len());
    for col in columns {
        let mut r = col.clone();
        project_out(&mut r, &basis);
        let nrm = num::norm(&r);
        if nrm <= COMPLEMENT_RESIDUAL_TOL {
            return Err(Error::Degenerate {
                context: "dependent columns in complement construction",
            });
        }
        num::scale_in_place(&mut r, 1.0 / nrm);
        basis.push(r);
    }
    for k in 0..dim {
        let mut r = vec![0.0; dim];
        r[k] = 1.0;
        project_out(&mut r, &basis);
        let nrm = num::norm(&r);
        if nrm > COMPLEMENT_RESIDUAL_TOL {
            num::scale_in_place(&mut r, 1.0 / nrm);
            return Ok(r);
        }
    }
    Err(Error::Degenerate {
        context: "no complement direction above threshold",
    })
}

/// Smallest singular value, used by the general-position check.
pub(crate) fn min_singular_value(a: &Matrix) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let (factors, _) = jacobi_svd(a, false);
    *factors.sigmas.last().expect("at least one singular value")
}
