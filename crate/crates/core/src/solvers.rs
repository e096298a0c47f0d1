//! Exact rank-1 L1-norm TUCKER2 solvers and the optimality certificate.
//!
//! Both exact routes reduce the problem to maximizing
//! `sigma_max(sum_i b_i X_i)` over sign vectors `b` and differ only in the
//! candidate set they sweep: the exhaustive half-cube, or the polynomial-size
//! signature set of the hyperplane arrangement of `W` from the thin SVD of
//! the vectorized stack. At the maximizing `b`, the dominant singular pair of
//! the signed sum is the optimal `(u, v)` and the three objective identities
//! checked by [`verify_certificate`] hold simultaneously.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arrangement::{
    arrangement_size_bound, build_candidate_set, check_general_position, exhaustive_sign_vector,
    SignVector, EXHAUSTIVE_CAPACITY, GENERAL_POSITION_TOL,
};
use crate::error::{Error, Result};
use crate::matrix::MatrixStack;
use crate::num;
use crate::svd::{max_singular_value, thin_svd, top_singular_triplet};

/// Default capacity bound on N for the exhaustive solver.
pub const DEFAULT_EXHAUSTIVE_CAPACITY: usize = EXHAUSTIVE_CAPACITY;

/// `|u' X_i v|` at or below this is treated as zero and mapped to +1.
pub const SIGN_ZERO_TOL: f64 = 1e-12;

/// Candidates whose objective lands within this of the best are ties, broken
/// by the lexicographically earliest sign vector.
pub const SIGMA_TIE_TOL: f64 = 1e-12;

/// Relative tolerance for the certificate residuals.
pub const CERTIFICATE_TOL: f64 = 1e-8;

/// Factor norms within this of 1 are accepted as unit; anything else is
/// normalized internally.
const UNIT_NORM_TOL: f64 = 1e-9;

/// Problem size `DM * N` up to which the auto dispatcher computes the true
/// rank instead of the `min(DM, N)` estimate.
const AUTO_EXACT_RANK_LIMIT: usize = 4096;

/// Identifies which algorithm produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Exhaustive,
    Polynomial,
    Auto,
    Hosvd,
    Hooi,
    Glram,
    Pca,
    L1Pca,
    AltHeuristic,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Exhaustive,
        Method::Polynomial,
        Method::Auto,
        Method::Hosvd,
        Method::Hooi,
        Method::Glram,
        Method::Pca,
        Method::L1Pca,
        Method::AltHeuristic,
    ];

    pub fn as_tag(&self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Polynomial => "polynomial",
            Method::Auto => "auto",
            Method::Hosvd => "hosvd",
            Method::Hooi => "hooi",
            Method::Glram => "glram",
            Method::Pca => "pca",
            Method::L1Pca => "l1pca",
            Method::AltHeuristic => "alt-heuristic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "polynomial" => Ok(Method::Polynomial),
            "auto" => Ok(Method::Auto),
            "hosvd" => Ok(Method::Hosvd),
            "hooi" => Ok(Method::Hooi),
            "glram" => Ok(Method::Glram),
            "pca" => Ok(Method::Pca),
            "l1pca" => Ok(Method::L1Pca),
            "alt" | "alt-heuristic" => Ok(Method::AltHeuristic),
            _ => Err(Error::Domain {
                context: "unknown method tag",
            }),
        }
    }
}

/// A rank-1 solution together with its certificate data.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank1Solution {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub b: SignVector,
    pub objective: f64,
    pub method: Method,
    pub candidates_evaluated: usize,
    /// Set when the polynomial solver detected a general-position violation
    /// and fell back to the exhaustive search.
    pub fallback: bool,
}

fn unit_pair(stack: &MatrixStack, u: &[f64], v: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if u.len() != stack.d() || v.len() != stack.m() {
        return Err(Error::DimensionMismatch {
            context: "factor lengths must match the slice dimensions",
        });
    }
    if !u.iter().chain(v).all(|x| x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let normalize = |x: &[f64]| -> Result<Vec<f64>> {
        let n = num::norm(x);
        if n == 0.0 {
            return Err(Error::Degenerate {
                context: "zero factor vector",
            });
        }
        if num::abs(n - 1.0) <= UNIT_NORM_TOL {
            Ok(x.to_vec())
        } else {
            Ok(x.iter().map(|e| e / n).collect())
        }
    };
    Ok((normalize(u)?, normalize(v)?))
}

/// The rank-1 L1 objective `sum_i |u' X_i v|`; inputs outside unit norm by
/// more than 1e-9 are normalized first.
pub fn objective(stack: &MatrixStack, u: &[f64], v: &[f64]) -> Result<f64> {
    let (u, v) = unit_pair(stack, u, v)?;
    Ok(stack.slices().iter().map(|x| num::abs(x.bilinear(&u, &v))).sum())
}

/// The maximizing sign pattern `b_i = sgn(u' X_i v)`, with magnitudes at or
/// below [`SIGN_ZERO_TOL`] mapped to +1.
pub fn sign_pattern(stack: &MatrixStack, u: &[f64], v: &[f64]) -> Result<SignVector> {
    let (u, v) = unit_pair(stack, u, v)?;
    let signs: Vec<i8> = stack
        .slices()
        .iter()
        .map(|x| if x.bilinear(&u, &v) < -SIGN_ZERO_TOL { -1 } else { 1 })
        .collect();
    Ok(SignVector::from_signs_unchecked(signs))
}

/// Sweep `count` candidates, keep the best objective with lexicographic
/// tie-breaking, and finish with one full SVD plus the sign correction that
/// restores `b_i = sgn(u' X_i v)` under the triplet's canonical orientation.
fn search<F>(
    stack: &MatrixStack,
    count: usize,
    candidate_at: F,
    method: Method,
    fallback: bool,
) -> Result<Rank1Solution>
where
    F: Fn(usize) -> SignVector,
{
    debug_assert!(count >= 1);
    let mut sigmas = Vec::with_capacity(count);
    for k in 0..count {
        let b = candidate_at(k);
        let s = stack.signed_sum(&b)?;
        sigmas.push(max_singular_value(&s)?);
    }
    let best_sigma = sigmas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pick = sigmas
        .iter()
        .position(|&s| s >= best_sigma - SIGMA_TIE_TOL)
        .expect("candidate list is non-empty");
    let triplet = top_singular_triplet(&stack.signed_sum(&candidate_at(pick))?)?;
    let b = sign_pattern(stack, &triplet.u, &triplet.v)?;
    Ok(Rank1Solution {
        objective: triplet.sigma,
        u: triplet.u,
        v: triplet.v,
        b,
        method,
        candidates_evaluated: count,
        fallback,
    })
}

/// Exact solution by exhaustive search over the `2^(N-1)` half-cube, under
/// the default capacity bound.
pub fn solve_exhaustive(stack: &MatrixStack) -> Result<Rank1Solution> {
    solve_exhaustive_with_capacity(stack, DEFAULT_EXHAUSTIVE_CAPACITY)
}

/// As [`solve_exhaustive`] with an explicit capacity knob.
pub fn solve_exhaustive_with_capacity(
    stack: &MatrixStack,
    capacity: usize,
) -> Result<Rank1Solution> {
    let n = stack.len();
    if n > capacity || n - 1 >= usize::BITS as usize {
        return Err(Error::CapacityExceeded { n, capacity });
    }
    let count = 1usize << (n - 1);
    search(
        stack,
        count,
        |k| exhaustive_sign_vector(k, n),
        Method::Exhaustive,
        false,
    )
}

/// Exact solution by sweeping the arrangement candidate set, polynomial in N
/// for fixed rank. Falls back to the exhaustive search (flagged in the
/// result) when the general-position assumption fails.
pub fn solve_polynomial(stack: &MatrixStack) -> Result<Rank1Solution> {
    let y = stack.stacked_columns();
    if y.is_zero() {
        // The objective is identically zero; report the canonical solution.
        return Ok(Rank1Solution {
            u: num::unit_basis_vector(stack.d(), 0),
            v: num::unit_basis_vector(stack.m(), 0),
            b: SignVector::all_plus(stack.len())?,
            objective: 0.0,
            method: Method::Polynomial,
            candidates_evaluated: 0,
            fallback: false,
        });
    }
    let svd = thin_svd(&y)?;
    let gp = check_general_position(&svd.w, GENERAL_POSITION_TOL);
    let candidates = if gp.in_general_position {
        build_candidate_set(&svd.w)
    } else {
        Err(Error::GeneralPosition {
            subset: gp.offending_subset.unwrap_or_default(),
        })
    };
    match candidates {
        Ok(set) => search(
            stack,
            set.len(),
            |k| set.candidates()[k].clone(),
            Method::Polynomial,
            false,
        ),
        Err(Error::GeneralPosition { .. }) | Err(Error::Degenerate { .. }) => {
            let sol = solve_exhaustive(stack)?;
            Ok(Rank1Solution {
                method: Method::Polynomial,
                fallback: true,
                ..sol
            })
        }
        Err(other) => Err(other),
    }
}

/// Dispatch to whichever exact solver sweeps fewer candidates: `2^(N-1)`
/// against `2^rho * C(N, rho-1)`. The rank is computed exactly when
/// `DM * N` is small and estimated as `min(DM, N)` otherwise. The result is
/// identical to the dispatched solver's, including its method tag.
pub fn solve_auto(stack: &MatrixStack) -> Result<Rank1Solution> {
    let n = stack.len();
    let dm = stack.d() * stack.m();
    let rho = if dm.saturating_mul(n) <= AUTO_EXACT_RANK_LIMIT {
        let y = stack.stacked_columns();
        if y.is_zero() {
            return solve_polynomial(stack);
        }
        thin_svd(&y)?.rho
    } else {
        dm.min(n)
    };
    let exhaustive_count: u128 = if n - 1 >= 127 { u128::MAX } else { 1u128 << (n - 1) };
    if arrangement_size_bound(rho, n) < exhaustive_count {
        solve_polynomial(stack)
    } else {
        solve_exhaustive(stack)
    }
}

/// Residuals of the four optimality identities, each relative to the
/// solution's objective value.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateReport {
    /// `|objective - sum_i |u' X_i v||`, relative.
    pub objective_residual: f64,
    /// `|objective - u' (sum_i b_i X_i) v|`, relative.
    pub bilinear_residual: f64,
    /// `|objective - sigma_max(sum_i b_i X_i)|`, relative.
    pub sigma_residual: f64,
    /// Entries of `b` differing from `sgn(u' X_i v)`.
    pub sign_mismatches: usize,
    pub passed: bool,
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "objective_residual={:.3e} bilinear_residual={:.3e} sigma_residual={:.3e} sign_mismatches={} passed={}",
            self.objective_residual,
            self.bilinear_residual,
            self.sigma_residual,
            self.sign_mismatches,
            self.passed
        )
    }
}

/// Check the optimality identities of a solution against its source stack:
/// the objective must equal the evaluated L1 sum, the bilinear form through
/// the signed sum, and the dominant singular value of the signed sum, and
/// `b` must reproduce the sign pattern of `(u, v)`.
pub fn verify_certificate(stack: &MatrixStack, sol: &Rank1Solution) -> Result<CertificateReport> {
    if sol.u.len() != stack.d() || sol.v.len() != stack.m() || sol.b.len() != stack.len() {
        return Err(Error::DimensionMismatch {
            context: "solution shapes must match the stack",
        });
    }
    let evaluated = objective(stack, &sol.u, &sol.v)?;
    let signed = stack.signed_sum(&sol.b)?;
    let bilinear = signed.bilinear(&sol.u, &sol.v);
    let sigma = max_singular_value(&signed)?;
    let expected_b = sign_pattern(stack, &sol.u, &sol.v)?;
    let denom = num::abs(sol.objective).max(1e-30);
    let objective_residual = num::abs(sol.objective - evaluated) / denom;
    let bilinear_residual = num::abs(sol.objective - bilinear) / denom;
    let sigma_residual = num::abs(sol.objective - sigma) / denom;
    let sign_mismatches = sol
        .b
        .signs()
        .iter()
        .zip(expected_b.signs())
        .filter(|(a, b)| a != b)
        .count();
    let passed = objective_residual < CERTIFICATE_TOL
        && bilinear_residual < CERTIFICATE_TOL
        && sigma_residual < CERTIFICATE_TOL
        && sign_mismatches == 0;
    Ok(CertificateReport {
        objective_residual,
        bilinear_residual,
        sigma_residual,
        sign_mismatches,
        passed,
    })
}
