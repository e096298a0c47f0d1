//! Sign vectors and candidate-set enumeration.
//!
//! The combinatorial search space is `{+1,-1}^N`. Two candidate sets matter:
//! the exhaustive half-cube (first entry pinned to +1, since the objective is
//! invariant to global negation) and the polynomial-size set of cell
//! signatures of the hyperplane arrangement spanned by the nullspaces of the
//! columns of `W`. Every cell is bounded by at least one verge, the line
//! where `rho - 1` of the hyperplanes intersect, so walking all verges and
//! completing the undetermined coordinates covers every signature.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::num;
use crate::svd::{min_singular_value, orthonormal_complement_vector};

/// Default bound on N for exhaustive enumeration; 2^(N-1) SVDs beyond this
/// is past desk scale.
pub const EXHAUSTIVE_CAPACITY: usize = 30;

/// Default smallest-singular-value tolerance for the general-position check.
pub const GENERAL_POSITION_TOL: f64 = 1e-9;

/// Antipodal-binary vector `b` in `{+1,-1}^N`.
///
/// Ordering places +1 before -1 position by position, matching the canonical
/// bit encoding (+1 -> 0, -1 -> 1) used for deduplication and tie-breaking.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::Domain {
                context: "sign vector must be non-empty",
            });
        }
        for (index, &s) in signs.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(Error::InvalidSign { index });
            }
        }
        Ok(Self { signs })
    }

    pub(crate) fn from_signs_unchecked(signs: Vec<i8>) -> Self {
        debug_assert!(!signs.is_empty() && signs.iter().all(|&s| s == 1 || s == -1));
        Self { signs }
    }

    pub fn all_plus(n: usize) -> Result<Self> {
        Self::from_signs(vec![1; n])
    }

    /// Entrywise sign of a real vector, with any zero mapped to +1.
    pub fn signs_of(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain {
                context: "sign vector must be non-empty",
            });
        }
        Ok(Self::from_signs_unchecked(
            values.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect(),
        ))
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn negated(&self) -> Self {
        Self::from_signs_unchecked(self.signs.iter().map(|&s| -s).collect())
    }
}

impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.signs.iter().zip(&other.signs) {
            // +1 encodes to bit 0 and sorts first.
            let ka = u8::from(*a < 0);
            let kb = u8::from(*b < 0);
            match ka.cmp(&kb) {
                Ordering::Equal => continue,
                non_eq => return non_eq,
            }
        }
        self.signs.len().cmp(&other.signs.len())
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Where a candidate set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateSource {
    ExhaustiveHalf,
    Arrangement,
}

/// Deduplicated, canonically ordered collection of sign vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    candidates: Vec<SignVector>,
    source: CandidateSource,
}

impl CandidateSet {
    pub fn candidates(&self) -> &[SignVector] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn source(&self) -> CandidateSource {
        self.source
    }

    pub fn contains(&self, b: &SignVector) -> bool {
        self.candidates.binary_search(b).is_ok()
    }
}

/// Lexicographic k-subsets of {0, .., n-1}; k = 0 yields one empty subset.
pub(crate) struct Combinations {
    n: usize,
    k: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if self.k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            let idx = i - 1;
            if self.current[idx] < self.n - (self.k - idx) {
                self.current[idx] += 1;
                for j in idx + 1..self.k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
            i -= 1;
        }
        Some(out)
    }
}

fn binomial_u128(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r
            .checked_mul((n - i) as u128)
            .ok_or(Error::Domain {
                context: "binomial coefficient overflows 128 bits",
            })?
            / (i as u128 + 1);
    }
    Ok(r)
}

/// Exact number of sign-coherent cells cut out of `R^rho` by the nullspaces
/// of `N` general-position directions: `K = 2 sum_{j=0}^{rho-1} C(N-1, j)`.
/// Equals `2^N` exactly when `rho = N`.
pub fn cell_count(rho: usize, n: usize) -> Result<u128> {
    if rho == 0 || n == 0 {
        return Err(Error::Domain {
            context: "cell count requires positive rho and N",
        });
    }
    if rho > n {
        return Err(Error::Domain {
            context: "cell count requires rho <= N",
        });
    }
    let mut total: u128 = 0;
    for j in 0..rho {
        total = total.checked_add(binomial_u128(n - 1, j)?).ok_or(Error::Domain {
            context: "cell count overflows 128 bits",
        })?;
    }
    total.checked_mul(2).ok_or(Error::Domain {
        context: "cell count overflows 128 bits",
    })
}

/// Upper bound on the arrangement candidate set, `2^rho * C(N, rho-1)`,
/// saturating instead of overflowing. Used for solver dispatch.
pub(crate) fn arrangement_size_bound(rho: usize, n: usize) -> u128 {
    let pow: u128 = if rho >= 127 { u128::MAX } else { 1u128 << rho };
    let binom = binomial_u128(n, rho.saturating_sub(1)).unwrap_or(u128::MAX);
    pow.saturating_mul(binom)
}

/// Result of the general-position check: whether every size-(rho-1) column
/// subset of `W` is safely full rank, and the first offender when not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPositionCheck {
    pub in_general_position: bool,
    pub offending_subset: Option<Vec<usize>>,
}

/// Check that every `rho - 1` columns of `W` (rho x N) have smallest
/// singular value above `tol`. Vacuously true for `rho = 1`.
pub fn check_general_position(w: &Matrix, tol: f64) -> GeneralPositionCheck {
    let rho = w.rows();
    let n = w.cols();
    if rho <= 1 {
        return GeneralPositionCheck {
            in_general_position: true,
            offending_subset: None,
        };
    }
    let cols: Vec<Vec<f64>> = (0..n).map(|c| w.column(c)).collect();
    for subset in Combinations::new(n, rho - 1) {
        let sub_cols: Vec<Vec<f64>> = subset.iter().map(|&i| cols[i].clone()).collect();
        let sub = Matrix::from_columns(&sub_cols).expect("subset columns share dimension rho");
        if min_singular_value(&sub) <= tol {
            return GeneralPositionCheck {
                in_general_position: false,
                offending_subset: Some(subset),
            };
        }
    }
    GeneralPositionCheck {
        in_general_position: true,
        offending_subset: None,
    }
}

/// Candidate signatures of the hyperplane arrangement of `W` (rho x N).
///
/// For every index subset `I` with `|I| = rho - 1`, the verge direction `v`
/// orthogonal to the columns in `I` pins the signs outside `I` to
/// `sgn(W' v)` (zeros to +1); the `2^(rho-1)` completions inside `I` are all
/// emitted, and the same is done for `-v` so the result is a superset of
/// every cell signature without leaning on downstream negation invariance.
/// The deduplicated set has at most `2^rho * C(N, rho-1)` members and is
/// returned in canonical ascending order regardless of construction order.
pub fn build_candidate_set(w: &Matrix) -> Result<CandidateSet> {
    let rho = w.rows();
    let n = w.cols();
    if rho > n {
        return Err(Error::Domain {
            context: "W must satisfy rho <= N",
        });
    }
    if rho >= usize::BITS as usize {
        return Err(Error::Domain {
            context: "completion count 2^(rho-1) overflows",
        });
    }
    let cols: Vec<Vec<f64>> = (0..n).map(|c| w.column(c)).collect();
    let mut out: Vec<SignVector> = Vec::new();
    for subset in Combinations::new(n, rho - 1) {
        let verge_cols: Vec<Vec<f64>> = subset.iter().map(|&i| cols[i].clone()).collect();
        let verge = orthonormal_complement_vector(&verge_cols, rho).map_err(|e| match e {
            Error::Degenerate { .. } => Error::GeneralPosition {
                subset: subset.clone(),
            },
            other => other,
        })?;
        let mut proj: Vec<f64> = cols.iter().map(|c| num::dot(c, &verge)).collect();
        for _side in 0..2 {
            let base = SignVector::signs_of(&proj)?;
            for mask in 0..(1usize << (rho - 1)) {
                let mut signs = base.signs().to_vec();
                for (bit, &i) in subset.iter().enumerate() {
                    let neg = (mask >> (subset.len() - 1 - bit)) & 1 == 1;
                    signs[i] = if neg { -1 } else { 1 };
                }
                out.push(SignVector::from_signs_unchecked(signs));
            }
            num::negate_in_place(&mut proj);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(CandidateSet {
        candidates: out,
        source: CandidateSource::Arrangement,
    })
}

/// The sign vector at lexicographic position `index` of the half-cube
/// `{b : b_1 = +1}`, with +1 ordered before -1 position by position.
pub(crate) fn exhaustive_sign_vector(index: usize, n: usize) -> SignVector {
    debug_assert!(n >= 1 && index < (1usize << (n - 1)));
    let mut signs = Vec::with_capacity(n);
    signs.push(1i8);
    for pos in 1..n {
        let bit = (index >> (n - 1 - pos)) & 1;
        signs.push(if bit == 1 { -1 } else { 1 });
    }
    SignVector::from_signs_unchecked(signs)
}

/// All `2^(N-1)` sign vectors with first entry +1, in lexicographic order,
/// under the default capacity bound.
pub fn build_exhaustive_set(n: usize) -> Result<CandidateSet> {
    build_exhaustive_set_with_capacity(n, EXHAUSTIVE_CAPACITY)
}

/// As [`build_exhaustive_set`] with an explicit capacity knob.
pub fn build_exhaustive_set_with_capacity(n: usize, capacity: usize) -> Result<CandidateSet> {
    if n == 0 {
        return Err(Error::Domain {
            context: "N must be positive",
        });
    }
    if n > capacity || n - 1 >= usize::BITS as usize {
        return Err(Error::CapacityExceeded { n, capacity });
    }
    let count = 1usize << (n - 1);
    let candidates = (0..count).map(|k| exhaustive_sign_vector(k, n)).collect();
    Ok(CandidateSet {
        candidates,
        source: CandidateSource::ExhaustiveHalf,
    })
}
