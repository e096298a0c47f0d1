//! Exact rank-1 L1-norm TUCKER2 decomposition of a stack of real matrices.
//!
//! Given matrices `X_1, ..., X_N` of common size `D x M`, the rank-1 L1-norm
//! TUCKER2 problem asks for unit vectors `u` (length `D`) and `v` (length `M`)
//! maximizing `sum_i |u' X_i v|`. The problem reduces to maximizing
//! `sigma_max(sum_i b_i X_i)` over antipodal-binary vectors `b` in `{+1,-1}^N`,
//! which this crate solves exactly by two routes:
//!
//! - [`solvers::solve_exhaustive`]: enumerates the `2^(N-1)` half of the sign
//!   hypercube (the objective is invariant to global negation of `b`).
//! - [`solvers::solve_polynomial`]: enumerates only the sign patterns realized
//!   by the hyperplane arrangement spanned by the right singular subspace of
//!   the vectorized stack, a set of size `O(N^(rho-1))` for rank `rho`.
//!
//! The [`baselines`] module carries the usual L2 competitors (HOSVD, HOOI,
//! GLRAM, vectorized PCA), exact rank-1 L1-PCA, and an alternating L1
//! heuristic, all in a shape convenient for side-by-side benchmarking.
//!
//! The crate is `no_std` (with `alloc`); all routines are pure functions of
//! their inputs and safe to call concurrently.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arrangement;
pub mod baselines;
pub mod error;
pub mod matrix;
pub mod solvers;
pub mod svd;

pub(crate) mod num;

pub use arrangement::{
    build_candidate_set, build_exhaustive_set, build_exhaustive_set_with_capacity, cell_count,
    check_general_position, CandidateSet, CandidateSource, GeneralPositionCheck, SignVector,
    EXHAUSTIVE_CAPACITY, GENERAL_POSITION_TOL,
};
pub use baselines::{
    alt_heuristic, glram_rank1, hooi_rank1, hosvd_rank1, l1pca_rank1_exact, pca_rank1_vectorized,
    reconstruct, AlternatingSolution, HeuristicRun, Rank1Basis, ALTERNATION_MAX_ITERS,
    ALTERNATION_TOL,
};
pub use error::{Error, Result};
pub use matrix::{Matrix, MatrixStack};
pub use solvers::{
    objective, sign_pattern, solve_auto, solve_exhaustive, solve_exhaustive_with_capacity,
    solve_polynomial, verify_certificate, CertificateReport, Method, Rank1Solution,
    CERTIFICATE_TOL, SIGMA_TIE_TOL, SIGN_ZERO_TOL,
};
pub use svd::{
    max_singular_value, orthonormal_complement_vector, thin_svd, top_singular_triplet,
    SingularTriplet, ThinSvd,
};

#[cfg(test)]
pub(crate) mod testutil;
