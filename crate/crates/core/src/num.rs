//! Scalar and small-vector helpers usable without `std`.

use alloc::vec;
use alloc::vec::Vec;

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(a: &[f64]) -> f64 {
    sqrt(dot(a, a))
}

pub(crate) fn scale_in_place(a: &mut [f64], s: f64) {
    for x in a.iter_mut() {
        *x *= s;
    }
}

pub(crate) fn negate_in_place(a: &mut [f64]) {
    for x in a.iter_mut() {
        *x = -*x;
    }
}

/// Standard basis vector `e_index` of the given length.
pub(crate) fn unit_basis_vector(len: usize, index: usize) -> Vec<f64> {
    debug_assert!(index < len);
    let mut e = vec![0.0; len];
    e[index] = 1.0;
    e
}
