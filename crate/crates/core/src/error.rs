//! Error type shared across the crate.

use alloc::vec::Vec;
use core::fmt;

/// Errors produced by construction and solver routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operand shapes are incompatible for the requested operation.
    DimensionMismatch { context: &'static str },
    /// An input entry is NaN or infinite.
    NonFinite,
    /// A matrix stack must contain at least one slice.
    EmptyStack,
    /// Sign vectors admit only +1 and -1 entries.
    InvalidSign { index: usize },
    /// The exhaustive feasibility set 2^(N-1) exceeds the configured bound.
    CapacityExceeded { n: usize, capacity: usize },
    /// Argument outside the operation's domain.
    Domain { context: &'static str },
    /// Input too close to linear dependence for a reliable result.
    Degenerate { context: &'static str },
    /// A size-(rho-1) column subset of W is (numerically) rank deficient.
    GeneralPosition { subset: Vec<usize> },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { context } => write!(f, "dimension mismatch: {context}"),
            Error::NonFinite => write!(f, "input contains a NaN or infinite entry"),
            Error::EmptyStack => write!(f, "matrix stack must contain at least one slice"),
            Error::InvalidSign { index } => {
                write!(f, "sign vector entry {index} is not +1 or -1")
            }
            Error::CapacityExceeded { n, capacity } => write!(
                f,
                "exhaustive search over 2^({n}-1) candidates exceeds the capacity bound N <= {capacity}"
            ),
            Error::Domain { context } => write!(f, "domain error: {context}"),
            Error::Degenerate { context } => write!(f, "degenerate input: {context}"),
            Error::GeneralPosition { subset } => {
                write!(f, "general-position assumption violated by column subset {subset:?}")
            }
        }
    }
}

impl core::error::Error for Error {}
