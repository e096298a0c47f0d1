//! Benchmark harness for the exact rank-1 L1-norm TUCKER2 solvers.
//!
//! Provides seeded synthetic data generation (rank-1 signal plus AWGN),
//! sparse outlier corruption, paired Monte Carlo MSE sweeps across all
//! decomposition methods, the text stack-file format, and the statistics
//! used by the acceptance checks. The `l1tucker2` binary exposes all of it
//! on the command line.

pub mod config;
pub mod data;
pub mod stackio;
pub mod stats;
pub mod sweep;
pub mod verify;

pub use config::ExperimentConfig;
pub use data::{corrupt, db_to_variance, generate_dataset, mse};
pub use stackio::{format_stack, parse_stack, read_stack, write_stack};
pub use stats::{paired_sign_test, sign_test_p_greater, PairedComparison};
pub use sweep::{
    records_to_csv, run_sweep, run_sweep_detailed, solve_with_method, MethodOutput, SweepDetail,
    SweepRecord,
};
pub use verify::{run_verification, VerifyOutcome};

use thiserror::Error;

/// Harness-level error with a process exit code mapping: 1 for validation
/// and IO problems, 2 for solver capacity refusals.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("stack file error: {0}")]
    StackFile(String),
    #[error(transparent)]
    Core(#[from] l1tucker2_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(l1tucker2_core::Error::CapacityExceeded { .. }) => 2,
            _ => 1,
        }
    }
}
