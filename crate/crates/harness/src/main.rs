//! Command-line interface for the rank-1 L1-norm TUCKER2 toolkit.
//!
//! Exit codes: 0 success, 1 validation or configuration error, 2 solver
//! capacity refusal, 3 verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use l1tucker2_core::{verify_certificate, MatrixStack, Method};
use l1tucker2_harness::{
    corrupt, generate_dataset, read_stack, records_to_csv, run_sweep, run_verification,
    solve_with_method, write_stack, ExperimentConfig, HarnessError, MethodOutput,
};

#[derive(Parser)]
#[command(
    name = "l1tucker2",
    about = "Exact rank-1 L1-norm TUCKER2 decomposition: solvers, baselines, and the outlier benchmark harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a stack file with the chosen method and print the solution
    /// with its certificate residuals.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// exhaustive|polynomial|auto|hosvd|hooi|glram|pca|l1pca|alt
        #[arg(long, default_value = "auto")]
        method: String,
        /// Emit the solution as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Generate a seeded rank-1-plus-noise stack; writes `<out>` and the
    /// noise-free `<out>.clean` sibling.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "signal-var", default_value_t = 49.0)]
        signal_var: f64,
        #[arg(long = "noise-var", default_value_t = 1.0)]
        noise_var: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Corrupt entries of a stack file with additive Gaussian outliers.
    Corrupt {
        #[arg(long)]
        input: PathBuf,
        /// Corrupted entries per corrupted slice.
        #[arg(long)]
        entries: usize,
        /// Number of corrupted slices.
        #[arg(long)]
        matrices: usize,
        /// Corruption variance in dB: sigma_c^2 = 10^(db/10).
        #[arg(long)]
        db: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a Monte Carlo MSE sweep from a key=value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the solver-equivalence and certificate self-checks.
    Verify {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8, HarnessError> {
    match command {
        Command::Solve { input, method, json } => cmd_solve(&input, &method, json),
        Command::Gen {
            d,
            m,
            n,
            signal_var,
            noise_var,
            seed,
            out,
        } => cmd_gen(d, m, n, signal_var, noise_var, seed, &out),
        Command::Corrupt {
            input,
            entries,
            matrices,
            db,
            seed,
            out,
        } => cmd_corrupt(&input, entries, matrices, db, seed, &out),
        Command::Sweep { config, out } => cmd_sweep(&config, &out),
        Command::Verify { trials, seed } => {
            let outcome = run_verification(trials, seed);
            for line in &outcome.lines {
                println!("{line}");
            }
            Ok(if outcome.passed { 0 } else { 3 })
        }
    }
}

fn cmd_solve(input: &Path, method: &str, json: bool) -> Result<u8, HarnessError> {
    let method: Method = method
        .parse()
        .map_err(|_| HarnessError::Config(format!("unknown method '{method}'")))?;
    let stack = read_stack(input)?;
    let output = solve_with_method(&stack, method)?;
    // PCA-family certificates are checked on the vectorized view the
    // solution lives on.
    let certificate = if output.vectorized_family {
        verify_certificate(&stack.vectorized(), &output.solution)?
    } else {
        verify_certificate(&stack, &output.solution)?
    };

    if json {
        println!("{}", solution_json(&output, &certificate));
    } else {
        let sol = &output.solution;
        println!("method: {}", sol.method);
        println!("objective: {}", sol.objective);
        println!("candidates evaluated: {}", sol.candidates_evaluated);
        if sol.fallback {
            println!("fallback: exhaustive search (general-position violation)");
        }
        let b: Vec<String> = sol.b.signs().iter().map(|s| format!("{s:+}")).collect();
        println!("b: {}", b.join(" "));
        println!("u: {}", join_floats(&sol.u));
        println!("v: {}", join_floats(&sol.v));
        println!("certificate: {certificate}");
    }
    Ok(0)
}

fn join_floats(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn solution_json(
    output: &MethodOutput,
    certificate: &l1tucker2_core::CertificateReport,
) -> String {
    let sol = &output.solution;
    serde_json::json!({
        "method": sol.method.as_tag(),
        "objective": sol.objective,
        "candidates_evaluated": sol.candidates_evaluated,
        "fallback": sol.fallback,
        "b": sol.b.signs().iter().map(|&s| i32::from(s)).collect::<Vec<_>>(),
        "u": sol.u,
        "v": sol.v,
        "certificate": {
            "objective_residual": certificate.objective_residual,
            "bilinear_residual": certificate.bilinear_residual,
            "sigma_residual": certificate.sigma_residual,
            "sign_mismatches": certificate.sign_mismatches,
            "passed": certificate.passed,
        },
    })
    .to_string()
}

fn cmd_gen(
    d: usize,
    m: usize,
    n: usize,
    signal_var: f64,
    noise_var: f64,
    seed: u64,
    out: &Path,
) -> Result<u8, HarnessError> {
    let cfg = ExperimentConfig {
        d,
        m,
        n,
        signal_variance: signal_var,
        noise_variance: noise_var,
        seed,
        corrupt_entries: 0,
        corrupt_matrices: 0,
        ..ExperimentConfig::default()
    };
    cfg.validate()?;
    let (clean, noisy) = generate_dataset(&cfg, 0);
    write_stack(out, &noisy)?;
    let clean_path = sibling_with_suffix(out, ".clean");
    write_stack(&clean_path, &clean)?;
    println!(
        "wrote {} and {} ({}x{}x{})",
        out.display(),
        clean_path.display(),
        d,
        m,
        n
    );
    Ok(0)
}

fn sibling_with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn cmd_corrupt(
    input: &Path,
    entries: usize,
    matrices: usize,
    db: f64,
    seed: u64,
    out: &Path,
) -> Result<u8, HarnessError> {
    let stack: MatrixStack = read_stack(input)?;
    let cfg = ExperimentConfig {
        d: stack.d(),
        m: stack.m(),
        n: stack.len(),
        corrupt_entries: entries,
        corrupt_matrices: matrices,
        seed,
        ..ExperimentConfig::default()
    };
    let corrupted = corrupt(&stack, &cfg, 0, db)?;
    write_stack(out, &corrupted)?;
    println!(
        "corrupted {} entries in {} of {} slices at {} dB -> {}",
        entries,
        matrices,
        stack.len(),
        db,
        out.display()
    );
    Ok(0)
}

fn cmd_sweep(config: &Path, out: &Path) -> Result<u8, HarnessError> {
    let text = std::fs::read_to_string(config)?;
    let cfg = ExperimentConfig::from_key_values(&text)?;
    let records = run_sweep(&cfg)?;
    std::fs::write(out, records_to_csv(&records))?;
    println!(
        "wrote {} records ({} methods x {} corruption levels, {} realizations) -> {}",
        records.len(),
        cfg.methods.len(),
        cfg.corruption_db_list.len(),
        cfg.realizations,
        out.display()
    );
    Ok(0)
}
