//! Self-check suites behind the `verify` CLI subcommand: solver-equivalence
//! and certificate checks on seeded random instances.

use l1tucker2_core::{
    alt_heuristic, solve_exhaustive, solve_polynomial, verify_certificate, Matrix, MatrixStack,
    ALTERNATION_MAX_ITERS,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Aggregated result of the verification run.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub passed: bool,
    pub lines: Vec<String>,
}

fn random_stack(rng: &mut ChaCha8Rng, d: usize, m: usize, n: usize) -> MatrixStack {
    let slices = (0..n)
        .map(|_| {
            let data: Vec<f64> = (0..d * m).map(|_| rng.sample(StandardNormal)).collect();
            Matrix::new(d, m, data).expect("finite draws")
        })
        .collect();
    MatrixStack::new(slices).expect("n >= 1")
}

/// Run `trials` seeded random instances through both exact solvers, check
/// objective agreement, sign agreement up to global negation, optimality
/// certificates, and the heuristic upper bound.
pub fn run_verification(trials: usize, seed: u64) -> VerifyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    let mut equiv_fail = 0usize;
    let mut cert_fail = 0usize;
    let mut heur_fail = 0usize;

    for t in 0..trials {
        let d = rng.random_range(1..=3);
        let m = rng.random_range(1..=3);
        let n = rng.random_range(2..=8);
        let stack = random_stack(&mut rng, d, m, n);

        let exh = match solve_exhaustive(&stack) {
            Ok(s) => s,
            Err(e) => {
                lines.push(format!("trial {t}: exhaustive solver failed: {e}"));
                equiv_fail += 1;
                continue;
            }
        };
        let pol = match solve_polynomial(&stack) {
            Ok(s) => s,
            Err(e) => {
                lines.push(format!("trial {t}: polynomial solver failed: {e}"));
                equiv_fail += 1;
                continue;
            }
        };
        let denom = exh.objective.max(1e-30);
        if (exh.objective - pol.objective).abs() / denom > 1e-9 {
            lines.push(format!(
                "trial {t}: objectives disagree: exhaustive={} polynomial={}",
                exh.objective, pol.objective
            ));
            equiv_fail += 1;
        } else if exh.objective > 1e-9 && pol.b != exh.b && pol.b != exh.b.negated() {
            lines.push(format!(
                "trial {t}: sign patterns disagree beyond global negation: {} vs {}",
                exh.b, pol.b
            ));
            equiv_fail += 1;
        }

        for (name, sol) in [("exhaustive", &exh), ("polynomial", &pol)] {
            match verify_certificate(&stack, sol) {
                Ok(report) if report.passed => {}
                Ok(report) => {
                    lines.push(format!("trial {t}: {name} certificate failed: {report}"));
                    cert_fail += 1;
                }
                Err(e) => {
                    lines.push(format!("trial {t}: {name} certificate errored: {e}"));
                    cert_fail += 1;
                }
            }
        }

        let run = alt_heuristic(&stack, None, ALTERNATION_MAX_ITERS);
        if run.solution.objective > exh.objective + 1e-10 {
            lines.push(format!(
                "trial {t}: heuristic exceeded the exact objective: {} > {}",
                run.solution.objective, exh.objective
            ));
            heur_fail += 1;
        }
        if run
            .l1_objectives
            .windows(2)
            .any(|w| w[1] < w[0] - 1e-12)
        {
            lines.push(format!("trial {t}: heuristic objective decreased"));
            heur_fail += 1;
        }
    }

    lines.push(format!(
        "solver equivalence: {}/{} trials ok",
        trials - equiv_fail.min(trials),
        trials
    ));
    lines.push(format!(
        "optimality certificates: {} failures across {} solutions",
        cert_fail,
        2 * trials
    ));
    lines.push(format!(
        "heuristic bound and monotonicity: {} failures across {} trials",
        heur_fail, trials
    ));
    VerifyOutcome {
        passed: equiv_fail == 0 && cert_fail == 0 && heur_fail == 0,
        lines,
    }
}
