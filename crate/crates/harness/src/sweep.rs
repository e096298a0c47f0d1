//! Paired Monte Carlo MSE sweeps across decomposition methods.
//!
//! Within one realization every method and every corruption level consumes
//! byte-identical inputs: the base data depends only on
//! `(seed, realization)` and the corruption only additionally on the dB
//! level, so curves are paired and per-realization differences are
//! meaningful. Realizations run in parallel; accumulation happens in
//! realization order, keeping the emitted CSV bytes independent of the
//! thread schedule.

use l1tucker2_core::{
    alt_heuristic, glram_rank1, hooi_rank1, hosvd_rank1, objective, pca_rank1_vectorized,
    reconstruct, sign_pattern, solve_auto, solve_exhaustive, solve_polynomial, MatrixStack,
    Method, Rank1Basis, Rank1Solution, ALTERNATION_MAX_ITERS, ALTERNATION_TOL,
};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::data::{corrupt, generate_dataset, mse};
use crate::HarnessError;

/// One point of a benchmark curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub method: Method,
    pub sigma_c_db: f64,
    pub mean_mse: f64,
    pub realizations: usize,
}

/// Full per-realization sweep results.
#[derive(Clone, Debug)]
pub struct SweepDetail {
    pub methods: Vec<Method>,
    pub db_list: Vec<f64>,
    pub realizations: usize,
    /// Indexed as `mse[db][method][realization]`.
    mse: Vec<Vec<Vec<f64>>>,
}

impl SweepDetail {
    /// Per-realization errors of one curve point.
    pub fn series(&self, method: Method, sigma_c_db: f64) -> Option<&[f64]> {
        let mi = self.methods.iter().position(|&m| m == method)?;
        let di = self.db_list.iter().position(|&d| d == sigma_c_db)?;
        Some(&self.mse[di][mi])
    }

    pub fn mean(&self, method: Method, sigma_c_db: f64) -> Option<f64> {
        let series = self.series(method, sigma_c_db)?;
        Some(series.iter().sum::<f64>() / series.len() as f64)
    }

    /// Records sorted by `(method tag, sigma_c_db)`.
    pub fn records(&self) -> Vec<SweepRecord> {
        let mut out = Vec::with_capacity(self.methods.len() * self.db_list.len());
        for &method in &self.methods {
            for &db in &self.db_list {
                out.push(SweepRecord {
                    method,
                    sigma_c_db: db,
                    mean_mse: self.mean(method, db).expect("indices exist"),
                    realizations: self.realizations,
                });
            }
        }
        out.sort_by(|a, b| {
            a.method
                .as_tag()
                .cmp(b.method.as_tag())
                .then(a.sigma_c_db.total_cmp(&b.sigma_c_db))
        });
        out
    }
}

/// A method's solution plus the reconstruction basis its family uses.
#[derive(Clone, Debug)]
pub struct MethodOutput {
    pub solution: Rank1Solution,
    pub basis: Rank1Basis,
    /// True for the PCA family, whose solution lives on the vectorized
    /// (`DM x 1`) view of the stack.
    pub vectorized_family: bool,
}

fn tucker2_output(
    stack: &MatrixStack,
    u: Vec<f64>,
    v: Vec<f64>,
    method: Method,
    candidates_evaluated: usize,
) -> Result<MethodOutput, HarnessError> {
    let b = sign_pattern(stack, &u, &v)?;
    let obj = objective(stack, &u, &v)?;
    Ok(MethodOutput {
        solution: Rank1Solution {
            u: u.clone(),
            v: v.clone(),
            b,
            objective: obj,
            method,
            candidates_evaluated,
            fallback: false,
        },
        basis: Rank1Basis::Tucker2 { u, v },
        vectorized_family: false,
    })
}

fn vectorized_output(solution: Rank1Solution) -> Result<MethodOutput, HarnessError> {
    let q = solution.u.clone();
    Ok(MethodOutput {
        solution,
        basis: Rank1Basis::Vectorized { q },
        vectorized_family: true,
    })
}

/// Run one method on a stack and package its reconstruction basis. PCA-type
/// methods are solved on the vectorized view; their reported `u` is the
/// length-`DM` component and `v` is the trivial `[1]`.
pub fn solve_with_method(stack: &MatrixStack, method: Method) -> Result<MethodOutput, HarnessError> {
    match method {
        Method::Exhaustive => {
            let sol = solve_exhaustive(stack)?;
            tucker2_from_solution(sol)
        }
        Method::Polynomial => {
            let sol = solve_polynomial(stack)?;
            tucker2_from_solution(sol)
        }
        Method::Auto => {
            let sol = solve_auto(stack)?;
            tucker2_from_solution(sol)
        }
        Method::Hosvd => {
            let (u, v) = hosvd_rank1(stack);
            tucker2_output(stack, u, v, Method::Hosvd, 0)
        }
        Method::Hooi => {
            let sol = hooi_rank1(stack, ALTERNATION_MAX_ITERS, ALTERNATION_TOL, None);
            let iters = sol.l2_objectives.len() - 1;
            tucker2_output(stack, sol.u, sol.v, Method::Hooi, iters)
        }
        Method::Glram => {
            let sol = glram_rank1(stack, ALTERNATION_MAX_ITERS, ALTERNATION_TOL);
            let iters = sol.l2_objectives.len() - 1;
            tucker2_output(stack, sol.u, sol.v, Method::Glram, iters)
        }
        Method::AltHeuristic => {
            let run = alt_heuristic(stack, None, ALTERNATION_MAX_ITERS);
            tucker2_from_solution(run.solution)
        }
        Method::Pca => {
            let q = pca_rank1_vectorized(stack);
            let vstack = stack.vectorized();
            let b = sign_pattern(&vstack, &q, &[1.0])?;
            let obj = objective(&vstack, &q, &[1.0])?;
            vectorized_output(Rank1Solution {
                u: q,
                v: vec![1.0],
                b,
                objective: obj,
                method: Method::Pca,
                candidates_evaluated: 0,
                fallback: false,
            })
        }
        Method::L1Pca => {
            // Exact L1-PCA is the M = 1 problem on the vectorized view.
            let sol = solve_auto(&stack.vectorized())?;
            vectorized_output(Rank1Solution {
                method: Method::L1Pca,
                ..sol
            })
        }
    }
}

fn tucker2_from_solution(sol: Rank1Solution) -> Result<MethodOutput, HarnessError> {
    let basis = Rank1Basis::Tucker2 {
        u: sol.u.clone(),
        v: sol.v.clone(),
    };
    Ok(MethodOutput {
        solution: sol,
        basis,
        vectorized_family: false,
    })
}

/// Run the full sweep, returning per-realization errors. All methods see
/// identical corrupted stacks per `(realization, dB)` pair.
pub fn run_sweep_detailed(cfg: &ExperimentConfig) -> Result<SweepDetail, HarnessError> {
    cfg.validate()?;
    let per_realization: Vec<Vec<Vec<f64>>> = (0..cfg.realizations as u64)
        .into_par_iter()
        .map(|r| -> Result<Vec<Vec<f64>>, HarnessError> {
            let (clean, noisy) = generate_dataset(cfg, r);
            let mut by_db = Vec::with_capacity(cfg.corruption_db_list.len());
            for &db in &cfg.corruption_db_list {
                let corrupted = corrupt(&noisy, cfg, r, db)?;
                let mut by_method = Vec::with_capacity(cfg.methods.len());
                for &method in &cfg.methods {
                    let out = solve_with_method(&corrupted, method)?;
                    let rec = reconstruct(&corrupted, &out.basis)?;
                    by_method.push(mse(&clean, &rec)?);
                }
                by_db.push(by_method);
            }
            Ok(by_db)
        })
        .collect::<Result<Vec<_>, _>>()?;

    // Transpose to [db][method][realization], realization-ordered.
    let mut out = vec![vec![Vec::with_capacity(cfg.realizations); cfg.methods.len()];
        cfg.corruption_db_list.len()];
    for by_db in &per_realization {
        for (di, by_method) in by_db.iter().enumerate() {
            for (mi, &value) in by_method.iter().enumerate() {
                out[di][mi].push(value);
            }
        }
    }
    Ok(SweepDetail {
        methods: cfg.methods.clone(),
        db_list: cfg.corruption_db_list.clone(),
        realizations: cfg.realizations,
        mse: out,
    })
}

/// Mean curves only.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>, HarnessError> {
    Ok(run_sweep_detailed(cfg)?.records())
}

/// CSV with header `method,sigma_c_db,mean_mse,realizations`, rows sorted by
/// `(method, sigma_c_db)`.
pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("method,sigma_c_db,mean_mse,realizations\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.method, r.sigma_c_db, r.mean_mse, r.realizations
        ));
    }
    out
}
