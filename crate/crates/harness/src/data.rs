//! Seeded data generation, outlier corruption, and reconstruction error.
//!
//! Every random draw comes from a ChaCha stream derived from
//! `(seed, purpose, realization[, corruption dB])`, so any single stage can
//! be regenerated independently of scheduling order and the corruption at
//! one dB level never perturbs another.

use l1tucker2_core::{Error, Matrix, MatrixStack};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::ExperimentConfig;
use crate::HarnessError;

const GENERATE_PURPOSE: u64 = 1;
const CORRUPT_PURPOSE: u64 = 2;

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn derive_rng(parts: &[u64]) -> ChaCha8Rng {
    let mut h = 0x243F_6A88_85A3_08D3u64;
    for &p in parts {
        h = splitmix64(h ^ p);
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn standard_normals(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

fn unit_gaussian_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut v = standard_normals(rng, len);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        v[0] = 1.0;
        return v;
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    v
}

/// `sigma_c^2 = 10^(dB/10)`; minus infinity maps to zero variance.
pub fn db_to_variance(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Draw one realization: unit `u`, `v`, coefficients `b_i ~ N(0, signal)`,
/// and dense noise `N(0, noise)` per entry. Returns `(clean, noisy)` stacks
/// with `A_i = b_i u v'` and `X_i = A_i + N_i`. The draw is a pure function
/// of `(config.seed, realization)`.
pub fn generate_dataset(cfg: &ExperimentConfig, realization: u64) -> (MatrixStack, MatrixStack) {
    let mut rng = derive_rng(&[cfg.seed, GENERATE_PURPOSE, realization]);
    let u = unit_gaussian_vector(&mut rng, cfg.d);
    let v = unit_gaussian_vector(&mut rng, cfg.m);
    let signal_scale = cfg.signal_variance.sqrt();
    let coeffs: Vec<f64> = standard_normals(&mut rng, cfg.n)
        .into_iter()
        .map(|z| signal_scale * z)
        .collect();
    let noise_scale = cfg.noise_variance.sqrt();

    let mut clean = Vec::with_capacity(cfg.n);
    let mut noisy = Vec::with_capacity(cfg.n);
    for &b in &coeffs {
        let mut a = Vec::with_capacity(cfg.d * cfg.m);
        for &ur in &u {
            for &vc in &v {
                a.push(b * ur * vc);
            }
        }
        let noise = standard_normals(&mut rng, cfg.d * cfg.m);
        let x: Vec<f64> = a
            .iter()
            .zip(&noise)
            .map(|(&s, &e)| s + noise_scale * e)
            .collect();
        clean.push(Matrix::new(cfg.d, cfg.m, a).expect("finite by construction"));
        noisy.push(Matrix::new(cfg.d, cfg.m, x).expect("finite by construction"));
    }
    (
        MatrixStack::new(clean).expect("n >= 1"),
        MatrixStack::new(noisy).expect("n >= 1"),
    )
}

/// Corrupt `corrupt_entries` positions in each of `corrupt_matrices` slices
/// (both drawn uniformly without replacement) with additive
/// `N(0, 10^(dB/10))` noise. Deterministic in
/// `(config.seed, realization, sigma_c_db)`.
pub fn corrupt(
    noisy: &MatrixStack,
    cfg: &ExperimentConfig,
    realization: u64,
    sigma_c_db: f64,
) -> Result<MatrixStack, HarnessError> {
    let d = noisy.d();
    let m = noisy.m();
    let n = noisy.len();
    if cfg.corrupt_matrices > n {
        return Err(HarnessError::Config(format!(
            "corrupt_matrices = {} exceeds the stack size {n}",
            cfg.corrupt_matrices
        )));
    }
    if cfg.corrupt_entries > d * m {
        return Err(HarnessError::Config(format!(
            "corrupt_entries = {} exceeds the slice size {}",
            cfg.corrupt_entries,
            d * m
        )));
    }
    let sigma = db_to_variance(sigma_c_db).sqrt();
    let mut rng = derive_rng(&[cfg.seed, CORRUPT_PURPOSE, realization, sigma_c_db.to_bits()]);
    let mut slices: Vec<Matrix> = noisy.slices().to_vec();
    let chosen = rand::seq::index::sample(&mut rng, n, cfg.corrupt_matrices);
    for slice_idx in chosen.iter() {
        let positions = rand::seq::index::sample(&mut rng, d * m, cfg.corrupt_entries);
        let mut data = slices[slice_idx].data().to_vec();
        for pos in positions.iter() {
            let z: f64 = rng.sample(StandardNormal);
            data[pos] += sigma * z;
        }
        slices[slice_idx] = Matrix::new(d, m, data).map_err(HarnessError::Core)?;
    }
    MatrixStack::new(slices).map_err(HarnessError::Core)
}

/// Per-realization reconstruction error `sum_i ||A_i - Ahat_i||_F^2`.
pub fn mse(clean: &MatrixStack, reconstructed: &MatrixStack) -> Result<f64, Error> {
    if clean.d() != reconstructed.d()
        || clean.m() != reconstructed.m()
        || clean.len() != reconstructed.len()
    {
        return Err(Error::DimensionMismatch {
            context: "stacks must share shape for the reconstruction error",
        });
    }
    Ok(clean
        .slices()
        .iter()
        .zip(reconstructed.slices())
        .map(|(a, b)| {
            a.data()
                .iter()
                .zip(b.data())
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> ExperimentConfig {
        ExperimentConfig {
            d: 4,
            m: 5,
            n: 6,
            signal_variance: 49.0,
            noise_variance: 1.0,
            corrupt_entries: 3,
            corrupt_matrices: 2,
            corruption_db_list: vec![6.0],
            realizations: 1,
            seed: 77,
            methods: vec![l1tucker2_core::Method::Exhaustive],
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let cfg = small_cfg();
        let (c1, n1) = generate_dataset(&cfg, 3);
        let (c2, n2) = generate_dataset(&cfg, 3);
        assert_eq!(c1, c2);
        assert_eq!(n1, n2);
        let (_, other) = generate_dataset(&cfg, 4);
        assert_ne!(n1, other);
    }

    #[test]
    fn zero_noise_gives_exact_rank_one_data() {
        let mut cfg = small_cfg();
        cfg.noise_variance = 0.0;
        let (clean, noisy) = generate_dataset(&cfg, 0);
        assert_eq!(clean, noisy);
        // The vectorized stack has numerical rank 1.
        let svd = l1tucker2_core::thin_svd(&noisy.stacked_columns()).unwrap();
        assert_eq!(svd.rho, 1);
    }

    #[test]
    fn zero_signal_gives_zero_clean_slices() {
        let mut cfg = small_cfg();
        cfg.signal_variance = 0.0;
        let (clean, _) = generate_dataset(&cfg, 0);
        for s in clean.slices() {
            assert!(s.is_zero());
        }
    }

    #[test]
    fn coefficient_variance_matches_target() {
        // Sample variance of the b_i draws over 10^4 realizations within 5%.
        let cfg = small_cfg();
        let mut sum = 0.0f64;
        let mut sum_sq = 0.0f64;
        let mut count = 0usize;
        for r in 0..10_000u64 {
            let (clean, _) = generate_dataset(&cfg, r);
            // Recover b_i = +/- ||A_i||_F; the sign is irrelevant for the
            // second moment.
            for s in clean.slices() {
                let b = s.frobenius_norm();
                sum += b;
                sum_sq += b * b;
                count += 1;
            }
        }
        let mean_sq = sum_sq / count as f64;
        assert!(
            (mean_sq - cfg.signal_variance).abs() < 0.05 * cfg.signal_variance,
            "second moment {mean_sq}"
        );
    }

    #[test]
    fn corruption_touches_exactly_the_configured_entries() {
        let cfg = ExperimentConfig::default();
        let (_, noisy) = generate_dataset(&cfg, 0);
        let corrupted = corrupt(&noisy, &cfg, 0, 22.0).unwrap();
        let mut diff = 0usize;
        let mut touched_slices = 0usize;
        for (a, b) in noisy.slices().iter().zip(corrupted.slices()) {
            let changed = a
                .data()
                .iter()
                .zip(b.data())
                .filter(|(x, y)| x != y)
                .count();
            if changed > 0 {
                touched_slices += 1;
            }
            diff += changed;
        }
        assert_eq!(diff, 60);
        assert_eq!(touched_slices, 2);
    }

    #[test]
    fn corruption_with_zero_variance_is_identity() {
        let cfg = small_cfg();
        let (_, noisy) = generate_dataset(&cfg, 1);
        let corrupted = corrupt(&noisy, &cfg, 1, f64::NEG_INFINITY).unwrap();
        assert_eq!(noisy, corrupted);
    }

    #[test]
    fn corruption_with_no_matrices_is_identity() {
        let mut cfg = small_cfg();
        cfg.corrupt_matrices = 0;
        let (_, noisy) = generate_dataset(&cfg, 1);
        let corrupted = corrupt(&noisy, &cfg, 1, 22.0).unwrap();
        assert_eq!(noisy, corrupted);
    }

    #[test]
    fn corruption_is_deterministic_per_db() {
        let cfg = small_cfg();
        let (_, noisy) = generate_dataset(&cfg, 2);
        let a = corrupt(&noisy, &cfg, 2, 14.0).unwrap();
        let b = corrupt(&noisy, &cfg, 2, 14.0).unwrap();
        assert_eq!(a, b);
        let c = corrupt(&noisy, &cfg, 2, 16.0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn corrupt_rejects_oversized_requests() {
        let mut cfg = small_cfg();
        cfg.corrupt_entries = cfg.d * cfg.m + 1;
        let (_, noisy) = generate_dataset(&small_cfg(), 0);
        assert!(corrupt(&noisy, &cfg, 0, 6.0).is_err());
    }

    #[test]
    fn db_conversion_examples() {
        assert!((db_to_variance(0.0) - 1.0).abs() < 1e-12);
        assert!((db_to_variance(10.0) - 10.0).abs() < 1e-12);
        assert!((db_to_variance(22.0) - 158.489319246111).abs() < 1e-9);
        assert_eq!(db_to_variance(f64::NEG_INFINITY), 0.0);
    }

    #[test]
    fn mse_examples() {
        let cfg = small_cfg();
        let (clean, _) = generate_dataset(&cfg, 0);
        assert_eq!(mse(&clean, &clean).unwrap(), 0.0);

        // All-zero reconstruction leaves the full signal energy.
        let zeros = MatrixStack::new(
            (0..cfg.n).map(|_| Matrix::zeros(cfg.d, cfg.m)).collect(),
        )
        .unwrap();
        let total: f64 = clean.slices().iter().map(|s| {
            let f = s.frobenius_norm();
            f * f
        }).sum();
        assert!((mse(&clean, &zeros).unwrap() - total).abs() < 1e-9 * total.max(1.0));

        // 1x1 arithmetic case.
        let a = MatrixStack::new(vec![Matrix::new(1, 1, vec![2.0]).unwrap()]).unwrap();
        let b = MatrixStack::new(vec![Matrix::new(1, 1, vec![0.5]).unwrap()]).unwrap();
        assert!((mse(&a, &b).unwrap() - 2.25).abs() < 1e-15);
    }

    #[test]
    fn mse_rejects_shape_mismatch() {
        let a = MatrixStack::new(vec![Matrix::identity(2)]).unwrap();
        let b = MatrixStack::new(vec![Matrix::identity(3)]).unwrap();
        assert!(mse(&a, &b).is_err());
    }
}
