//! Experiment configuration and its flat key=value file format.

use l1tucker2_core::Method;

use crate::HarnessError;

/// Parameters of one Monte Carlo sweep.
///
/// The default reproduces the benchmark setup at CI scale: fourteen 20x20
/// slices of a rank-1 signal with coefficient variance 49 plus unit AWGN,
/// 30 entries corrupted in 2 slices, corruption variance 6..22 dB, and 100
/// realizations per point (1000 matches the full-size study).
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub d: usize,
    pub m: usize,
    pub n: usize,
    /// Variance of the rank-1 coefficients b_i.
    pub signal_variance: f64,
    /// Entrywise variance of the dense Gaussian noise.
    pub noise_variance: f64,
    /// Corrupted entries per corrupted slice.
    pub corrupt_entries: usize,
    /// Number of corrupted slices.
    pub corrupt_matrices: usize,
    /// Corruption variances in dB; the linear variance is 10^(dB/10).
    pub corruption_db_list: Vec<f64>,
    pub realizations: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            d: 20,
            m: 20,
            n: 14,
            signal_variance: 49.0,
            noise_variance: 1.0,
            corrupt_entries: 30,
            corrupt_matrices: 2,
            corruption_db_list: vec![6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0, 22.0],
            realizations: 100,
            seed: 0,
            methods: vec![
                Method::Exhaustive,
                Method::Hosvd,
                Method::Hooi,
                Method::Glram,
                Method::Pca,
                Method::L1Pca,
                Method::AltHeuristic,
            ],
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |msg: String| Err(HarnessError::Config(msg));
        if self.d == 0 || self.m == 0 || self.n == 0 {
            return fail("d, m and n must be positive".into());
        }
        if self.signal_variance < 0.0 || self.noise_variance < 0.0 {
            return fail("variances must be nonnegative".into());
        }
        if self.corrupt_matrices > self.n {
            return fail(format!(
                "corrupt_matrices = {} exceeds n = {}",
                self.corrupt_matrices, self.n
            ));
        }
        if self.corrupt_entries > self.d * self.m {
            return fail(format!(
                "corrupt_entries = {} exceeds slice size {}",
                self.corrupt_entries,
                self.d * self.m
            ));
        }
        if self.realizations == 0 {
            return fail("realizations must be at least 1".into());
        }
        if self.corruption_db_list.is_empty() {
            return fail("corruption_db_list must not be empty".into());
        }
        if !self.corruption_db_list.iter().all(|x| x.is_finite() || *x == f64::NEG_INFINITY) {
            return fail("corruption_db_list entries must be finite or -inf".into());
        }
        if self.methods.is_empty() {
            return fail("methods must not be empty".into());
        }
        Ok(())
    }

    /// Parse the flat `key=value` config format. Unset keys keep their
    /// default; `#` starts a comment; lists are comma separated.
    pub fn from_key_values(text: &str) -> Result<Self, HarnessError> {
        let mut cfg = ExperimentConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                HarnessError::Config(format!("line {}: expected key=value", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |what: &str| {
                HarnessError::Config(format!("line {}: invalid {what}: {value}", lineno + 1))
            };
            match key {
                "d" => cfg.d = value.parse().map_err(|_| bad("integer"))?,
                "m" => cfg.m = value.parse().map_err(|_| bad("integer"))?,
                "n" => cfg.n = value.parse().map_err(|_| bad("integer"))?,
                "signal_var" => cfg.signal_variance = value.parse().map_err(|_| bad("real"))?,
                "noise_var" => cfg.noise_variance = value.parse().map_err(|_| bad("real"))?,
                "corrupt_entries" => {
                    cfg.corrupt_entries = value.parse().map_err(|_| bad("integer"))?
                }
                "corrupt_matrices" => {
                    cfg.corrupt_matrices = value.parse().map_err(|_| bad("integer"))?
                }
                "corruption_db_list" => {
                    cfg.corruption_db_list = value
                        .split(',')
                        .map(|tok| tok.trim().parse::<f64>().map_err(|_| bad("real list")))
                        .collect::<Result<_, _>>()?;
                }
                "realizations" => cfg.realizations = value.parse().map_err(|_| bad("integer"))?,
                "seed" => cfg.seed = value.parse().map_err(|_| bad("integer"))?,
                "methods" => {
                    cfg.methods = value
                        .split(',')
                        .map(|tok| {
                            tok.trim().parse::<Method>().map_err(|_| bad("method list"))
                        })
                        .collect::<Result<_, _>>()?;
                }
                other => {
                    return Err(HarnessError::Config(format!(
                        "line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert!(ExperimentConfig::default().validate().is_ok());
    }

    #[test]
    fn parses_overrides_and_comments() {
        let text = "\
# benchmark at reduced scale
d = 4
m=3
n = 5
corrupt_entries = 2
corrupt_matrices = 1
corruption_db_list = 6, 22
realizations = 3
seed = 9
methods = exhaustive, pca
";
        let cfg = ExperimentConfig::from_key_values(text).unwrap();
        assert_eq!(cfg.d, 4);
        assert_eq!(cfg.m, 3);
        assert_eq!(cfg.n, 5);
        assert_eq!(cfg.corruption_db_list, vec![6.0, 22.0]);
        assert_eq!(cfg.methods, vec![Method::Exhaustive, Method::Pca]);
        assert_eq!(cfg.seed, 9);
        // Untouched keys keep their defaults.
        assert_eq!(cfg.signal_variance, 49.0);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(ExperimentConfig::from_key_values("bogus = 1").is_err());
        assert!(ExperimentConfig::from_key_values("d = x").is_err());
        assert!(ExperimentConfig::from_key_values("methods = nope").is_err());
    }

    #[test]
    fn rejects_inconsistent_shapes() {
        let mut cfg = ExperimentConfig::default();
        cfg.corrupt_matrices = 15;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::default();
        cfg.corrupt_entries = 401;
        assert!(cfg.validate().is_err());
    }
}
