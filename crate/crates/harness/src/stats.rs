//! Paired-comparison statistics for the benchmark assertions.

/// One-sided sign-test tail: `P(W >= wins)` for `W ~ Binomial(trials, 1/2)`.
pub fn sign_test_p_greater(wins: usize, trials: usize) -> f64 {
    if trials == 0 || wins == 0 {
        return 1.0;
    }
    if wins > trials {
        return 0.0;
    }
    let n = trials;
    let mut pmf = 0.5f64.powi(n as i32);
    let mut tail = 0.0;
    for k in 0..=n {
        if k >= wins {
            tail += pmf;
        }
        if k < n {
            pmf *= (n - k) as f64 / (k + 1) as f64;
        }
    }
    tail.min(1.0)
}

/// Outcome of comparing paired samples `a` and `b` entrywise: `wins` counts
/// `a < b`, ties are dropped, and `p_value` is the one-sided sign-test tail
/// for the hypothesis that `a` is systematically smaller.
#[derive(Clone, Debug, PartialEq)]
pub struct PairedComparison {
    pub wins: usize,
    pub losses: usize,
    pub ties: usize,
    pub p_value: f64,
}

pub fn paired_sign_test(a: &[f64], b: &[f64]) -> PairedComparison {
    assert_eq!(a.len(), b.len(), "paired samples must align");
    let mut wins = 0;
    let mut losses = 0;
    let mut ties = 0;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            wins += 1;
        } else if x > y {
            losses += 1;
        } else {
            ties += 1;
        }
    }
    PairedComparison {
        wins,
        losses,
        ties,
        p_value: sign_test_p_greater(wins, wins + losses),
    }
}
