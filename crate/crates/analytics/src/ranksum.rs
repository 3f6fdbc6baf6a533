//! Wilcoxon rank-sum test with mid-ranks for ties.
//!
//! Small samples get the exact permutation distribution, computed by
//! counting subsets over doubled mid-ranks (which are always integers).
//! Larger ones use the tie-corrected normal approximation with continuity
//! correction.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::AnalyticsError;

/// Exact mode applies when the smaller sample has at most this many values...
pub const EXACT_MAX_MIN_SIZE: usize = 8;
/// ...and both samples together at most this many.
pub const EXACT_MAX_TOTAL: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactPermutation,
    NormalApprox,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactPermutation => "ExactPermutation",
            Method::NormalApprox => "NormalApprox",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankSumResult {
    /// Size of the first sample.
    pub n_fake: usize,
    /// Size of the second sample.
    pub n_true: usize,
    /// Rank sum of the smaller sample, or of the first one when sizes match.
    pub rank_sum_smaller: f64,
    /// Standardized rank sum of the first sample, tie-corrected and
    /// continuity-corrected. Positive when the first sample ranks higher.
    pub z: f64,
    pub p_two_sided: f64,
    pub mean_fake: f64,
    pub mean_true: f64,
    pub method: Method,
}

/// Picks the method from the sample sizes.
pub fn ranksum(a: &[f64], b: &[f64]) -> Result<RankSumResult, AnalyticsError> {
    let method = if a.len().min(b.len()) <= EXACT_MAX_MIN_SIZE && a.len() + b.len() <= EXACT_MAX_TOTAL
    {
        Method::ExactPermutation
    } else {
        Method::NormalApprox
    };
    ranksum_using(a, b, method)
}

/// Runs the test with a fixed method regardless of sample size.
pub fn ranksum_using(a: &[f64], b: &[f64], method: Method) -> Result<RankSumResult, AnalyticsError> {
    if a.is_empty() || b.is_empty() {
        return Err(AnalyticsError::EmptySample);
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(AnalyticsError::NonFiniteSample);
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (doubled, tie_term) = doubled_midranks(&pooled);
    let (na, nb) = (a.len(), b.len());
    let n = (na + nb) as f64;

    let sum2_a: u64 = doubled[..na].iter().sum();
    let sum2_b: u64 = doubled[na..].iter().sum();
    let w_a = sum2_a as f64 / 2.0;
    let rank_sum_smaller = if nb < na { sum2_b as f64 / 2.0 } else { w_a };

    let expected = na as f64 * (n + 1.0) / 2.0;
    let variance = if n > 1.0 {
        na as f64 * nb as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)))
    } else {
        0.0
    };
    let z = continuity_z(w_a - expected, variance);

    let p_two_sided = match method {
        Method::ExactPermutation => exact_p(&doubled, na, sum2_a),
        Method::NormalApprox => {
            let tail = Normal::standard().sf(z.abs());
            (2.0 * tail).min(1.0)
        }
    };

    Ok(RankSumResult {
        n_fake: na,
        n_true: nb,
        rank_sum_smaller,
        z,
        p_two_sided,
        mean_fake: mean(a),
        mean_true: mean(b),
        method,
    })
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn continuity_z(deviation: f64, variance: f64) -> f64 {
    if variance <= 0.0 || deviation.abs() <= 0.5 {
        return 0.0;
    }
    (deviation - 0.5 * deviation.signum()) / variance.sqrt()
}

/// Twice the mid-rank of every value (so ties stay integral), in input
/// order, plus the tie term Σ(t³ − t) over tie groups.
pub(crate) fn doubled_midranks(values: &[f64]) -> (Vec<u64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut doubled = vec![0; values.len()];
    let mut tie_term = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && values[order[end + 1]] == values[order[start]] {
            end += 1;
        }
        // 1-based positions start+1..=end+1; their mean doubled
        let rank2 = (start + 1 + end + 1) as u64;
        for &i in &order[start..=end] {
            doubled[i] = rank2;
        }
        let t = (end - start + 1) as f64;
        tie_term += t * t * t - t;
        start = end + 1;
    }
    (doubled, tie_term)
}

/// Two-sided exact p: twice the smaller tail of the permutation
/// distribution of the first sample's doubled rank sum, capped at 1.
fn exact_p(doubled: &[u64], na: usize, observed: u64) -> f64 {
    let max_sum: u64 = {
        let mut sorted = doubled.to_vec();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        sorted[..na].iter().sum()
    };
    let width = max_sum as usize + 1;
    // ways[k][s]: subsets of size k with doubled-rank sum s
    let mut ways = vec![vec![0f64; width]; na + 1];
    ways[0][0] = 1.0;
    for &r in doubled {
        let r = r as usize;
        for k in (1..=na).rev() {
            let (lower, upper) = ways.split_at_mut(k);
            let (prev, cur) = (&lower[k - 1], &mut upper[0]);
            for s in (r..width).rev() {
                cur[s] += prev[s - r];
            }
        }
    }
    let dist = &ways[na];
    let total: f64 = dist.iter().sum();
    let observed = observed as usize;
    let lower: f64 = dist[..=observed].iter().sum();
    let upper: f64 = dist[observed..].iter().sum();
    (2.0 * lower.min(upper) / total).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separated_samples() {
        let r = ranksum(&[4.0, 5.0, 6.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r.method, Method::ExactPermutation);
        assert_eq!(r.p_two_sided, 0.1);
        assert_eq!(r.rank_sum_smaller, 15.0);
        assert!(r.z > 0.0);
        assert_eq!(r.mean_fake, 5.0);
        assert_eq!(r.mean_true, 2.0);
    }

    #[test]
    fn all_tied() {
        let r = ranksum(&[3.0, 3.0], &[3.0, 3.0]).unwrap();
        assert_eq!(r.p_two_sided, 1.0);
        assert_eq!(r.z, 0.0);
        let r = ranksum_using(&[3.0, 3.0], &[3.0, 3.0], Method::NormalApprox).unwrap();
        assert_eq!(r.p_two_sided, 1.0);
    }

    #[test]
    fn identical_samples() {
        let r = ranksum(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r.p_two_sided, 1.0);
    }

    #[test]
    fn midranks() {
        let (d, ties) = doubled_midranks(&[10.0, 20.0, 10.0, 30.0, 10.0]);
        assert_eq!(d, vec![4, 8, 4, 10, 4]);
        assert_eq!(ties, 24.0);
    }

    #[test]
    fn smaller_sample_rank_sum() {
        let r = ranksum(&[1.0, 2.0, 3.0, 4.0], &[5.0]).unwrap();
        assert_eq!(r.rank_sum_smaller, 5.0);
        let r = ranksum(&[5.0], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(r.rank_sum_smaller, 5.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(ranksum(&[], &[1.0]), Err(AnalyticsError::EmptySample)));
        assert!(matches!(
            ranksum(&[f64::NAN], &[1.0]),
            Err(AnalyticsError::NonFiniteSample)
        ));
    }

    #[test]
    fn large_samples_use_normal_approximation() {
        let a: Vec<f64> = (0..40).map(|i| (i % 7) as f64 + 2.0).collect();
        let b: Vec<f64> = (0..30).map(|i| (i % 5) as f64).collect();
        let r = ranksum(&a, &b).unwrap();
        assert_eq!(r.method, Method::NormalApprox);
        assert!(r.p_two_sided < 0.001);
        assert!(r.z > 3.0);
    }
}
