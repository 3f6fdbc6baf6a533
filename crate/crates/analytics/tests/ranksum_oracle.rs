use fakeyou_analytics::ranksum::{ranksum, ranksum_using, Method};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Mid-ranks by direct counting: rank = #less + (#equal + 1) / 2.
fn oracle_ranks(pooled: &[f64]) -> Vec<f64> {
    pooled
        .iter()
        .map(|&v| {
            let less = pooled.iter().filter(|&&w| w < v).count() as f64;
            let equal = pooled.iter().filter(|&&w| w == v).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Two-sided p by visiting every way to assign |a| of the pooled ranks to
/// the first sample.
fn oracle_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = oracle_ranks(&pooled);
    let n = pooled.len();
    let observed: f64 = ranks[..a.len()].iter().sum();
    let (mut total, mut le, mut ge) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let sum: f64 = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| ranks[i]).sum();
        total += 1;
        if sum <= observed + 1e-9 {
            le += 1;
        }
        if sum >= observed - 1e-9 {
            ge += 1;
        }
    }
    (2.0 * le.min(ge) as f64 / total as f64).min(1.0)
}

/// Word-count-like integer data with plenty of ties.
fn sample(rng: &mut StdRng, n: usize, shift: u32) -> Vec<f64> {
    (0..n)
        .map(|_| f64::from(rng.random_range(1..=12u32) + shift))
        .collect()
}

#[test]
fn fixed_case_matches_enumeration() {
    let p = ranksum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap().p_two_sided;
    assert_eq!(oracle_p(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]), 0.1);
    assert_eq!(p, 0.1);
}

#[test]
fn exact_mode_equals_enumeration_up_to_twelve_values() {
    let mut rng = StdRng::seed_from_u64(2024);
    for case in 0..400 {
        let na = rng.random_range(1..=6);
        let nb = rng.random_range(1..=12 - na);
        let a = sample(&mut rng, na, 0);
        let shift = rng.random_range(0..4);
        let b = sample(&mut rng, nb, shift);
        let r = ranksum(&a, &b).unwrap();
        assert_eq!(r.method, Method::ExactPermutation);
        assert_eq!(r.p_two_sided, oracle_p(&a, &b), "case {case}: {a:?} vs {b:?}");
    }
}

#[test]
fn exact_mode_equals_enumeration_equal_sizes_to_eight() {
    let mut rng = StdRng::seed_from_u64(7);
    for case in 0..100 {
        let n = rng.random_range(1..=8);
        let a = sample(&mut rng, n, 0);
        let shift = rng.random_range(0..4);
        let b = sample(&mut rng, n, shift);
        let exact = ranksum(&a, &b).unwrap();
        let oracle = oracle_p(&a, &b);
        assert!(
            (exact.p_two_sided - oracle).abs() <= 4.0 * f64::EPSILON,
            "case {case}: {} vs {oracle}",
            exact.p_two_sided
        );
    }
}

#[test]
fn threshold_selects_method() {
    let eight: Vec<f64> = (0..8).map(f64::from).collect();
    let nine: Vec<f64> = (0..9).map(f64::from).collect();
    assert_eq!(ranksum(&eight, &eight).unwrap().method, Method::ExactPermutation);
    assert_eq!(ranksum(&nine, &eight).unwrap().method, Method::NormalApprox);
    let fifteen: Vec<f64> = (0..15).map(f64::from).collect();
    let sixteen: Vec<f64> = (0..16).map(f64::from).collect();
    assert_eq!(ranksum(&[1.0], &fifteen).unwrap().method, Method::ExactPermutation);
    assert_eq!(ranksum(&[1.0], &sixteen).unwrap().method, Method::NormalApprox);
}

#[test]
fn forced_normal_approximation_on_moderate_samples() {
    // With 8 against 8 and no ties the two modes agree closely.
    let a: Vec<f64> = (1..=8).map(|i| f64::from(i * 2)).collect();
    let b: Vec<f64> = (1..=8).map(|i| f64::from(i * 2 + 5)).collect();
    let exact = ranksum_using(&a, &b, Method::ExactPermutation).unwrap();
    let approx = ranksum_using(&a, &b, Method::NormalApprox).unwrap();
    assert!((exact.p_two_sided - approx.p_two_sided).abs() < 0.01);
    assert_eq!(exact.z, approx.z);
}

proptest! {
    #[test]
    fn swapping_samples_keeps_p(
        a in proptest::collection::vec(0u8..10, 1..12),
        b in proptest::collection::vec(0u8..10, 1..12),
    ) {
        let a: Vec<f64> = a.into_iter().map(f64::from).collect();
        let b: Vec<f64> = b.into_iter().map(f64::from).collect();
        let ab = ranksum(&a, &b).unwrap();
        let ba = ranksum(&b, &a).unwrap();
        prop_assert!((ab.p_two_sided - ba.p_two_sided).abs() <= 1e-12);
        prop_assert!((ab.z + ba.z).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab.p_two_sided));
    }
}
