//! Mann-Whitney-Wilcoxon rank-sum test and small descriptive helpers.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Both samples at most this large use the exact null distribution.
pub const EXACT_MAX_SIZE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankSumResult {
    /// `U_a = R_a − n_a(n_a + 1)/2`, with `R_a` the midrank sum of sample a.
    pub u: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    pub exact: bool,
}

/// Midranks (1-based, ties averaged) of `values`, doubled so they are integers.
fn doubled_midranks(values: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0u64; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // ranks i+1 ..= j+1 averaged, doubled
        let doubled = (i + 1 + j + 1) as u64;
        for &o in &order[i..=j] {
            ranks[o] = doubled;
        }
        i = j + 1;
    }
    ranks
}

fn tie_sizes(values: &[f64]) -> Vec<usize> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mut sizes = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[i] {
            j += 1;
        }
        sizes.push(j - i + 1);
        i = j + 1;
    }
    sizes
}

/// Two-sided rank-sum test of `a` against `b`.
///
/// Exact permutation distribution (over midranks, so ties are handled) when
/// both samples have at most 20 values; otherwise the normal approximation
/// with tie correction and a 0.5 continuity correction.
pub fn rank_sum_test(a: &[f64], b: &[f64]) -> Result<RankSumResult> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Config(format!(
            "rank-sum test needs at least 2 values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if let Some(v) = a.iter().chain(b).find(|v| !v.is_finite()) {
        return Err(Error::Config(format!("sample value {v} is not finite")));
    }
    let (na, nb) = (a.len(), b.len());
    let all: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = doubled_midranks(&all);
    let doubled_ra: u64 = ranks[..na].iter().sum();
    let offset = (na * (na + 1)) as i64;
    let u = (doubled_ra as i64 - offset) as f64 / 2.0;

    if all.iter().all(|v| *v == all[0]) {
        return Ok(RankSumResult {
            u,
            p_value: 1.0,
            exact: na <= EXACT_MAX_SIZE && nb <= EXACT_MAX_SIZE,
        });
    }

    if na <= EXACT_MAX_SIZE && nb <= EXACT_MAX_SIZE {
        let p = exact_p(&ranks, na, doubled_ra);
        return Ok(RankSumResult {
            u,
            p_value: p,
            exact: true,
        });
    }

    let n = (na + nb) as f64;
    let (fa, fb) = (na as f64, nb as f64);
    let mean = fa * fb / 2.0;
    let tie_term: f64 = tie_sizes(&all)
        .into_iter()
        .map(|t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let var = fa * fb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return Ok(RankSumResult {
            u,
            p_value: 1.0,
            exact: false,
        });
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let p = (2.0 * normal.sf(z)).min(1.0);
    Ok(RankSumResult {
        u,
        p_value: p,
        exact: false,
    })
}

/// P(|2U − n_a·n_b| ≥ observed) under random relabelling of the pooled midranks.
fn exact_p(ranks: &[u64], na: usize, observed_doubled_ra: u64) -> f64 {
    let max_sum: usize = {
        let mut r: Vec<u64> = ranks.to_vec();
        r.sort_unstable_by(|x, y| y.cmp(x));
        r[..na].iter().sum::<u64>() as usize
    };
    // ways[j][s]: subsets of size j with doubled rank sum s
    let mut ways = vec![vec![0u128; max_sum + 1]; na + 1];
    ways[0][0] = 1;
    for &r in ranks {
        let r = r as usize;
        for j in (1..=na).rev() {
            for s in (r..=max_sum).rev() {
                let add = ways[j - 1][s - r];
                if add != 0 {
                    ways[j][s] += add;
                }
            }
        }
    }
    let nb = ranks.len() - na;
    let centre = (na * (na + 1) + na * nb) as i64;
    let dev = |d: i64| (d - centre).abs();
    let observed = dev(observed_doubled_ra as i64);
    let total: u128 = ways[na].iter().sum();
    let extreme: u128 = ways[na]
        .iter()
        .enumerate()
        .filter(|(s, _)| dev(*s as i64) >= observed)
        .map(|(_, c)| *c)
        .sum();
    extreme as f64 / total as f64
}

/// Arithmetic mean (`NaN` for an empty slice).
pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sample standard deviation with `n − 1` in the denominator; 0 for fewer than two values.
pub fn std_dev(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let mu = mean(v);
    (v.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
}

/// Median (average of the middle pair for even lengths, `NaN` if empty).
pub fn median(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let h = s.len() / 2;
    if s.len() % 2 == 1 {
        s[h]
    } else {
        (s[h - 1] + s[h]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separated_pairs() {
        let r = rank_sum_test(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert_eq!(r.u, 0.0);
        assert!((r.p_value - 1.0 / 3.0).abs() < 1e-15);
        assert!(r.exact);
    }

    #[test]
    fn identical_samples() {
        let r = rank_sum_test(&[5.0; 4], &[5.0; 3]).unwrap();
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn large_separated_samples() {
        let a: Vec<f64> = (1..=30).map(f64::from).collect();
        let b: Vec<f64> = (31..=60).map(f64::from).collect();
        let r = rank_sum_test(&a, &b).unwrap();
        assert!(!r.exact);
        assert!(r.p_value < 1e-3);
    }

    #[test]
    fn too_small() {
        assert!(rank_sum_test(&[1.0], &[2.0, 3.0]).is_err());
    }

    #[test]
    fn descriptive() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(mean(&[1.0, 2.0, 3.0]), 2.0);
        assert_eq!(std_dev(&[1.0, 2.0, 3.0]), 1.0);
    }
}
