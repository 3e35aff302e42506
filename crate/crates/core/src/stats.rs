//! Descriptive statistics, the Wilcoxon rank-sum test and population
//! diversity.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::algorithms::RunRecord;
use crate::error::{Error, Result};
use crate::problems::Problem;

/// Two-sided significance level used for win/tie/loss marks.
pub const ALPHA: f64 = 0.05;

/// Largest combined sample size handled by exact enumeration.
pub const EXACT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator); zero when `n == 1`.
    pub std: f64,
    pub median: f64,
    pub best: f64,
    pub worst: f64,
}

pub fn summarize(sample: &[f64]) -> Result<SampleSummary> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if let Some(&bad) = sample.iter().find(|v| v.is_nan()) {
        return Err(Error::NonFinite {
            context: "sample",
            value: bad,
        });
    }
    let n = sample.len();
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    Ok(SampleSummary {
        n,
        mean,
        std,
        median,
        best: sorted[0],
        worst: sorted[n - 1],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestMethod {
    RanksumExact,
    RanksumNormal,
}

/// Which sample has the lower mean rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    FirstLower,
    SecondLower,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    /// Mann-Whitney `U` of the first sample.
    pub statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
    pub direction: Direction,
}

/// Midranks (1-based) of the pooled sample, plus the tie-group sizes.
fn midranks(pooled: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        let rank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = rank;
        }
        if end - start > 1 {
            ties.push(end - start);
        }
        start = end;
    }
    (ranks, ties)
}

struct RankData {
    n_a: usize,
    n_b: usize,
    u: f64,
    ties: Vec<usize>,
}

fn rank_data(a: &[f64], b: &[f64]) -> Result<RankData> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    if let Some(&bad) = a.iter().chain(b).find(|v| v.is_nan()) {
        return Err(Error::NonFinite {
            context: "rank-sum sample",
            value: bad,
        });
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let n_a = a.len();
    let rank_sum_a: f64 = ranks[..n_a].iter().sum();
    Ok(RankData {
        n_a,
        n_b: b.len(),
        u: rank_sum_a - (n_a * (n_a + 1)) as f64 / 2.0,
        ties,
    })
}

fn direction(d: &RankData) -> Direction {
    let centre = (d.n_a * d.n_b) as f64 / 2.0;
    if d.u < centre {
        Direction::FirstLower
    } else if d.u > centre {
        Direction::SecondLower
    } else {
        Direction::Neither
    }
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test. Exact when the samples
/// are tie-free and `n_a + n_b <= 12`, normal approximation otherwise.
pub fn ranksum(a: &[f64], b: &[f64]) -> Result<TestResult> {
    let d = rank_data(a, b)?;
    if d.ties.is_empty() && d.n_a + d.n_b <= EXACT_LIMIT {
        Ok(exact_from(&d))
    } else {
        Ok(normal_from(&d))
    }
}

/// Exact null distribution of the rank sum. Errors on ties or samples too
/// large to enumerate.
pub fn ranksum_exact(a: &[f64], b: &[f64]) -> Result<TestResult> {
    let d = rank_data(a, b)?;
    if !d.ties.is_empty() {
        return Err(Error::Statistics(
            "exact rank-sum needs tie-free samples".into(),
        ));
    }
    if d.n_a + d.n_b > 2 * EXACT_LIMIT {
        return Err(Error::Statistics(format!(
            "exact rank-sum limited to {} observations",
            2 * EXACT_LIMIT
        )));
    }
    Ok(exact_from(&d))
}

/// Normal approximation with tie and continuity corrections.
pub fn ranksum_normal(a: &[f64], b: &[f64]) -> Result<TestResult> {
    Ok(normal_from(&rank_data(a, b)?))
}

fn exact_from(d: &RankData) -> TestResult {
    let (n_a, n) = (d.n_a, d.n_a + d.n_b);
    let max_sum = n * (n + 1) / 2;
    // counts[k][s]: subsets of {1..=r} with k elements summing to s.
    let mut counts = vec![vec![0u64; max_sum + 1]; n_a + 1];
    counts[0][0] = 1;
    for r in 1..=n {
        for k in (1..=n_a.min(r)).rev() {
            for s in (r..=max_sum).rev() {
                counts[k][s] += counts[k - 1][s - r];
            }
        }
    }
    // Compare |2U - n_a·n_b| in integers.
    let offset = n_a * (n_a + 1) / 2;
    let centre = (n_a * d.n_b) as i64;
    let observed = (2.0 * d.u).round() as i64;
    let observed_dev = (observed - centre).abs();
    let mut extreme = 0u64;
    let mut total = 0u64;
    for (s, &c) in counts[n_a].iter().enumerate().skip(offset) {
        if c == 0 {
            continue;
        }
        let u2 = 2 * (s - offset) as i64;
        total += c;
        if (u2 - centre).abs() >= observed_dev {
            extreme += c;
        }
    }
    TestResult {
        statistic: d.u,
        p_value: (extreme as f64 / total as f64).clamp(0.0, 1.0),
        method: TestMethod::RanksumExact,
        direction: direction(d),
    }
}

fn normal_from(d: &RankData) -> TestResult {
    let (na, nb) = (d.n_a as f64, d.n_b as f64);
    let n = na + nb;
    let mean = na * nb / 2.0;
    let tie_term: f64 = d.ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>();
    let tie_adjust = if n > 1.0 {
        tie_term / (n * (n - 1.0))
    } else {
        0.0
    };
    let variance = na * nb / 12.0 * ((n + 1.0) - tie_adjust);
    let p_value = if variance <= 0.0 {
        1.0
    } else {
        let z = ((d.u - mean).abs() - 0.5).max(0.0) / variance.sqrt();
        erfc(z / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
    };
    TestResult {
        statistic: d.u,
        p_value,
        method: TestMethod::RanksumNormal,
        direction: direction(d),
    }
}

/// Mean pairwise Euclidean distance between phenotypes.
pub fn diversity(phenotypes: &[Vec<f64>]) -> Result<f64> {
    let n = phenotypes.len();
    if n < 2 {
        return Err(Error::Statistics(format!(
            "diversity needs at least two individuals, got {n}"
        )));
    }
    let dim = phenotypes[0].len();
    if let Some(p) = phenotypes.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: p.len(),
        });
    }
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += phenotypes[i]
                .iter()
                .zip(&phenotypes[j])
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
        }
    }
    Ok(total / (n * (n - 1) / 2) as f64)
}

/// Fraction of runs whose final best lies within `epsilon` of the problem's
/// optimum.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn success_rate(runs: &[RunRecord], problem: &Problem, epsilon: f64) -> Result<f64> {
    if runs.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(epsilon > 0.0) {
        return Err(Error::Statistics(format!(
            "epsilon must be > 0, got {epsilon}"
        )));
    }
    if let Some(r) = runs.iter().find(|r| r.problem != problem.name()) {
        return Err(Error::Statistics(format!(
            "mixed problems: expected {}, found {}",
            problem.name(),
            r.problem
        )));
    }
    let hits = runs
        .iter()
        .filter(|r| r.final_best_fitness - problem.f_star() <= epsilon)
        .count();
    Ok(hits as f64 / runs.len() as f64)
}
