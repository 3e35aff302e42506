//! Summary tables and convergence plot data, computed from run records alone.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algorithms::{AlgorithmId, RunRecord};
use crate::error::{Error, Result};
use crate::harness::execute::{cell_stem, write_atomic};
use crate::problems::Function;
use crate::stats::{self, Direction, SampleSummary, TestResult, ALPHA};

/// Algorithm every other algorithm is compared against.
pub const REFERENCE: AlgorithmId = AlgorithmId::Qba;

pub const SUMMARY_JSON: &str = "summary.json";
pub const REPORT_TXT: &str = "report.txt";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    Win,
    Tie,
    Loss,
}

impl Mark {
    /// Mark for the first sample of a rank-sum comparison (lower is better).
    pub fn from_test(test: &TestResult) -> Self {
        if test.p_value >= ALPHA {
            return Mark::Tie;
        }
        match test.direction {
            Direction::FirstLower => Mark::Win,
            Direction::SecondLower => Mark::Loss,
            Direction::Neither => Mark::Tie,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Mark::Win => "+",
            Mark::Tie => "=",
            Mark::Loss => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub algorithm: AlgorithmId,
    pub problem: String,
    pub summary: SampleSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub problem: String,
    pub other: AlgorithmId,
    pub reference_mean: f64,
    pub other_mean: f64,
    pub test: TestResult,
    /// From the reference algorithm's point of view.
    pub mark: Mark,
}

impl Comparison {
    pub fn mean_not_worse(&self) -> bool {
        self.reference_mean <= self.other_mean
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Tally {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
    /// Problems where the reference mean is at most the other mean.
    pub mean_not_worse: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub reference: AlgorithmId,
    pub alpha: f64,
    pub summaries: Vec<CellSummary>,
    pub comparisons: Vec<Comparison>,
    pub tallies: BTreeMap<AlgorithmId, Tally>,
}

fn problem_order(name: &str) -> usize {
    Function::ALL
        .iter()
        .position(|f| f.name() == name)
        .unwrap_or(Function::ALL.len())
}

type Groups<'a> = BTreeMap<(usize, String, AlgorithmId), Vec<&'a RunRecord>>;

/// Records grouped by cell, problems in suite order.
fn group(records: &[RunRecord]) -> Groups<'_> {
    let mut groups: Groups<'_> = BTreeMap::new();
    for r in records {
        groups
            .entry((problem_order(&r.problem), r.problem.clone(), r.algorithm))
            .or_default()
            .push(r);
    }
    groups
}

fn finals(runs: &[&RunRecord]) -> Vec<f64> {
    runs.iter().map(|r| r.final_best_fitness).collect()
}

pub fn report(records: &[RunRecord]) -> Result<Report> {
    if records.is_empty() {
        return Err(Error::EmptySample);
    }
    let groups = group(records);
    let mut summaries = Vec::new();
    for ((_, problem, algorithm), runs) in &groups {
        summaries.push(CellSummary {
            algorithm: *algorithm,
            problem: problem.clone(),
            summary: stats::summarize(&finals(runs))?,
        });
    }

    let mut comparisons = Vec::new();
    let mut tallies: BTreeMap<AlgorithmId, Tally> = BTreeMap::new();
    for ((order, problem, algorithm), reference_runs) in &groups {
        if *algorithm != REFERENCE {
            continue;
        }
        let reference = finals(reference_runs);
        for other in AlgorithmId::ALL.into_iter().filter(|&a| a != REFERENCE) {
            let Some(other_runs) = groups.get(&(*order, problem.clone(), other)) else {
                continue;
            };
            let other_sample = finals(other_runs);
            let test = stats::ranksum(&reference, &other_sample)?;
            let comparison = Comparison {
                problem: problem.clone(),
                other,
                reference_mean: stats::summarize(&reference)?.mean,
                other_mean: stats::summarize(&other_sample)?.mean,
                mark: Mark::from_test(&test),
                test,
            };
            let tally = tallies.entry(other).or_default();
            match comparison.mark {
                Mark::Win => tally.wins += 1,
                Mark::Tie => tally.ties += 1,
                Mark::Loss => tally.losses += 1,
            }
            if comparison.mean_not_worse() {
                tally.mean_not_worse += 1;
            }
            comparisons.push(comparison);
        }
    }

    Ok(Report {
        reference: REFERENCE,
        alpha: ALPHA,
        summaries,
        comparisons,
        tallies,
    })
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<15} {:<5} {:>4} {:>12} {:>12} {:>12} {:>12} {:>12}",
            "problem", "alg", "n", "mean", "std", "median", "best", "worst"
        );
        for c in &self.summaries {
            let s = &c.summary;
            let _ = writeln!(
                out,
                "{:<15} {:<5} {:>4} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
                c.problem, c.algorithm, s.n, s.mean, s.std, s.median, s.best, s.worst
            );
        }

        if self.comparisons.is_empty() {
            return out;
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{} vs others, rank-sum at alpha = {} (+ win, = tie, - loss)",
            self.reference, self.alpha
        );
        let _ = writeln!(
            out,
            "{:<15} {:<5} {:>12} {:>12} {:>10} {:>4}",
            "problem", "other", "ref mean", "other mean", "p", "mark"
        );
        for c in &self.comparisons {
            let _ = writeln!(
                out,
                "{:<15} {:<5} {:>12.4e} {:>12.4e} {:>10.3e} {:>4}",
                c.problem,
                c.other,
                c.reference_mean,
                c.other_mean,
                c.test.p_value,
                c.mark.symbol()
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<5} {:>4} {:>4} {:>4} {:>14}",
            "other", "win", "tie", "loss", "mean not worse"
        );
        for (other, t) in &self.tallies {
            let _ = writeln!(
                out,
                "{:<5} {:>4} {:>4} {:>4} {:>14}",
                other, t.wins, t.ties, t.losses, t.mean_not_worse
            );
        }
        out
    }

    /// Writes `summary.json` and `report.txt` into `dir`.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        let json = serde_json::to_string_pretty(self)? + "\n";
        write_atomic(&dir.join(SUMMARY_JSON), json.as_bytes())?;
        write_atomic(&dir.join(REPORT_TXT), self.to_text().as_bytes())
    }
}

/// Mean best-so-far fitness per checkpoint of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceCurve {
    pub algorithm: AlgorithmId,
    pub problem: String,
    pub runs: usize,
    /// `(evaluations, mean best fitness)`.
    pub points: Vec<(usize, f64)>,
}

pub fn convergence(records: &[RunRecord]) -> Result<Vec<ConvergenceCurve>> {
    if records.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut curves = Vec::new();
    for ((_, problem, algorithm), runs) in group(records) {
        let first = runs[0];
        for r in &runs[1..] {
            let same_grid = r.checkpoint_every == first.checkpoint_every
                && r.trace.len() == first.trace.len()
                && r.trace
                    .iter()
                    .zip(&first.trace)
                    .all(|(a, b)| a.evaluations == b.evaluations);
            if !same_grid {
                return Err(Error::CadenceMismatch(format!(
                    "{algorithm} on {problem}: seed {} checkpoints differ from seed {}",
                    r.seed, first.seed
                )));
            }
        }
        let n = runs.len() as f64;
        let points = first
            .trace
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mean = runs.iter().map(|r| r.trace[i].best_fitness).sum::<f64>() / n;
                (c.evaluations, mean)
            })
            .collect();
        curves.push(ConvergenceCurve {
            algorithm,
            problem,
            runs: runs.len(),
            points,
        });
    }
    Ok(curves)
}

/// Writes one `<algorithm>__<problem>.convergence.csv` per cell into
/// `out_dir` and returns the paths written.
pub fn emit_convergence(records: &[RunRecord], out_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let out_dir = out_dir.as_ref();
    let curves = convergence(records)?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    for curve in curves {
        let mut text = String::from("evaluations,mean_best_fitness,runs\n");
        for (evaluations, mean) in &curve.points {
            let _ = writeln!(text, "{evaluations},{mean},{}", curve.runs);
        }
        let path = out_dir.join(format!(
            "{}.convergence.csv",
            cell_stem(curve.algorithm, &curve.problem)
        ));
        write_atomic(&path, text.as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::Checkpoint;
    use crate::encoding::EncodingMode;

    fn record(
        algorithm: AlgorithmId,
        problem: &str,
        seed: u64,
        trace: &[(usize, f64)],
    ) -> RunRecord {
        let trace: Vec<Checkpoint> = trace
            .iter()
            .map(|&(evaluations, best_fitness)| Checkpoint {
                evaluations,
                best_fitness,
            })
            .collect();
        RunRecord {
            algorithm,
            problem: problem.to_string(),
            dimension: 2,
            seed,
            encoding: EncodingMode::Real,
            population_size: 4,
            max_evaluations: trace.last().unwrap().evaluations,
            checkpoint_every: 4,
            final_best_fitness: trace.last().unwrap().best_fitness,
            final_best_phenotype: vec![0.0, 0.0],
            evaluations_used: trace.last().unwrap().evaluations,
            trace,
            wall_time: 0.0,
        }
    }

    fn constant(algorithm: AlgorithmId, problem: &str, values: &[f64]) -> Vec<RunRecord> {
        values
            .iter()
            .enumerate()
            .map(|(k, &v)| record(algorithm, problem, k as u64, &[(4, v + 1.0), (8, v)]))
            .collect()
    }

    #[test]
    fn identical_samples_tie() {
        let v: Vec<f64> = (0..25).map(|k| k as f64).collect();
        let mut records = constant(AlgorithmId::Qba, "sphere", &v);
        records.extend(constant(AlgorithmId::Ba, "sphere", &v));
        let r = report(&records).unwrap();
        assert_eq!(r.comparisons.len(), 1);
        assert_eq!(r.comparisons[0].mark, Mark::Tie);
        assert_eq!(r.tallies[&AlgorithmId::Ba].ties, 1);
    }

    #[test]
    fn dominating_samples_win() {
        let low: Vec<f64> = (0..25).map(|k| k as f64).collect();
        let high: Vec<f64> = (0..25).map(|k| 100.0 + k as f64).collect();
        let mut records = constant(AlgorithmId::Qba, "sphere", &low);
        records.extend(constant(AlgorithmId::Ba, "sphere", &high));
        records.extend(constant(
            AlgorithmId::De,
            "sphere",
            &low.iter().map(|v| v - 200.0).collect::<Vec<_>>(),
        ));
        let r = report(&records).unwrap();
        let ba = r
            .comparisons
            .iter()
            .find(|c| c.other == AlgorithmId::Ba)
            .unwrap();
        assert_eq!(ba.mark, Mark::Win);
        assert!(ba.test.p_value < ALPHA);
        let de = r
            .comparisons
            .iter()
            .find(|c| c.other == AlgorithmId::De)
            .unwrap();
        assert_eq!(de.mark, Mark::Loss);
        let text = r.to_text();
        assert!(text.contains("qba vs others"), "{text}");
    }

    #[test]
    fn single_algorithm_has_no_comparisons() {
        let r = report(&constant(AlgorithmId::Ba, "ackley", &[1.0, 2.0])).unwrap();
        assert_eq!(r.summaries.len(), 1);
        assert!(r.comparisons.is_empty());
        assert!(r.tallies.is_empty());
    }

    #[test]
    fn empty_inputs_rejected() {
        assert!(matches!(report(&[]), Err(Error::EmptySample)));
        assert!(matches!(convergence(&[]), Err(Error::EmptySample)));
    }

    #[test]
    fn convergence_means_and_mismatch() {
        let records = vec![
            record(AlgorithmId::De, "sphere", 1, &[(4, 4.0), (8, 2.0)]),
            record(AlgorithmId::De, "sphere", 2, &[(4, 6.0), (8, 0.0)]),
        ];
        let curves = convergence(&records).unwrap();
        assert_eq!(curves[0].points, vec![(4, 5.0), (8, 1.0)]);

        let mut bad = records.clone();
        bad[1].checkpoint_every = 5;
        assert!(matches!(convergence(&bad), Err(Error::CadenceMismatch(_))));
    }
}
