//! Runs the experiment matrix and persists results.
//!
//! Layout of the output directory:
//!
//! * `experiment.json`: the resolved configuration;
//! * `<algorithm>__<problem>.jsonl`: one [`RunRecord`] per line, in seed order;
//! * `<algorithm>__<problem>.trace.csv`: every checkpoint of every run of the
//!   cell, written once the cell is complete.
//!
//! Cells run in parallel. Runs within a cell are sequential and appended as
//! they finish, so an interrupted experiment resumes from the first missing
//! run of each cell.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::algorithms::{run_seeded, AlgorithmId, RunRecord};
use crate::error::{Error, Result};
use crate::harness::config::ExperimentConfig;
use crate::problems::Function;

pub const MANIFEST: &str = "experiment.json";

pub fn cell_stem(algorithm: AlgorithmId, problem: &str) -> String {
    format!("{algorithm}__{problem}")
}

pub fn records_path(dir: &Path, algorithm: AlgorithmId, problem: &str) -> PathBuf {
    dir.join(format!("{}.jsonl", cell_stem(algorithm, problem)))
}

pub fn trace_path(dir: &Path, algorithm: AlgorithmId, problem: &str) -> PathBuf {
    dir.join(format!("{}.trace.csv", cell_stem(algorithm, problem)))
}

#[derive(Debug)]
pub struct CellFailure {
    pub algorithm: AlgorithmId,
    pub problem: Function,
    pub error: Error,
}

#[derive(Debug, Default)]
pub struct Execution {
    /// Records of completed cells, ordered by algorithm, problem and seed.
    pub records: Vec<RunRecord>,
    /// Runs actually executed (not resumed from disk).
    pub executed: usize,
    pub failures: Vec<CellFailure>,
}

impl Execution {
    pub fn is_success(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every (algorithm, problem, k) cell of `cfg`, skipping runs already
/// persisted in the output directory.
pub fn execute(cfg: &ExperimentConfig) -> Result<Execution> {
    cfg.validate()?;
    let dir = &cfg.output_dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    check_manifest(cfg)?;

    let cells: Vec<(AlgorithmId, Function)> = cfg
        .algorithms
        .iter()
        .flat_map(|&a| cfg.problems.iter().map(move |&p| (a, p)))
        .collect();

    let outcomes: Vec<_> = cells
        .par_iter()
        .map(|&(a, p)| (a, p, run_cell(cfg, a, p)))
        .collect();

    let mut execution = Execution::default();
    for (algorithm, problem, outcome) in outcomes {
        match outcome {
            Ok((records, executed)) => {
                execution.records.extend(records);
                execution.executed += executed;
            }
            Err(error) => execution.failures.push(CellFailure {
                algorithm,
                problem,
                error,
            }),
        }
    }
    Ok(execution)
}

fn check_manifest(cfg: &ExperimentConfig) -> Result<()> {
    let path = cfg.output_dir.join(MANIFEST);
    let text = serde_json::to_string_pretty(cfg)? + "\n";
    if path.exists() {
        let existing = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let previous: ExperimentConfig =
            serde_json::from_str(&existing).map_err(|e| Error::Parse {
                path: path.clone(),
                message: e.to_string(),
            })?;
        if !same_experiment(&previous, cfg) {
            return Err(Error::InvalidConfig(format!(
                "{} holds results of a different experiment",
                cfg.output_dir.display()
            )));
        }
    }
    fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

/// Equal apart from the run count and output path, which may change between
/// resumptions.
fn same_experiment(a: &ExperimentConfig, b: &ExperimentConfig) -> bool {
    a.dimension == b.dimension && a.base_seed == b.base_seed && a.settings == b.settings
}

/// Loads the valid prefix of a cell's record file: records whose seeds
/// follow the expected sequence. Anything after the first bad or partial
/// line is dropped and the file truncated to the prefix.
fn load_prefix(
    cfg: &ExperimentConfig,
    path: &Path,
    algorithm: AlgorithmId,
    problem: &str,
) -> Result<Vec<RunRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    let mut good_bytes = 0u64;
    let mut clean = true;
    for line in BufReader::new(file).split(b'\n') {
        let line = line.map_err(|e| Error::io(path, e))?;
        let parsed = serde_json::from_slice::<RunRecord>(&line).ok().filter(|r| {
            r.algorithm == algorithm
                && r.problem == problem
                && r.seed == cfg.seed(records.len())
                && records.len() < cfg.runs_per_cell
        });
        match parsed {
            Some(r) => {
                good_bytes += line.len() as u64 + 1;
                records.push(r);
            }
            None => {
                clean = false;
                break;
            }
        }
    }
    let actual = fs::metadata(path).map_err(|e| Error::io(path, e))?.len();
    if !clean || actual != good_bytes {
        let file = OpenOptions::new()
            .write(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        file.set_len(good_bytes).map_err(|e| Error::io(path, e))?;
    }
    Ok(records)
}

fn run_cell(
    cfg: &ExperimentConfig,
    algorithm: AlgorithmId,
    function: Function,
) -> Result<(Vec<RunRecord>, usize)> {
    let problem = cfg.problem(function)?;
    let algo_cfg = cfg.cell_config(algorithm, &problem)?;
    let path = records_path(&cfg.output_dir, algorithm, problem.name());
    let mut records = load_prefix(cfg, &path, algorithm, problem.name())?;
    let resumed = records.len();

    if resumed < cfg.runs_per_cell {
        let mut out = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        for k in resumed..cfg.runs_per_cell {
            let record = run_seeded(algorithm, &problem, &algo_cfg, cfg.seed(k))?;
            let mut line = serde_json::to_vec(&record)?;
            line.push(b'\n');
            out.write_all(&line).map_err(|e| Error::io(&path, e))?;
            out.flush().map_err(|e| Error::io(&path, e))?;
            records.push(record);
        }
    }

    write_trace_csv(
        &trace_path(&cfg.output_dir, algorithm, problem.name()),
        &records,
    )?;
    Ok((records, cfg.runs_per_cell - resumed))
}

fn write_trace_csv(path: &Path, records: &[RunRecord]) -> Result<()> {
    let mut text = String::from("seed,evaluations,best_fitness\n");
    for r in records {
        for c in &r.trace {
            text.push_str(&format!(
                "{},{},{}\n",
                r.seed, c.evaluations, c.best_fitness
            ));
        }
    }
    write_atomic(path, text.as_bytes())
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Reads every `*.jsonl` record file in `dir`, in file-name order.
pub fn load_records(dir: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let dir = dir.as_ref();
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "jsonl"))
        .collect();
    files.sort();
    let mut records = Vec::new();
    for path in files {
        let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
        for (n, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(&path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let record = serde_json::from_str(&line).map_err(|e| Error::Parse {
                path: path.clone(),
                message: format!("line {}: {e}", n + 1),
            })?;
            records.push(record);
        }
    }
    Ok(records)
}
