//! Optimizers and the plumbing they share.
//!
//! All four optimizers minimize a [`Problem`] under a budget of objective
//! evaluations. Evaluations go through an [`Evaluator`], which owns the
//! budget, the best-so-far point and the convergence trace, so every
//! algorithm reports the same [`RunRecord`] shape.
//!
//! Initialization always evaluates the full starting population. After that
//! each algorithm checks the budget before every evaluation and stops the
//! moment it is spent, so `evaluations_used == max_evaluations` whenever
//! `max_evaluations >= population_size`.

pub mod abc;
pub mod bat;
pub mod de;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::encoding::EncodingMode;
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::{seeded, UnitStream, NOISE_STREAM, SEARCH_STREAM};

pub use abc::{run_abc, BeeColony};
pub use bat::{run_ba, run_qba, BatSwarm, QuaternionCoding, RealCoding, Representation};
pub use de::{run_de, DifferentialEvolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmId {
    Ba,
    Qba,
    De,
    Abc,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 4] = [
        AlgorithmId::Ba,
        AlgorithmId::Qba,
        AlgorithmId::De,
        AlgorithmId::Abc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmId::Ba => "ba",
            AlgorithmId::Qba => "qba",
            AlgorithmId::De => "de",
            AlgorithmId::Abc => "abc",
        }
    }

    pub fn accepts(&self, mode: EncodingMode) -> bool {
        match self {
            AlgorithmId::Qba => mode.is_quaternion(),
            _ => mode == EncodingMode::Real,
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Bat algorithm controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatParams {
    pub f_min: f64,
    pub f_max: f64,
    /// Loudness decay factor, in (0, 1).
    pub alpha: f64,
    /// Pulse-rate growth, > 0.
    pub gamma: f64,
    pub loudness0: f64,
    /// Asymptotic pulse rate.
    pub pulse_rate0: f64,
}

impl Default for BatParams {
    fn default() -> Self {
        Self {
            f_min: 0.0,
            f_max: 2.0,
            alpha: 0.9,
            gamma: 0.9,
            loudness0: 1.0,
            pulse_rate0: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeParams {
    /// Scale factor.
    pub f: f64,
    /// Crossover rate.
    pub cr: f64,
}

impl Default for DeParams {
    fn default() -> Self {
        Self { f: 0.5, cr: 0.9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AbcParams {
    /// Scout trigger. `None` means food sources × dimension.
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoConfig {
    pub population_size: usize,
    pub max_evaluations: usize,
    /// Trace cadence in evaluations; `None` means one checkpoint per
    /// `population_size` evaluations.
    pub checkpoint_every: Option<usize>,
    pub bat: BatParams,
    pub de: DeParams,
    pub abc: AbcParams,
    pub encoding: EncodingMode,
}

impl AlgoConfig {
    pub const DEFAULT_POPULATION: usize = 30;

    /// Defaults for a `dim`-dimensional problem: 30 individuals and a budget of
    /// `1000·dim` evaluations.
    pub fn for_dimension(dim: usize) -> Self {
        Self {
            population_size: Self::DEFAULT_POPULATION,
            max_evaluations: 1000 * dim,
            checkpoint_every: None,
            bat: BatParams::default(),
            de: DeParams::default(),
            abc: AbcParams::default(),
            encoding: EncodingMode::Real,
        }
    }

    pub fn with_encoding(mut self, encoding: EncodingMode) -> Self {
        self.encoding = encoding;
        self
    }

    pub fn cadence(&self) -> usize {
        self.checkpoint_every.unwrap_or(self.population_size)
    }

    /// Checks every invariant relevant to `algorithm` and reports all
    /// violations at once.
    // Negated comparisons also reject NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self, algorithm: AlgorithmId) -> Result<()> {
        let mut problems = Vec::new();
        if self.population_size < 4 {
            problems.push(format!(
                "population_size must be >= 4, got {}",
                self.population_size
            ));
        }
        if self.max_evaluations < self.population_size {
            problems.push(format!(
                "max_evaluations ({}) must be >= population_size ({})",
                self.max_evaluations, self.population_size
            ));
        }
        if self.checkpoint_every == Some(0) {
            problems.push("checkpoint_every must be positive".into());
        }
        if !algorithm.accepts(self.encoding) {
            problems.push(format!(
                "encoding {} is not supported by {algorithm}",
                self.encoding
            ));
        }
        match algorithm {
            AlgorithmId::Ba | AlgorithmId::Qba => {
                let b = &self.bat;
                let finite = [
                    b.f_min,
                    b.f_max,
                    b.alpha,
                    b.gamma,
                    b.loudness0,
                    b.pulse_rate0,
                ]
                .iter()
                .all(|v| v.is_finite());
                if !finite {
                    problems.push("bat parameters must be finite".into());
                }
                if !(b.f_min < b.f_max) {
                    problems.push(format!(
                        "bat.f_min ({}) must be < bat.f_max ({})",
                        b.f_min, b.f_max
                    ));
                }
                if !(b.alpha > 0.0 && b.alpha < 1.0) {
                    problems.push(format!("bat.alpha must lie in (0, 1), got {}", b.alpha));
                }
                if !(b.gamma > 0.0) {
                    problems.push(format!("bat.gamma must be > 0, got {}", b.gamma));
                }
                if !(b.loudness0 > 0.0) {
                    problems.push(format!("bat.loudness0 must be > 0, got {}", b.loudness0));
                }
                if !(0.0..=1.0).contains(&b.pulse_rate0) {
                    problems.push(format!(
                        "bat.pulse_rate0 must lie in [0, 1], got {}",
                        b.pulse_rate0
                    ));
                }
            }
            AlgorithmId::De => {
                if !(self.de.f > 0.0 && self.de.f.is_finite()) {
                    problems.push(format!("de.f must be > 0, got {}", self.de.f));
                }
                if !(0.0..=1.0).contains(&self.de.cr) {
                    problems.push(format!("de.cr must lie in [0, 1], got {}", self.de.cr));
                }
            }
            AlgorithmId::Abc => {}
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(problems.join("; ")))
        }
    }
}

impl Default for AlgoConfig {
    fn default() -> Self {
        Self::for_dimension(crate::problems::DEFAULT_DIMENSION)
    }
}

/// Best-so-far fitness after a given number of evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(usize, f64)", into = "(usize, f64)")]
pub struct Checkpoint {
    pub evaluations: usize,
    pub best_fitness: f64,
}

impl From<(usize, f64)> for Checkpoint {
    fn from((evaluations, best_fitness): (usize, f64)) -> Self {
        Self {
            evaluations,
            best_fitness,
        }
    }
}

impl From<Checkpoint> for (usize, f64) {
    fn from(c: Checkpoint) -> Self {
        (c.evaluations, c.best_fitness)
    }
}

/// Outcome of one seeded optimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunRecord {
    pub algorithm: AlgorithmId,
    pub problem: String,
    pub dimension: usize,
    pub seed: u64,
    pub encoding: EncodingMode,
    pub population_size: usize,
    pub max_evaluations: usize,
    pub checkpoint_every: usize,
    pub trace: Vec<Checkpoint>,
    pub final_best_fitness: f64,
    pub final_best_phenotype: Vec<f64>,
    pub evaluations_used: usize,
    /// Seconds. Not covered by the determinism guarantee.
    pub wall_time: f64,
}

impl RunRecord {
    /// Copy with `wall_time` zeroed, for determinism comparisons.
    pub fn without_wall_time(&self) -> Self {
        Self {
            wall_time: 0.0,
            ..self.clone()
        }
    }
}

/// The two independent random streams of a run.
#[derive(Debug, Clone)]
pub struct Streams<S = ChaCha8Rng, N = ChaCha8Rng> {
    pub seed: u64,
    pub search: S,
    pub noise: N,
}

impl Streams {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            seed,
            search: seeded(seed, SEARCH_STREAM),
            noise: seeded(seed, NOISE_STREAM),
        }
    }
}

/// Counts evaluations against the budget and records the trace.
pub struct Evaluator<'a> {
    problem: &'a Problem,
    noise: &'a mut dyn UnitStream,
    max_evaluations: usize,
    cadence: usize,
    used: usize,
    best: Option<(f64, Vec<f64>)>,
    trace: Vec<Checkpoint>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        problem: &'a Problem,
        noise: &'a mut dyn UnitStream,
        max_evaluations: usize,
        cadence: usize,
    ) -> Self {
        Self {
            problem,
            noise,
            max_evaluations,
            cadence: cadence.max(1),
            used: 0,
            best: None,
            trace: Vec::new(),
        }
    }

    pub fn problem(&self) -> &'a Problem {
        self.problem
    }

    pub fn used(&self) -> usize {
        self.used
    }

    pub fn has_budget(&self) -> bool {
        self.used < self.max_evaluations
    }

    pub fn best_fitness(&self) -> Option<f64> {
        self.best.as_ref().map(|(f, _)| *f)
    }

    pub fn trace(&self) -> &[Checkpoint] {
        &self.trace
    }

    pub fn evaluate(&mut self, phenotype: &[f64]) -> Result<f64> {
        let fitness = self.problem.evaluate(phenotype, &mut *self.noise)?;
        self.used += 1;
        match &mut self.best {
            Some((best, point)) if fitness <= *best => {
                *best = fitness;
                point.clear();
                point.extend_from_slice(phenotype);
            }
            Some(_) => {}
            None => self.best = Some((fitness, phenotype.to_vec())),
        }
        if self.used.is_multiple_of(self.cadence) {
            self.push_checkpoint();
        }
        Ok(fitness)
    }

    fn push_checkpoint(&mut self) {
        if let Some(best_fitness) = self.best_fitness() {
            self.trace.push(Checkpoint {
                evaluations: self.used,
                best_fitness,
            });
        }
    }

    /// Closes the trace with a final checkpoint if the run ended between
    /// cadence points, and builds the record.
    pub fn finish(
        mut self,
        algorithm: AlgorithmId,
        cfg: &AlgoConfig,
        seed: u64,
        started: Instant,
    ) -> RunRecord {
        if self.trace.last().map(|c| c.evaluations) != Some(self.used) {
            self.push_checkpoint();
        }
        let (final_best_fitness, final_best_phenotype) =
            self.best.unwrap_or((f64::INFINITY, Vec::new()));
        RunRecord {
            algorithm,
            problem: self.problem.name().to_string(),
            dimension: self.problem.dim(),
            seed,
            encoding: cfg.encoding,
            population_size: cfg.population_size,
            max_evaluations: cfg.max_evaluations,
            checkpoint_every: self.cadence,
            trace: self.trace,
            final_best_fitness,
            final_best_phenotype,
            evaluations_used: self.used,
            wall_time: started.elapsed().as_secs_f64(),
        }
    }
}

/// Runs `algorithm` on `problem`.
pub fn run<S: UnitStream, N: UnitStream>(
    algorithm: AlgorithmId,
    problem: &Problem,
    cfg: &AlgoConfig,
    streams: &mut Streams<S, N>,
) -> Result<RunRecord> {
    match algorithm {
        AlgorithmId::Ba => run_ba(problem, cfg, streams),
        AlgorithmId::Qba => run_qba(problem, cfg, streams),
        AlgorithmId::De => run_de(problem, cfg, streams),
        AlgorithmId::Abc => run_abc(problem, cfg, streams),
    }
}

/// [`run`] with streams derived from `seed`.
pub fn run_seeded(
    algorithm: AlgorithmId,
    problem: &Problem,
    cfg: &AlgoConfig,
    seed: u64,
) -> Result<RunRecord> {
    run(algorithm, problem, cfg, &mut Streams::from_seed(seed))
}

/// Read access to the current phenotypes of a population.
pub trait Population {
    fn phenotypes(&self) -> Vec<Vec<f64>>;
}
