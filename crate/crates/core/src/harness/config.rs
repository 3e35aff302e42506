//! Experiment configuration.
//!
//! The JSON schema, with defaults:
//!
//! ```json
//! {
//!   "algorithms": ["ba", "qba", "de", "abc"],
//!   "problems": "all",
//!   "dimension": 10,
//!   "runs_per_cell": 25,
//!   "base_seed": 1,
//!   "output_dir": "results",
//!   "population_size": 30,
//!   "max_evaluations": 10000,
//!   "checkpoint_every": 30,
//!   "bat": { "f_min": 0, "f_max": 2, "alpha": 0.9, "gamma": 0.9,
//!            "loudness0": 1, "pulse_rate0": 0.5 },
//!   "de": { "f": 0.5, "cr": 0.9 },
//!   "abc": { "limit": 150 },
//!   "algorithm_settings": {
//!     "qba": { "encoding": "auto" },
//!     "de": { "population_size": 50 }
//!   }
//! }
//! ```
//!
//! Only `algorithms` and `problems` are required. `max_evaluations` defaults to
//! `1000·dimension`, `checkpoint_every` to the population size and `abc.limit`
//! to `population_size / 2 · dimension`. Entries under `algorithm_settings`
//! override the top-level values for one algorithm. An `encoding` of `auto`
//! picks `quat-norm` or `quat-shifted-norm` per problem from the shape of its
//! domain. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algorithms::{AbcParams, AlgoConfig, AlgorithmId, BatParams, DeParams};
use crate::encoding::EncodingMode;
use crate::error::{Error, Result};
use crate::problems::{Function, Problem, DEFAULT_DIMENSION};

pub const DEFAULT_RUNS: usize = 25;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_OUTPUT: &str = "results";

/// Encoding requested for an algorithm: a fixed mode, or `auto`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EncodingChoice {
    Fixed(EncodingMode),
    Auto(AutoTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutoTag {
    #[serde(rename = "auto")]
    Auto,
}

impl EncodingChoice {
    pub const AUTO: Self = EncodingChoice::Auto(AutoTag::Auto);

    pub fn default_for(algorithm: AlgorithmId) -> Self {
        match algorithm {
            AlgorithmId::Qba => Self::AUTO,
            _ => EncodingChoice::Fixed(EncodingMode::Real),
        }
    }

    pub fn resolve(&self, problem: &Problem) -> EncodingMode {
        match self {
            EncodingChoice::Fixed(mode) => *mode,
            EncodingChoice::Auto(_) => {
                EncodingMode::quaternion_for(problem.bounds(), problem.x_star())
            }
        }
    }
}

impl fmt::Display for EncodingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodingChoice::Fixed(mode) => mode.fmt(f),
            EncodingChoice::Auto(_) => f.pad("auto"),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ProblemSelection {
    Keyword(String),
    List(Vec<String>),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Overrides {
    population_size: Option<usize>,
    max_evaluations: Option<usize>,
    checkpoint_every: Option<usize>,
    bat: Option<BatParams>,
    de: Option<DeParams>,
    abc: Option<AbcParams>,
    encoding: Option<EncodingChoice>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    algorithms: Vec<String>,
    problems: ProblemSelection,
    dimension: Option<usize>,
    runs_per_cell: Option<usize>,
    base_seed: Option<u64>,
    output_dir: Option<PathBuf>,
    population_size: Option<usize>,
    max_evaluations: Option<usize>,
    checkpoint_every: Option<usize>,
    bat: Option<BatParams>,
    de: Option<DeParams>,
    abc: Option<AbcParams>,
    #[serde(default)]
    algorithm_settings: BTreeMap<String, Overrides>,
}

/// Resolved settings of one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSettings {
    pub config: AlgoConfig,
    pub encoding: EncodingChoice,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithms: Vec<AlgorithmId>,
    pub problems: Vec<Function>,
    pub dimension: usize,
    pub runs_per_cell: usize,
    pub base_seed: u64,
    pub output_dir: PathBuf,
    pub settings: BTreeMap<AlgorithmId, AlgorithmSettings>,
}

impl ExperimentConfig {
    /// Defaults for the given algorithms and problems.
    pub fn new(algorithms: Vec<AlgorithmId>, problems: Vec<Function>, dimension: usize) -> Self {
        let settings = algorithms
            .iter()
            .map(|&a| {
                (
                    a,
                    AlgorithmSettings {
                        config: AlgoConfig::for_dimension(dimension),
                        encoding: EncodingChoice::default_for(a),
                    },
                )
            })
            .collect();
        Self {
            algorithms,
            problems,
            dimension,
            runs_per_cell: DEFAULT_RUNS,
            base_seed: DEFAULT_SEED,
            output_dir: PathBuf::from(DEFAULT_OUTPUT),
            settings,
        }
    }

    pub fn problem(&self, function: Function) -> Result<Problem> {
        Problem::new(function, self.dimension)
    }

    /// Seed of run `k` in every cell; shared across algorithms for pairing.
    pub fn seed(&self, k: usize) -> u64 {
        self.base_seed.wrapping_add(k as u64)
    }

    /// Fully resolved configuration for one (algorithm, problem) cell.
    pub fn cell_config(&self, algorithm: AlgorithmId, problem: &Problem) -> Result<AlgoConfig> {
        let settings = self
            .settings
            .get(&algorithm)
            .ok_or_else(|| Error::UnknownAlgorithm(algorithm.to_string()))?;
        Ok(settings
            .config
            .clone()
            .with_encoding(settings.encoding.resolve(problem)))
    }

    /// Checks every invariant, naming each offending field.
    pub fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        if self.algorithms.is_empty() {
            errors.push("algorithms: at least one algorithm is required".to_string());
        }
        if self.problems.is_empty() {
            errors.push("problems: at least one problem is required".to_string());
        }
        if self.runs_per_cell == 0 {
            errors.push("runs_per_cell: must be >= 1".to_string());
        }
        if self.dimension == 0 {
            errors.push("dimension: must be >= 1".to_string());
        } else {
            for &f in &self.problems {
                if let Err(e) = self.problem(f) {
                    errors.push(format!("problems: {e}"));
                }
            }
        }
        for &a in &self.algorithms {
            let Some(settings) = self.settings.get(&a) else {
                errors.push(format!("algorithm_settings.{a}: missing"));
                continue;
            };
            if let EncodingChoice::Fixed(mode) = settings.encoding {
                if !a.accepts(mode) {
                    errors.push(format!(
                        "algorithm_settings.{a}.encoding: {mode} is not supported by {a}"
                    ));
                }
            }
            // Encoding is checked above; validate the rest with a mode the
            // algorithm accepts.
            let probe_mode = match a {
                AlgorithmId::Qba => EncodingMode::QuatNorm,
                _ => EncodingMode::Real,
            };
            if let Err(e) = settings
                .config
                .clone()
                .with_encoding(probe_mode)
                .validate(a)
            {
                errors.push(format!("algorithm_settings.{a}: {e}"));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errors))
        }
    }

    pub fn from_json(text: &str, source: &Path) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: source.to_path_buf(),
            message: e.to_string(),
        })?;
        resolve(raw)
    }
}

fn resolve(raw: RawConfig) -> Result<ExperimentConfig> {
    let mut errors = Vec::new();

    let mut algorithms = Vec::new();
    for name in &raw.algorithms {
        match name.parse::<AlgorithmId>() {
            Ok(a) if algorithms.contains(&a) => {
                errors.push(format!("algorithms: {a} listed twice"))
            }
            Ok(a) => algorithms.push(a),
            Err(_) => errors.push(format!("algorithms: unknown algorithm {name:?}")),
        }
    }

    let problems = match &raw.problems {
        ProblemSelection::Keyword(k) if k == "all" => Function::ALL.to_vec(),
        ProblemSelection::Keyword(k) => {
            errors.push(format!("problems: expected \"all\" or a list, got {k:?}"));
            Vec::new()
        }
        ProblemSelection::List(names) => {
            let mut out = Vec::new();
            for name in names {
                match name.parse::<Function>() {
                    Ok(f) if out.contains(&f) => errors.push(format!("problems: {f} listed twice")),
                    Ok(f) => out.push(f),
                    Err(_) => errors.push(format!("problems: unknown problem {name:?}")),
                }
            }
            out
        }
    };

    let dimension = raw.dimension.unwrap_or(DEFAULT_DIMENSION);
    let mut cfg = ExperimentConfig::new(algorithms.clone(), problems, dimension);
    cfg.runs_per_cell = raw.runs_per_cell.unwrap_or(DEFAULT_RUNS);
    cfg.base_seed = raw.base_seed.unwrap_or(DEFAULT_SEED);
    if let Some(dir) = raw.output_dir {
        cfg.output_dir = dir;
    }

    let shared = Overrides {
        population_size: raw.population_size,
        max_evaluations: raw.max_evaluations,
        checkpoint_every: raw.checkpoint_every,
        bat: raw.bat,
        de: raw.de,
        abc: raw.abc,
        encoding: None,
    };

    for name in raw.algorithm_settings.keys() {
        match name.parse::<AlgorithmId>() {
            Ok(a) if !algorithms.contains(&a) => errors.push(format!(
                "algorithm_settings.{name}: algorithm is not in the algorithms list"
            )),
            Ok(_) => {}
            Err(_) => errors.push(format!("algorithm_settings: unknown algorithm {name:?}")),
        }
    }

    for &a in &algorithms {
        let settings = cfg
            .settings
            .get_mut(&a)
            .expect("settings exist for listed algorithms");
        apply(&mut settings.config, &mut settings.encoding, &shared);
        if let Some(own) = raw.algorithm_settings.get(a.as_str()) {
            apply(&mut settings.config, &mut settings.encoding, own);
        }
    }

    if !errors.is_empty() {
        return Err(Error::Validation(errors));
    }
    cfg.validate()?;
    Ok(cfg)
}

fn apply(config: &mut AlgoConfig, encoding: &mut EncodingChoice, o: &Overrides) {
    if let Some(v) = o.population_size {
        config.population_size = v;
    }
    if let Some(v) = o.max_evaluations {
        config.max_evaluations = v;
    }
    if let Some(v) = o.checkpoint_every {
        config.checkpoint_every = Some(v);
    }
    if let Some(v) = o.bat {
        config.bat = v;
    }
    if let Some(v) = o.de {
        config.de = v;
    }
    if let Some(v) = o.abc {
        config.abc = v;
    }
    if let Some(v) = o.encoding {
        *encoding = v;
    }
}

/// Parses and validates a JSON config string.
pub fn parse_config(text: &str, source: &Path) -> Result<ExperimentConfig> {
    ExperimentConfig::from_json(text, source)
}

/// Reads, parses and validates a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, path)
}
