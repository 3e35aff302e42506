//! Experiment configuration, execution, persistence and reporting.

pub mod config;
pub mod execute;
pub mod report;

pub use config::{load_config, parse_config, AlgorithmSettings, EncodingChoice, ExperimentConfig};
pub use execute::{execute, load_records, CellFailure, Execution};
pub use report::{convergence, emit_convergence, report, ConvergenceCurve, Mark, Report, Tally};
