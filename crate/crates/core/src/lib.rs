//! Bat algorithm variants over real and quaternion representations, with
//! baseline optimizers, a benchmark suite and an experiment harness.
//!
//! ```
//! use quatswarm::algorithms::{run_seeded, AlgoConfig, AlgorithmId};
//! use quatswarm::encoding::EncodingMode;
//! use quatswarm::problems::{Function, Problem};
//!
//! let problem = Problem::new(Function::Sphere, 5).unwrap();
//! let cfg = AlgoConfig::for_dimension(5).with_encoding(EncodingMode::QuatNorm);
//! let record = run_seeded(AlgorithmId::Qba, &problem, &cfg, 7).unwrap();
//! assert_eq!(record.evaluations_used, 5000);
//! ```

pub mod algorithms;
pub mod encoding;
pub mod error;
pub mod harness;
pub mod problems;
pub mod quaternion;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use quaternion::{ComponentMask, Quaternion};
