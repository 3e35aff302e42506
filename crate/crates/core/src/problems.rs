//! Benchmark suite.
//!
//! Ten classic minimization functions with standard box domains and known
//! optima. Every function is defined for arbitrary dimension `D`.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::encoding::BoundsBox;
use crate::error::{Error, Result};
use crate::rng::{UnitStream, ZeroStream};

pub const DEFAULT_DIMENSION: usize = 10;

/// Per-coordinate minimum of `-x·sin(sqrt|x|)` on `[-500, 500]`.
const SCHWEFEL_226_MIN: f64 = -418.982_887_272_433_7;
const SCHWEFEL_226_ARGMIN: f64 = 420.968_746_359_982;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Function {
    #[serde(rename = "sphere")]
    Sphere,
    #[serde(rename = "rosenbrock")]
    Rosenbrock,
    #[serde(rename = "rastrigin")]
    Rastrigin,
    #[serde(rename = "griewank")]
    Griewank,
    #[serde(rename = "ackley")]
    Ackley,
    #[serde(rename = "schwefel-2.26")]
    Schwefel226,
    #[serde(rename = "schwefel-1.2")]
    Schwefel12,
    #[serde(rename = "schwefel-2.22")]
    Schwefel222,
    #[serde(rename = "zakharov")]
    Zakharov,
    #[serde(rename = "quartic-noise")]
    QuarticNoise,
}

impl Function {
    pub const ALL: [Function; 10] = [
        Function::Sphere,
        Function::Rosenbrock,
        Function::Rastrigin,
        Function::Griewank,
        Function::Ackley,
        Function::Schwefel226,
        Function::Schwefel12,
        Function::Schwefel222,
        Function::Zakharov,
        Function::QuarticNoise,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Function::Sphere => "sphere",
            Function::Rosenbrock => "rosenbrock",
            Function::Rastrigin => "rastrigin",
            Function::Griewank => "griewank",
            Function::Ackley => "ackley",
            Function::Schwefel226 => "schwefel-2.26",
            Function::Schwefel12 => "schwefel-1.2",
            Function::Schwefel222 => "schwefel-2.22",
            Function::Zakharov => "zakharov",
            Function::QuarticNoise => "quartic-noise",
        }
    }

    /// Per-coordinate search interval.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Function::Sphere | Function::Schwefel12 => (-100.0, 100.0),
            Function::Rosenbrock => (-30.0, 30.0),
            Function::Rastrigin => (-5.12, 5.12),
            Function::Griewank => (-600.0, 600.0),
            Function::Ackley => (-32.0, 32.0),
            Function::Schwefel226 => (-500.0, 500.0),
            Function::Schwefel222 => (-10.0, 10.0),
            Function::Zakharov => (-5.0, 10.0),
            Function::QuarticNoise => (-1.28, 1.28),
        }
    }

    pub fn optimum_value(&self, dim: usize) -> f64 {
        match self {
            Function::Schwefel226 => SCHWEFEL_226_MIN * dim as f64,
            _ => 0.0,
        }
    }

    pub fn optimum_point(&self, dim: usize) -> Vec<f64> {
        match self {
            Function::Rosenbrock => vec![1.0; dim],
            Function::Schwefel226 => vec![SCHWEFEL_226_ARGMIN; dim],
            _ => vec![0.0; dim],
        }
    }

    pub fn is_noisy(&self) -> bool {
        matches!(self, Function::QuarticNoise)
    }

    fn eval(&self, x: &[f64], noise: &mut dyn UnitStream) -> f64 {
        let d = x.len() as f64;
        match self {
            Function::Sphere => x.iter().map(|v| v * v).sum(),
            Function::Rosenbrock => x
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
                .sum(),
            Function::Rastrigin => x
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            Function::Griewank => {
                let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                1.0 + sum - prod
            }
            Function::Ackley => {
                let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
            Function::Schwefel226 => x.iter().map(|v| -v * v.abs().sqrt().sin()).sum(),
            Function::Schwefel12 => {
                let mut prefix = 0.0;
                x.iter()
                    .map(|v| {
                        prefix += v;
                        prefix * prefix
                    })
                    .sum()
            }
            Function::Schwefel222 => {
                x.iter().map(|v| v.abs()).sum::<f64>() + x.iter().map(|v| v.abs()).product::<f64>()
            }
            Function::Zakharov => {
                let sq: f64 = x.iter().map(|v| v * v).sum();
                let lin: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
                    .sum();
                sq + lin.powi(2) + lin.powi(4)
            }
            Function::QuarticNoise => {
                x.iter()
                    .enumerate()
                    .map(|(i, v)| (i + 1) as f64 * v.powi(4))
                    .sum::<f64>()
                    + noise.next_unit()
            }
        }
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Function {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Function::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// A benchmark function bound to a dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    function: Function,
    bounds: BoundsBox,
    f_star: f64,
    x_star: Vec<f64>,
}

impl Problem {
    pub fn new(function: Function, dim: usize) -> Result<Self> {
        if dim == 0 || (function == Function::Rosenbrock && dim < 2) {
            return Err(Error::InvalidConfig(format!(
                "dimension {dim} is too small for {function}"
            )));
        }
        let (lo, hi) = function.domain();
        Ok(Self {
            function,
            bounds: BoundsBox::uniform(dim, lo, hi)?,
            f_star: function.optimum_value(dim),
            x_star: function.optimum_point(dim),
        })
    }

    pub fn by_name(name: &str, dim: usize) -> Result<Self> {
        Self::new(name.parse()?, dim)
    }

    pub fn name(&self) -> &'static str {
        self.function.name()
    }

    pub fn function(&self) -> Function {
        self.function
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &BoundsBox {
        &self.bounds
    }

    pub fn f_star(&self) -> f64 {
        self.f_star
    }

    pub fn x_star(&self) -> &[f64] {
        &self.x_star
    }

    /// Fitness of an in-box phenotype; lower is better. Only the noisy quartic
    /// draws from `noise`.
    pub fn evaluate(&self, x: &[f64], noise: &mut dyn UnitStream) -> Result<f64> {
        self.bounds.check(x)?;
        let value = self.function.eval(x, noise);
        if !value.is_finite() {
            return Err(Error::NumericRange { op: "evaluate" });
        }
        Ok(value)
    }

    /// [`Problem::evaluate`] with noise switched off.
    pub fn evaluate_clean(&self, x: &[f64]) -> Result<f64> {
        self.evaluate(x, &mut ZeroStream)
    }

    /// One-line listing: name, dimension, bounds, optimum value.
    pub fn listing(&self) -> String {
        let (lo, hi) = self.function.domain();
        format!(
            "{:<15} {:>4}  {:<20} {:>22}",
            self.name(),
            self.dim(),
            format!("[{lo}, {hi}]"),
            format!("{:.10}", self.f_star)
        )
    }
}

/// All ten suite problems at dimension `dim`.
pub fn suite(dim: usize) -> Result<Vec<Problem>> {
    Function::ALL
        .iter()
        .map(|&f| Problem::new(f, dim))
        .collect()
}
