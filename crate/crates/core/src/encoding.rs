//! Genotype to phenotype mapping.
//!
//! Algorithms search over a genotype; problems evaluate a phenotype, a point
//! of `D` reals inside a [`BoundsBox`]. Three encodings connect the two:
//!
//! * `real`: the genotype is the phenotype, clamped into the box.
//! * `quat-norm`: coordinate `j` is a quaternion whose norm is the phenotype
//!   value. Only nonnegative values are reachable.
//! * `quat-shifted-norm`: the norm is measured from the lower bound, so the
//!   whole box is reachable.
//!
//! Decoding always clamps into the box; genotypes themselves are never
//! clamped, so quaternion dynamics stay unconstrained.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{ComponentMask, Quaternion};
use crate::rng::UnitStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BoundsRepr", into = "BoundsRepr")]
pub struct BoundsBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct BoundsRepr {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<BoundsRepr> for BoundsBox {
    type Error = Error;
    fn try_from(r: BoundsRepr) -> Result<Self> {
        BoundsBox::new(r.lower, r.upper)
    }
}

impl From<BoundsBox> for BoundsRepr {
    fn from(b: BoundsBox) -> Self {
        BoundsRepr {
            lower: b.lower,
            upper: b.upper,
        }
    }
}

impl BoundsBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::InvalidBounds(format!(
                "{} lower bounds but {} upper bounds",
                lower.len(),
                upper.len()
            )));
        }
        if lower.is_empty() {
            return Err(Error::InvalidBounds("zero-dimensional box".into()));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidBounds(format!(
                    "coordinate {j}: need finite lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval in every coordinate.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// `true` when every coordinate interval is `[-a, a]`.
    pub fn is_symmetric(&self) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .all(|(lo, hi)| *lo == -*hi)
    }

    /// Errors unless `x` has the box's dimension and lies inside it.
    pub fn check(&self, x: &[f64]) -> Result<()> {
        self.check_dim(x.len())?;
        for (index, (&value, (&lower, &upper))) in
            x.iter().zip(self.lower.iter().zip(&self.upper)).enumerate()
        {
            if !(lower <= value && value <= upper) {
                return Err(Error::OutOfBounds {
                    index,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(())
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: len,
            });
        }
        Ok(())
    }

    fn clamp(&self, j: usize, v: f64) -> f64 {
        // NaN cannot reach here: genotypes are finite and norms are >= 0.
        v.clamp(self.lower[j], self.upper[j])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EncodingMode {
    #[serde(rename = "real")]
    Real,
    #[serde(rename = "quat-norm")]
    QuatNorm,
    #[serde(rename = "quat-shifted-norm")]
    QuatShiftedNorm,
}

impl EncodingMode {
    pub const ALL: [EncodingMode; 3] = [
        EncodingMode::Real,
        EncodingMode::QuatNorm,
        EncodingMode::QuatShiftedNorm,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EncodingMode::Real => "real",
            EncodingMode::QuatNorm => "quat-norm",
            EncodingMode::QuatShiftedNorm => "quat-shifted-norm",
        }
    }

    pub fn is_quaternion(&self) -> bool {
        !matches!(self, EncodingMode::Real)
    }

    /// Quaternion mode chosen a priori from the domain shape: plain norm for
    /// symmetric boxes whose optimum sits at the origin, shifted norm for
    /// everything else.
    pub fn quaternion_for(bounds: &BoundsBox, optimum: &[f64]) -> Self {
        if bounds.is_symmetric() && optimum.iter().all(|&v| v == 0.0) {
            EncodingMode::QuatNorm
        } else {
            EncodingMode::QuatShiftedNorm
        }
    }
}

impl fmt::Display for EncodingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for EncodingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EncodingMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownEncoding(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Genotype {
    Real(Vec<f64>),
    Quat(Vec<Quaternion>),
}

impl Genotype {
    pub fn len(&self) -> usize {
        match self {
            Genotype::Real(v) => v.len(),
            Genotype::Quat(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn check_mode(&self, mode: EncodingMode) -> Result<()> {
        match (self, mode.is_quaternion()) {
            (Genotype::Real(_), false) | (Genotype::Quat(_), true) => Ok(()),
            (Genotype::Real(_), true) => Err(Error::UnsupportedEncoding {
                algorithm: "real genotype".into(),
                mode: mode.to_string(),
            }),
            (Genotype::Quat(_), false) => Err(Error::UnsupportedEncoding {
                algorithm: "quaternion genotype".into(),
                mode: mode.to_string(),
            }),
        }
    }
}

pub fn decode(genotype: &Genotype, bounds: &BoundsBox, mode: EncodingMode) -> Result<Vec<f64>> {
    genotype.check_mode(mode)?;
    bounds.check_dim(genotype.len())?;
    Ok(match genotype {
        Genotype::Real(v) => decode_real(v, bounds),
        Genotype::Quat(q) => decode_quat(q, bounds, mode),
    })
}

pub fn encode(x: &[f64], bounds: &BoundsBox, mode: EncodingMode) -> Result<Genotype> {
    bounds.check(x)?;
    Ok(match mode {
        EncodingMode::Real => Genotype::Real(x.to_vec()),
        EncodingMode::QuatNorm => Genotype::Quat(
            x.iter()
                .map(|&v| Quaternion::from_scalar(v))
                .collect::<Result<_>>()?,
        ),
        EncodingMode::QuatShiftedNorm => Genotype::Quat(
            x.iter()
                .zip(bounds.lower())
                .map(|(&v, &lo)| Quaternion::from_scalar(v - lo))
                .collect::<Result<_>>()?,
        ),
    })
}

/// Random initial genotype. Consumes `D` draws for `real` and `4·D` draws for
/// the quaternion modes.
pub fn init_genotype<S: UnitStream + ?Sized>(
    rng: &mut S,
    bounds: &BoundsBox,
    mode: EncodingMode,
) -> Result<Genotype> {
    Ok(match mode {
        EncodingMode::Real => Genotype::Real(init_real(rng, bounds)),
        _ => Genotype::Quat(init_quat(rng, bounds, mode, ComponentMask::ALL)?),
    })
}

/// Identity followed by clamping.
pub(crate) fn decode_real(genes: &[f64], bounds: &BoundsBox) -> Vec<f64> {
    genes
        .iter()
        .enumerate()
        .map(|(j, &v)| bounds.clamp(j, v))
        .collect()
}

pub(crate) fn decode_quat(
    genes: &[Quaternion],
    bounds: &BoundsBox,
    mode: EncodingMode,
) -> Vec<f64> {
    genes
        .iter()
        .enumerate()
        .map(|(j, q)| {
            let offset = match mode {
                EncodingMode::QuatShiftedNorm => bounds.lower[j],
                _ => 0.0,
            };
            bounds.clamp(j, offset + q.norm())
        })
        .collect()
}

pub(crate) fn init_real<S: UnitStream + ?Sized>(rng: &mut S, bounds: &BoundsBox) -> Vec<f64> {
    bounds
        .lower
        .iter()
        .zip(&bounds.upper)
        .map(|(&lo, &hi)| rng.uniform(lo, hi))
        .collect()
}

/// Per-coordinate component scale used to initialise quaternion genotypes.
pub(crate) fn quat_init_scale(bounds: &BoundsBox, mode: EncodingMode, j: usize) -> f64 {
    let (lo, hi) = (bounds.lower[j], bounds.upper[j]);
    match mode {
        EncodingMode::QuatShiftedNorm => (hi - lo) / 2.0,
        _ => lo.abs().max(hi.abs()) / 2.0,
    }
}

pub(crate) fn init_quat<S: UnitStream + ?Sized>(
    rng: &mut S,
    bounds: &BoundsBox,
    mode: EncodingMode,
    mask: ComponentMask,
) -> Result<Vec<Quaternion>> {
    (0..bounds.dim())
        .map(|j| Quaternion::random_masked(rng, quat_init_scale(bounds, mode, j), mask))
        .collect()
}
