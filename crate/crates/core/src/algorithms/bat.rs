//! Bat algorithm over real or quaternion genotypes.
//!
//! One control flow serves both the canonical bat algorithm and its
//! quaternion variant. The swarm is generic over a [`Representation`], which
//! supplies the genotype arithmetic, the unit random walk and the decode map.
//! With [`RealCoding`] the swarm is the classic algorithm; with
//! [`QuaternionCoding`] every position and velocity coordinate is a
//! quaternion, updated with quaternion addition and scaling, and decoded
//! through the norm before evaluation.
//!
//! Per generation `t` (starting at 1) and bat `i`, draws are taken in this
//! order:
//!
//! 1. `β`: frequency `f = f_min + (f_max - f_min)·β`, then
//!    `v ← v + (x - best)·f` and candidate `x' = x + v`;
//! 2. pulse draw: if it exceeds the bat's pulse rate, `x'` is replaced by a
//!    local walk `best + Ā·ε`, where `Ā` is the mean loudness and `ε` draws
//!    one unit-range value per active component of every coordinate;
//! 3. acceptance draw: after evaluating `x'`, the bat moves there when the
//!    draw is below its loudness and `f(x') <= f(x)`. Acceptance multiplies
//!    loudness by `alpha` and sets the pulse rate to
//!    `r0·(1 - exp(-gamma·t))`.
//!
//! The global best is replaced by any candidate at least as good, accepted
//! or not, and is kept as a genotype.

use std::fmt::Debug;
use std::time::Instant;

use crate::algorithms::{
    AlgoConfig, AlgorithmId, BatParams, Evaluator, Population, RunRecord, Streams,
};
use crate::encoding::{self, EncodingMode, Genotype};
use crate::error::{Error, Result};
use crate::quaternion::{ComponentMask, Quaternion};
use crate::rng::UnitStream;

/// Genotype arithmetic used by the bat update equations.
pub trait Representation {
    type Gene: Copy + Debug + PartialEq;

    fn mode(&self) -> EncodingMode;
    fn zero(&self) -> Self::Gene;
    fn add(&self, a: &Self::Gene, b: &Self::Gene) -> Result<Self::Gene>;
    fn sub(&self, a: &Self::Gene, b: &Self::Gene) -> Result<Self::Gene>;
    fn scale(&self, s: f64, g: &Self::Gene) -> Result<Self::Gene>;
    /// Random step with every active component uniform on `[-1, 1]`.
    fn unit_walk<S: UnitStream + ?Sized>(&self, rng: &mut S) -> Result<Self::Gene>;
    fn init<S: UnitStream + ?Sized>(
        &self,
        rng: &mut S,
        bounds: &encoding::BoundsBox,
    ) -> Result<Vec<Self::Gene>>;
    fn decode(&self, genes: &[Self::Gene], bounds: &encoding::BoundsBox) -> Vec<f64>;
    fn to_genotype(&self, genes: &[Self::Gene]) -> Genotype;
}

/// Real-valued genes; decode clamps into the box.
#[derive(Debug, Clone, Copy, Default)]
pub struct RealCoding;

fn finite(v: f64, op: &'static str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NumericRange { op })
    }
}

impl Representation for RealCoding {
    type Gene = f64;

    fn mode(&self) -> EncodingMode {
        EncodingMode::Real
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn add(&self, a: &f64, b: &f64) -> Result<f64> {
        finite(a + b, "add")
    }
    fn sub(&self, a: &f64, b: &f64) -> Result<f64> {
        finite(a - b, "sub")
    }
    fn scale(&self, s: f64, g: &f64) -> Result<f64> {
        finite(s * g, "scale")
    }
    fn unit_walk<S: UnitStream + ?Sized>(&self, rng: &mut S) -> Result<f64> {
        Ok(rng.uniform(-1.0, 1.0))
    }
    fn init<S: UnitStream + ?Sized>(
        &self,
        rng: &mut S,
        bounds: &encoding::BoundsBox,
    ) -> Result<Vec<f64>> {
        Ok(encoding::init_real(rng, bounds))
    }
    fn decode(&self, genes: &[f64], bounds: &encoding::BoundsBox) -> Vec<f64> {
        encoding::decode_real(genes, bounds)
    }
    fn to_genotype(&self, genes: &[f64]) -> Genotype {
        Genotype::Real(genes.to_vec())
    }
}

/// Quaternion genes decoded through the norm.
///
/// The component mask restricts which of `(w, x, y, z)` receive random
/// values, at initialization and in the local walk. The default mask uses all
/// four; [`ComponentMask::SCALAR`] pins the imaginary parts to zero.
#[derive(Debug, Clone, Copy)]
pub struct QuaternionCoding {
    mode: EncodingMode,
    mask: ComponentMask,
}

impl QuaternionCoding {
    pub fn new(mode: EncodingMode) -> Result<Self> {
        Self::with_mask(mode, ComponentMask::ALL)
    }

    pub fn with_mask(mode: EncodingMode, mask: ComponentMask) -> Result<Self> {
        if !mode.is_quaternion() {
            return Err(Error::UnsupportedEncoding {
                algorithm: AlgorithmId::Qba.to_string(),
                mode: mode.to_string(),
            });
        }
        if mask.active() == 0 {
            return Err(Error::InvalidConfig(
                "component mask selects nothing".into(),
            ));
        }
        Ok(Self { mode, mask })
    }

    pub fn mask(&self) -> ComponentMask {
        self.mask
    }
}

impl Representation for QuaternionCoding {
    type Gene = Quaternion;

    fn mode(&self) -> EncodingMode {
        self.mode
    }
    fn zero(&self) -> Quaternion {
        Quaternion::ZERO
    }
    fn add(&self, a: &Quaternion, b: &Quaternion) -> Result<Quaternion> {
        a.try_add(b)
    }
    fn sub(&self, a: &Quaternion, b: &Quaternion) -> Result<Quaternion> {
        a.try_sub(b)
    }
    fn scale(&self, s: f64, g: &Quaternion) -> Result<Quaternion> {
        g.try_scale(s)
    }
    fn unit_walk<S: UnitStream + ?Sized>(&self, rng: &mut S) -> Result<Quaternion> {
        Quaternion::random_masked(rng, 1.0, self.mask)
    }
    fn init<S: UnitStream + ?Sized>(
        &self,
        rng: &mut S,
        bounds: &encoding::BoundsBox,
    ) -> Result<Vec<Quaternion>> {
        encoding::init_quat(rng, bounds, self.mode, self.mask)
    }
    fn decode(&self, genes: &[Quaternion], bounds: &encoding::BoundsBox) -> Vec<f64> {
        encoding::decode_quat(genes, bounds, self.mode)
    }
    fn to_genotype(&self, genes: &[Quaternion]) -> Genotype {
        Genotype::Quat(genes.to_vec())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bat<G> {
    pub position: Vec<G>,
    pub velocity: Vec<G>,
    pub phenotype: Vec<f64>,
    pub fitness: f64,
    pub loudness: f64,
    pub pulse_rate: f64,
}

#[derive(Debug, Clone)]
pub struct BatSwarm<R: Representation> {
    coding: R,
    params: BatParams,
    bats: Vec<Bat<R::Gene>>,
    best: Vec<R::Gene>,
    best_fitness: f64,
    generation: usize,
}

impl<R: Representation> BatSwarm<R> {
    /// Random initial swarm of `size` bats, each evaluated once.
    pub fn initialize<S: UnitStream + ?Sized>(
        coding: R,
        params: BatParams,
        size: usize,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<Self> {
        let bounds = evaluator.problem().bounds();
        let positions = (0..size)
            .map(|_| coding.init(rng, bounds))
            .collect::<Result<Vec<_>>>()?;
        Self::from_positions(coding, params, positions, evaluator)
    }

    /// Swarm starting from the given positions with zero velocity, full
    /// loudness and zero pulse rate. Each position is evaluated once.
    pub fn from_positions(
        coding: R,
        params: BatParams,
        positions: Vec<Vec<R::Gene>>,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidConfig("empty swarm".into()));
        }
        let bounds = evaluator.problem().bounds();
        let mut bats = Vec::with_capacity(positions.len());
        for position in positions {
            bounds.check_dim(position.len())?;
            let phenotype = coding.decode(&position, bounds);
            let fitness = evaluator.evaluate(&phenotype)?;
            bats.push(Bat {
                velocity: vec![coding.zero(); position.len()],
                position,
                phenotype,
                fitness,
                loudness: params.loudness0,
                pulse_rate: 0.0,
            });
        }
        let leader = bats.iter().enumerate().fold(0, |best, (i, b)| {
            if b.fitness < bats[best].fitness {
                i
            } else {
                best
            }
        });
        Ok(Self {
            best: bats[leader].position.clone(),
            best_fitness: bats[leader].fitness,
            coding,
            params,
            bats,
            generation: 0,
        })
    }

    pub fn bats(&self) -> &[Bat<R::Gene>] {
        &self.bats
    }

    /// Direct state access, for scripted scenarios.
    pub fn bats_mut(&mut self) -> &mut [Bat<R::Gene>] {
        &mut self.bats
    }

    pub fn best(&self) -> &[R::Gene] {
        &self.best
    }

    pub fn best_genotype(&self) -> Genotype {
        self.coding.to_genotype(&self.best)
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn mean_loudness(&self) -> f64 {
        self.bats.iter().map(|b| b.loudness).sum::<f64>() / self.bats.len() as f64
    }

    /// One generation. Returns early, mid-generation if need be, once the
    /// evaluation budget is spent.
    pub fn step<S: UnitStream + ?Sized>(
        &mut self,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<()> {
        self.generation += 1;
        let t = self.generation as f64;
        let p = self.params;
        let bounds = evaluator.problem().bounds();
        let coding = &self.coding;

        for i in 0..self.bats.len() {
            if !evaluator.has_budget() {
                break;
            }
            let freq = p.f_min + (p.f_max - p.f_min) * rng.next_unit();
            let mut candidate = Vec::with_capacity(self.best.len());
            {
                let bat = &mut self.bats[i];
                for j in 0..bat.position.len() {
                    let pull = coding.scale(freq, &coding.sub(&bat.position[j], &self.best[j])?)?;
                    bat.velocity[j] = coding.add(&bat.velocity[j], &pull)?;
                    candidate.push(coding.add(&bat.position[j], &bat.velocity[j])?);
                }
            }

            if rng.next_unit() > self.bats[i].pulse_rate {
                let mean_loudness = self.mean_loudness();
                for (c, b) in candidate.iter_mut().zip(&self.best) {
                    let step = coding.scale(mean_loudness, &coding.unit_walk(rng)?)?;
                    *c = coding.add(b, &step)?;
                }
            }

            let phenotype = coding.decode(&candidate, bounds);
            let fitness = evaluator.evaluate(&phenotype)?;

            let bat = &mut self.bats[i];
            if rng.next_unit() < bat.loudness && fitness <= bat.fitness {
                bat.position.clone_from(&candidate);
                bat.phenotype = phenotype;
                bat.fitness = fitness;
                bat.loudness = (p.alpha * bat.loudness).max(f64::MIN_POSITIVE);
                bat.pulse_rate = p.pulse_rate0 * (1.0 - (-p.gamma * t).exp());
            }
            if fitness <= self.best_fitness {
                self.best = candidate;
                self.best_fitness = fitness;
            }
        }
        Ok(())
    }

    /// Steps until the budget is spent.
    pub fn run_to_budget<S: UnitStream + ?Sized>(
        &mut self,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<()> {
        while evaluator.has_budget() {
            self.step(rng, evaluator)?;
        }
        Ok(())
    }
}

impl<R: Representation> Population for BatSwarm<R> {
    fn phenotypes(&self) -> Vec<Vec<f64>> {
        self.bats.iter().map(|b| b.phenotype.clone()).collect()
    }
}

fn run_with<R: Representation, S: UnitStream, N: UnitStream>(
    algorithm: AlgorithmId,
    coding: R,
    problem: &crate::problems::Problem,
    cfg: &AlgoConfig,
    streams: &mut Streams<S, N>,
) -> Result<RunRecord> {
    cfg.validate(algorithm)?;
    let started = Instant::now();
    let mut evaluator = Evaluator::new(
        problem,
        &mut streams.noise,
        cfg.max_evaluations,
        cfg.cadence(),
    );
    let mut swarm = BatSwarm::initialize(
        coding,
        cfg.bat,
        cfg.population_size,
        &mut streams.search,
        &mut evaluator,
    )?;
    swarm.run_to_budget(&mut streams.search, &mut evaluator)?;
    Ok(evaluator.finish(algorithm, cfg, streams.seed, started))
}

/// Canonical bat algorithm; requires the `real` encoding.
pub fn run_ba<S: UnitStream, N: UnitStream>(
    problem: &crate::problems::Problem,
    cfg: &AlgoConfig,
    streams: &mut Streams<S, N>,
) -> Result<RunRecord> {
    run_with(AlgorithmId::Ba, RealCoding, problem, cfg, streams)
}

/// Quaternion bat algorithm; requires a quaternion encoding.
pub fn run_qba<S: UnitStream, N: UnitStream>(
    problem: &crate::problems::Problem,
    cfg: &AlgoConfig,
    streams: &mut Streams<S, N>,
) -> Result<RunRecord> {
    cfg.validate(AlgorithmId::Qba)?;
    let coding = QuaternionCoding::new(cfg.encoding)?;
    run_with(AlgorithmId::Qba, coding, problem, cfg, streams)
}
