//! Artificial bee colony.
//!
//! `population_size / 2` food sources. Each cycle runs an employed phase (one
//! neighbour move per source), an onlooker phase (as many moves, on sources
//! picked by roulette over the fitness weights) and a scout phase (every
//! source whose trial counter exceeds `limit` is re-initialized).
//!
//! A neighbour move draws, in order: partner `k != i` by rejection, the
//! coordinate `j`, and `φ` uniform on `[-1, 1]`; then
//! `v_ij = x_ij + φ·(x_ij - x_kj)`, clamped. The candidate replaces the source
//! when at least as good. The trial counter resets only on strict
//! improvement and is incremented otherwise.

use std::time::Instant;

use crate::algorithms::{AlgoConfig, AlgorithmId, Evaluator, Population, RunRecord, Streams};
use crate::encoding;
use crate::error::Result;
use crate::problems::Problem;
use crate::rng::UnitStream;

/// Roulette weight of a food source: `1/(1+f)` for `f >= 0`, else `1+|f|`.
pub fn fitness_weight(f: f64) -> f64 {
    if f >= 0.0 {
        1.0 / (1.0 + f)
    } else {
        1.0 + f.abs()
    }
}

/// Onlooker selection probabilities, proportional to [`fitness_weight`].
pub fn selection_probabilities(fitness: &[f64]) -> Vec<f64> {
    let weights: Vec<f64> = fitness.iter().map(|&f| fitness_weight(f)).collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

fn roulette(probabilities: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probabilities.len() - 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoodSource {
    pub position: Vec<f64>,
    pub fitness: f64,
    pub trials: usize,
}

#[derive(Debug, Clone)]
pub struct BeeColony {
    sources: Vec<FoodSource>,
    limit: usize,
}

impl BeeColony {
    pub fn initialize<S: UnitStream + ?Sized>(
        cfg: &AlgoConfig,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<Self> {
        let bounds = evaluator.problem().bounds();
        let count = cfg.population_size / 2;
        let limit = cfg.abc.limit.unwrap_or(count * bounds.dim());
        let mut sources = Vec::with_capacity(count);
        for _ in 0..count {
            let position = encoding::init_real(rng, bounds);
            let fitness = evaluator.evaluate(&position)?;
            sources.push(FoodSource {
                position,
                fitness,
                trials: 0,
            });
        }
        Ok(Self { sources, limit })
    }

    pub fn sources(&self) -> &[FoodSource] {
        &self.sources
    }

    pub fn sources_mut(&mut self) -> &mut [FoodSource] {
        &mut self.sources
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// One neighbour move on source `i`, evaluated and greedily selected.
    pub fn explore<S: UnitStream + ?Sized>(
        &mut self,
        i: usize,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<()> {
        let n = self.sources.len();
        let k = loop {
            let k = rng.index(n);
            if k != i {
                break k;
            }
        };
        let bounds = evaluator.problem().bounds();
        let j = rng.index(bounds.dim());
        let phi = rng.uniform(-1.0, 1.0);
        let mut candidate = self.sources[i].position.clone();
        let (xij, xkj) = (candidate[j], self.sources[k].position[j]);
        candidate[j] = xij + phi * (xij - xkj);
        let candidate = encoding::decode_real(&candidate, bounds);
        let fitness = evaluator.evaluate(&candidate)?;

        let source = &mut self.sources[i];
        if fitness < source.fitness {
            source.trials = 0;
        } else {
            source.trials += 1;
        }
        if fitness <= source.fitness {
            source.position = candidate;
            source.fitness = fitness;
        }
        Ok(())
    }

    pub fn employed_phase<S: UnitStream + ?Sized>(
        &mut self,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<()> {
        for i in 0..self.sources.len() {
            if !evaluator.has_budget() {
                break;
            }
            self.explore(i, rng, evaluator)?;
        }
        Ok(())
    }

    pub fn onlooker_phase<S: UnitStream + ?Sized>(
        &mut self,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<()> {
        let fitness: Vec<f64> = self.sources.iter().map(|s| s.fitness).collect();
        let probabilities = selection_probabilities(&fitness);
        for _ in 0..self.sources.len() {
            if !evaluator.has_budget() {
                break;
            }
            let i = roulette(&probabilities, rng.next_unit());
            self.explore(i, rng, evaluator)?;
        }
        Ok(())
    }

    pub fn scout_phase<S: UnitStream + ?Sized>(
        &mut self,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<()> {
        let bounds = evaluator.problem().bounds();
        for source in &mut self.sources {
            if source.trials <= self.limit {
                continue;
            }
            if !evaluator.has_budget() {
                break;
            }
            source.position = encoding::init_real(rng, bounds);
            source.fitness = evaluator.evaluate(&source.position)?;
            source.trials = 0;
        }
        Ok(())
    }

    pub fn step<S: UnitStream + ?Sized>(
        &mut self,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<()> {
        self.employed_phase(rng, evaluator)?;
        self.onlooker_phase(rng, evaluator)?;
        self.scout_phase(rng, evaluator)
    }
}

impl Population for BeeColony {
    fn phenotypes(&self) -> Vec<Vec<f64>> {
        self.sources.iter().map(|s| s.position.clone()).collect()
    }
}

pub fn run_abc<S: UnitStream, N: UnitStream>(
    problem: &Problem,
    cfg: &AlgoConfig,
    streams: &mut Streams<S, N>,
) -> Result<RunRecord> {
    cfg.validate(AlgorithmId::Abc)?;
    let started = Instant::now();
    let mut evaluator = Evaluator::new(
        problem,
        &mut streams.noise,
        cfg.max_evaluations,
        cfg.cadence(),
    );
    let mut colony = BeeColony::initialize(cfg, &mut streams.search, &mut evaluator)?;
    while evaluator.has_budget() {
        colony.step(&mut streams.search, &mut evaluator)?;
    }
    Ok(evaluator.finish(AlgorithmId::Abc, cfg, streams.seed, started))
}
