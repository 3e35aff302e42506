//! DE/rand/1/bin.
//!
//! Draw order per target `i`: three partner indices by rejection (each
//! distinct from `i` and from each other), the forced coordinate `j_rand`,
//! then one crossover draw per coordinate. Trials are clamped into the box
//! and replace their target when at least as good. Replacement is
//! generational: all trials of a generation are built from the previous one.

use std::time::Instant;

use crate::algorithms::{AlgoConfig, AlgorithmId, Evaluator, Population, RunRecord, Streams};
use crate::encoding::{self, BoundsBox};
use crate::error::Result;
use crate::problems::Problem;
use crate::rng::UnitStream;

/// `base + f·(a - b)`, coordinatewise.
pub fn mutant(base: &[f64], a: &[f64], b: &[f64], f: f64) -> Vec<f64> {
    base.iter()
        .zip(a.iter().zip(b))
        .map(|(x, (p, q))| x + f * (p - q))
        .collect()
}

/// Binomial crossover. Coordinate `j` comes from the mutant when its draw is
/// below `cr` or `j == j_rand`.
pub fn binomial_crossover<S: UnitStream + ?Sized>(
    target: &[f64],
    mutant: &[f64],
    cr: f64,
    j_rand: usize,
    rng: &mut S,
) -> Vec<f64> {
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (&t, &m))| {
            let take = rng.next_unit() < cr;
            if take || j == j_rand {
                m
            } else {
                t
            }
        })
        .collect()
}

/// Three distinct indices in `0..n`, all different from `target`.
pub fn distinct_partners<S: UnitStream + ?Sized>(
    rng: &mut S,
    n: usize,
    target: usize,
) -> [usize; 3] {
    debug_assert!(n >= 4);
    let mut picked = [usize::MAX; 3];
    for k in 0..3 {
        picked[k] = loop {
            let r = rng.index(n);
            if r != target && !picked[..k].contains(&r) {
                break r;
            }
        };
    }
    picked
}

#[derive(Debug, Clone)]
pub struct DifferentialEvolution {
    f: f64,
    cr: f64,
    members: Vec<Vec<f64>>,
    fitness: Vec<f64>,
}

impl DifferentialEvolution {
    pub fn initialize<S: UnitStream + ?Sized>(
        cfg: &AlgoConfig,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<Self> {
        let bounds = evaluator.problem().bounds();
        let members: Vec<_> = (0..cfg.population_size)
            .map(|_| encoding::init_real(rng, bounds))
            .collect();
        let fitness = members
            .iter()
            .map(|m| evaluator.evaluate(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            f: cfg.de.f,
            cr: cfg.de.cr,
            members,
            fitness,
        })
    }

    pub fn members(&self) -> &[Vec<f64>] {
        &self.members
    }

    pub fn fitness(&self) -> &[f64] {
        &self.fitness
    }

    pub fn step<S: UnitStream + ?Sized>(
        &mut self,
        rng: &mut S,
        evaluator: &mut Evaluator<'_>,
    ) -> Result<()> {
        let bounds: &BoundsBox = evaluator.problem().bounds();
        let n = self.members.len();
        let dim = bounds.dim();
        let mut next = self.members.clone();
        let mut next_fitness = self.fitness.clone();

        for i in 0..n {
            if !evaluator.has_budget() {
                break;
            }
            let [r1, r2, r3] = distinct_partners(rng, n, i);
            let j_rand = rng.index(dim);
            let v = mutant(
                &self.members[r1],
                &self.members[r2],
                &self.members[r3],
                self.f,
            );
            let trial = binomial_crossover(&self.members[i], &v, self.cr, j_rand, rng);
            let trial = encoding::decode_real(&trial, bounds);
            let fitness = evaluator.evaluate(&trial)?;
            if fitness <= self.fitness[i] {
                next[i] = trial;
                next_fitness[i] = fitness;
            }
        }
        self.members = next;
        self.fitness = next_fitness;
        Ok(())
    }
}

impl Population for DifferentialEvolution {
    fn phenotypes(&self) -> Vec<Vec<f64>> {
        self.members.clone()
    }
}

pub fn run_de<S: UnitStream, N: UnitStream>(
    problem: &Problem,
    cfg: &AlgoConfig,
    streams: &mut Streams<S, N>,
) -> Result<RunRecord> {
    cfg.validate(AlgorithmId::De)?;
    let started = Instant::now();
    let mut evaluator = Evaluator::new(
        problem,
        &mut streams.noise,
        cfg.max_evaluations,
        cfg.cadence(),
    );
    let mut de = DifferentialEvolution::initialize(cfg, &mut streams.search, &mut evaluator)?;
    while evaluator.has_budget() {
        de.step(&mut streams.search, &mut evaluator)?;
    }
    Ok(evaluator.finish(AlgorithmId::De, cfg, streams.seed, started))
}
