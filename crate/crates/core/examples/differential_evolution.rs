//! DE/rand/1/bin on the sphere, and its building blocks.

use quatswarm::algorithms::de::{binomial_crossover, mutant};
use quatswarm::algorithms::{run_seeded, AlgoConfig, AlgorithmId};
use quatswarm::problems::{Function, Problem};
use quatswarm::rng::{seeded, SEARCH_STREAM};
use quatswarm::Result;

fn main() -> Result<()> {
    let v = mutant(&[1.0, 1.0], &[3.0, 3.0], &[1.0, 1.0], 0.5);
    let mut rng = seeded(1, SEARCH_STREAM);
    println!(
        "mutant {v:?}, trial {:?}",
        binomial_crossover(&[0.0, 0.0], &v, 0.5, 1, &mut rng)
    );

    let problem = Problem::new(Function::Sphere, 10)?;
    let mut cfg = AlgoConfig::for_dimension(10);
    cfg.population_size = 50;
    cfg.max_evaluations = 100_000;
    for seed in 1..=5 {
        let r = run_seeded(AlgorithmId::De, &problem, &cfg, seed)?;
        let at_10k = r.trace.iter().find(|c| c.evaluations >= 10_000).unwrap();
        println!(
            "seed {seed}: {:.3e} after {} evaluations, {:.3e} at the end",
            at_10k.best_fitness, at_10k.evaluations, r.final_best_fitness
        );
    }
    Ok(())
}
