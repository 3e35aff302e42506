//! Artificial bee colony, stepped phase by phase.

use quatswarm::algorithms::{AlgoConfig, BeeColony, Evaluator, Streams};
use quatswarm::problems::{Function, Problem};
use quatswarm::Result;

fn main() -> Result<()> {
    let problem = Problem::new(Function::Rastrigin, 5)?;
    let mut cfg = AlgoConfig::for_dimension(5);
    cfg.abc.limit = Some(40);
    let mut streams = Streams::from_seed(12);
    let mut ev = Evaluator::new(
        &problem,
        &mut streams.noise,
        cfg.max_evaluations,
        cfg.cadence(),
    );
    let mut colony = BeeColony::initialize(&cfg, &mut streams.search, &mut ev)?;
    println!(
        "{} food sources, limit {}",
        colony.sources().len(),
        colony.limit()
    );

    let mut cycle = 0;
    while ev.has_budget() {
        colony.step(&mut streams.search, &mut ev)?;
        cycle += 1;
        if cycle % 25 == 0 {
            let stalled = colony.sources().iter().filter(|s| s.trials > 0).count();
            println!(
                "cycle {cycle:>3}: {:>5} evaluations, best {:.4e}, {stalled} sources without recent improvement",
                ev.used(),
                ev.best_fitness().unwrap()
            );
        }
    }
    Ok(())
}
