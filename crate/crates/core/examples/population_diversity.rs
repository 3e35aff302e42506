//! Population diversity per generation: bat swarm, quaternion bat swarm and
//! differential evolution on Rastrigin.

use quatswarm::algorithms::{
    AlgoConfig, BatSwarm, DifferentialEvolution, Evaluator, Population, QuaternionCoding,
    RealCoding, Streams,
};
use quatswarm::encoding::EncodingMode;
use quatswarm::problems::{Function, Problem};
use quatswarm::stats::diversity;
use quatswarm::Result;

fn main() -> Result<()> {
    let problem = Problem::new(Function::Rastrigin, 10)?;
    let cfg = AlgoConfig::for_dimension(10);
    let generations = 300;
    let report_every = 50;

    let mut streams = Streams::from_seed(4);
    let mut ev = Evaluator::new(&problem, &mut streams.noise, usize::MAX, cfg.cadence());
    let mut ba = BatSwarm::initialize(
        RealCoding,
        cfg.bat,
        cfg.population_size,
        &mut streams.search,
        &mut ev,
    )?;
    let mut ba_div = Vec::new();
    for g in 0..generations {
        ba.step(&mut streams.search, &mut ev)?;
        if g % report_every == 0 {
            ba_div.push((diversity(&ba.phenotypes())?, ba.best_fitness()));
        }
    }

    let mut streams = Streams::from_seed(4);
    let mut ev = Evaluator::new(&problem, &mut streams.noise, usize::MAX, cfg.cadence());
    let coding = QuaternionCoding::new(EncodingMode::QuatShiftedNorm)?;
    let mut qba = BatSwarm::initialize(
        coding,
        cfg.bat,
        cfg.population_size,
        &mut streams.search,
        &mut ev,
    )?;
    let mut qba_div = Vec::new();
    for g in 0..generations {
        qba.step(&mut streams.search, &mut ev)?;
        if g % report_every == 0 {
            qba_div.push((diversity(&qba.phenotypes())?, qba.best_fitness()));
        }
    }

    let mut streams = Streams::from_seed(4);
    let mut ev = Evaluator::new(&problem, &mut streams.noise, usize::MAX, cfg.cadence());
    let mut de = DifferentialEvolution::initialize(&cfg, &mut streams.search, &mut ev)?;
    let mut de_div = Vec::new();
    for g in 0..generations {
        de.step(&mut streams.search, &mut ev)?;
        if g % report_every == 0 {
            de_div.push((
                diversity(&de.phenotypes())?,
                de.fitness().iter().cloned().fold(f64::MAX, f64::min),
            ));
        }
    }

    println!(
        "{:>5}  {:>22}  {:>22}  {:>22}",
        "gen", "ba (div, best)", "qba (div, best)", "de (div, best)"
    );
    for (n, ((b, q), d)) in ba_div.iter().zip(&qba_div).zip(&de_div).enumerate() {
        println!(
            "{:>5}  {:>10.3e} {:>11.3e}  {:>10.3e} {:>11.3e}  {:>10.3e} {:>11.3e}",
            n * report_every,
            b.0,
            b.1,
            q.0,
            q.1,
            d.0,
            d.1
        );
    }
    Ok(())
}
