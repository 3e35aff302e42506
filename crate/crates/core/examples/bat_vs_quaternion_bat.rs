//! The bat algorithm against its quaternion variant under both norm
//! encodings, 25 paired seeds per problem.

use quatswarm::algorithms::{run_seeded, AlgoConfig, AlgorithmId};
use quatswarm::encoding::EncodingMode;
use quatswarm::problems::{Function, Problem};
use quatswarm::stats::{ranksum, summarize};
use quatswarm::Result;

fn finals(algorithm: AlgorithmId, problem: &Problem, mode: EncodingMode) -> Result<Vec<f64>> {
    let cfg = AlgoConfig::for_dimension(problem.dim()).with_encoding(mode);
    (1..=25)
        .map(|seed| Ok(run_seeded(algorithm, problem, &cfg, seed)?.final_best_fitness))
        .collect()
}

fn main() -> Result<()> {
    for f in [
        Function::Sphere,
        Function::Ackley,
        Function::Griewank,
        Function::Zakharov,
    ] {
        let problem = Problem::new(f, 10)?;
        let ba = finals(AlgorithmId::Ba, &problem, EncodingMode::Real)?;
        println!("{f}: ba mean {:.4e}", summarize(&ba)?.mean);
        for mode in [EncodingMode::QuatNorm, EncodingMode::QuatShiftedNorm] {
            let qba = finals(AlgorithmId::Qba, &problem, mode)?;
            let test = ranksum(&qba, &ba)?;
            println!(
                "  qba {mode:<18} mean {:.4e}  p = {:.3e}  {:?}",
                summarize(&qba)?.mean,
                test.p_value,
                test.direction
            );
        }
    }
    Ok(())
}
