//! The ten benchmark problems, their domains and optima.

use quatswarm::problems::suite;
use quatswarm::rng::{seeded, UnitStream, NOISE_STREAM, SEARCH_STREAM};
use quatswarm::Result;

fn main() -> Result<()> {
    let mut rng = seeded(5, SEARCH_STREAM);
    let mut noise = seeded(5, NOISE_STREAM);
    println!(
        "{:<15} {:>4}  {:<20} {:>22}  random point",
        "problem", "D", "domain", "f*"
    );
    for p in suite(10)? {
        let x: Vec<f64> = p
            .bounds()
            .lower()
            .iter()
            .zip(p.bounds().upper())
            .map(|(&lo, &hi)| rng.uniform(lo, hi))
            .collect();
        println!("{}  {:.4e}", p.listing(), p.evaluate(&x, &mut noise)?);
    }
    Ok(())
}
