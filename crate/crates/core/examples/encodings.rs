//! How genotypes map to evaluated points under each encoding.

use quatswarm::encoding::{decode, encode, init_genotype, BoundsBox, EncodingMode, Genotype};
use quatswarm::rng::{seeded, SEARCH_STREAM};
use quatswarm::{Quaternion, Result};

fn main() -> Result<()> {
    let bounds = BoundsBox::uniform(3, -5.0, 5.0)?;
    let g = Genotype::Quat(vec![
        Quaternion::new(3.0, 4.0, 0.0, 0.0)?,
        Quaternion::new(2.0, 0.0, 0.0, 0.0)?,
        Quaternion::new(0.0, 9.0, 9.0, 9.0)?,
    ]);
    for mode in [EncodingMode::QuatNorm, EncodingMode::QuatShiftedNorm] {
        println!("{mode:<18} {:?}", decode(&g, &bounds, mode)?);
    }

    // The norm loses the sign; the shifted norm does not.
    let x = [-2.0, 0.5, 4.0];
    for mode in EncodingMode::ALL {
        let back = decode(&encode(&x, &bounds, mode)?, &bounds, mode)?;
        println!("{mode:<18} {x:?} -> {back:?}");
    }

    let mut rng = seeded(1, SEARCH_STREAM);
    for mode in EncodingMode::ALL {
        let g = init_genotype(&mut rng, &bounds, mode)?;
        println!("init {mode:<13} {:?}", decode(&g, &bounds, mode)?);
    }
    Ok(())
}
