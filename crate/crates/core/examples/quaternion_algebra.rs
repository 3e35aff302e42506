//! Hamilton products, conjugates and norms.

use quatswarm::rng::{seeded, SEARCH_STREAM};
use quatswarm::{Quaternion, Result};

fn main() -> Result<()> {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    println!("i*j = {}", i.try_mul(&j)?);
    println!("j*i = {}", j.try_mul(&i)?);
    println!("i*j*k = {}", i.try_mul(&j)?.try_mul(&k)?);

    let q = Quaternion::new(1.0, 2.0, 3.0, 4.0)?;
    println!("q = {q}, |q| = {:.6}", q.norm());
    println!("q * conj(q) = {}", q.try_mul(&q.conj())?);

    let mut rng = seeded(3, SEARCH_STREAM);
    let a = Quaternion::random(&mut rng, 2.0)?;
    let b = Quaternion::random(&mut rng, 2.0)?;
    println!(
        "|ab| = {:.12}, |a||b| = {:.12}",
        a.try_mul(&b)?.norm(),
        a.norm() * b.norm()
    );
    Ok(())
}
