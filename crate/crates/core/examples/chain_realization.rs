//! Classical and quantum chain models of a distribution whose end variables
//! are independent.

use infonet::probtab::{families, random};
use infonet::quantum::{born_distribution, chain_realization};
use infonet::witness::{chain_compatible, classify_case};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> infonet::Result<()> {
    let xor = families::fig1();
    let plan = chain_compatible(&xor, 1e-9)?;
    println!("xor: case {:?}", classify_case(&xor, 1e-9)?);
    println!("post-processing rows: {:?}", plan.post().rows());
    println!("classical round trip: {:.1e}", plan.round_trip_error(&xor)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = random::case_one(&mut rng, 3)?;
    let spec = chain_realization(&p, 1e-9)?;
    let q = born_distribution(&spec)?;
    println!("random {:?} distribution: quantum round trip {:.1e}", p.cards(), q.linf_distance(&p)?);

    match chain_compatible(&families::ghz_type(0.5)?, 1e-9) {
        Err(e) => println!("GHZ-type: {e}"),
        Ok(_) => unreachable!("GHZ-type has dependent ends"),
    }
    Ok(())
}
