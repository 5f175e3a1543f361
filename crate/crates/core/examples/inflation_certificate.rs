//! Inflation certificates for four-point W-type families, validated by
//! recomputation, and the behaviour on a classical triangle sample.

use infonet::inflation::{
    certify_triangle_incompatibility, certify_triangle_incompatibility_paired, extract_implications,
    validate_certificate,
};
use infonet::probtab::families::{self, W4Kind};
use infonet::probtab::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> infonet::Result<()> {
    for kind in W4Kind::ALL {
        let p = families::w4(kind, [0.25; 4])?;
        let verdict = certify_triangle_incompatibility(&p)?;
        let cert = verdict.certificate().expect("four-point families are certified");
        validate_certificate(&p, cert)?;
        println!("{kind}: {} implications, {}", extract_implications(&p)?.len(), cert.to_json());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = random::classical_triangle(&mut rng, 3, 2)?;
    println!("classical triangle: {}", certify_triangle_incompatibility_paired(&p)?.to_json());
    Ok(())
}
