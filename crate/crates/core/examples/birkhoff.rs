//! Circulant doubly stochastic lifts of a chain post-processing and their
//! decomposition into permutations.

use infonet::probtab::{birkhoff_decomposition, families};
use infonet::witness::chain_compatible;

fn main() -> infonet::Result<()> {
    let plan = chain_compatible(&families::fig1(), 1e-9)?;
    for (c, lift) in plan.doubly_stochastic_lifts()?.iter().enumerate() {
        println!("column {c}: {:?}", lift.rows());
        for (w, perm) in birkhoff_decomposition(lift)? {
            println!("  {w:.3} x {perm:?}");
        }
    }
    Ok(())
}
