//! Extremes of the tripartite information of a W-type distribution under
//! local binary mixing channels.

use infonet::optimize::{extremize_under_local_channels, Direction, OptimizerConfig};
use infonet::probtab::families;
use infonet::shannon::tripartite_of;

fn main() -> infonet::Result<()> {
    let p = families::w_type(1.0 / 3.0, 1.0 / 3.0)?;
    let cfg = OptimizerConfig::default();
    println!("I at identity: {:.6}", tripartite_of(&p)?);
    for dir in [Direction::Max, Direction::Min] {
        let r = extremize_under_local_channels(&p, dir, &cfg)?;
        println!("{dir}: {} at {:.4?}", r.to_json_string(), r.argument);
    }
    Ok(())
}
