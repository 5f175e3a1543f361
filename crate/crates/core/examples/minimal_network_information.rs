//! Minimal tripartite information over local measurements for GHZ-like
//! states, and the resulting increase indicator.

use infonet::optimize::{delta_indicator, i_min_network, NetworkFamily, OptimizerConfig};
use infonet::quantum::CanonicalFamily;

fn main() -> infonet::Result<()> {
    let cfg = OptimizerConfig::default();
    for l1sq in [0.1, 0.5, 0.9] {
        let fam = NetworkFamily::Canonical {
            family: CanonicalFamily::E4,
            params: vec![f64::sqrt(l1sq), f64::sqrt(1.0 - l1sq)],
        };
        let r = i_min_network(&fam, &cfg)?;
        println!("lambda1^2 = {l1sq}: I_min = {:.4}, delta = {:.4}", r.value.value(), delta_indicator(&r).value());
    }
    let chain = i_min_network(&NetworkFamily::Chain { seed: 7 }, &cfg)?;
    println!("random chain: I_min = {:.4}", chain.value.value());
    Ok(())
}
