//! Markovian parents and the resulting DAG for two orderings of the XOR
//! distribution.

use infonet::bayesnet::{build_dag, is_markov_compatible, markovian_parents};
use infonet::probtab::families;

fn main() -> infonet::Result<()> {
    let p = families::fig1();
    for order in [["X", "Y", "Z"], ["Z", "X", "Y"]] {
        let dag = build_dag(&p, &order, 1e-9)?;
        println!("order {order:?}: {}", dag.to_json_string());
        println!("  compatible: {}", is_markov_compatible(&p, &dag, 1e-9)?);
    }
    println!("parents of Z after X, Y: {:?}", markovian_parents(&p, &["X", "Y", "Z"], 2, 1e-9)?);
    Ok(())
}
