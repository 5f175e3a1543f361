//! Splits the eight-point distribution into a perfectly correlated pair and
//! a chain-compatible factor, giving a triangle model.

use infonet::probtab::{families, io};
use infonet::witness::triangle_decomposition_search;

fn main() -> infonet::Result<()> {
    let p = families::eq14();
    match triangle_decomposition_search(&p, 4, 1e-9)? {
        Some(d) => {
            println!("residual {:.1e}, second factor {:?}", d.residual, d.second_case);
            println!("shared pair: {}", io::to_json_string(&d.first));
            println!("chain factor: {}", io::to_json_string(&d.second));
            for x in 0..4 {
                println!("x = {x} -> {:?}", d.split_x(x));
            }
        }
        None => println!("no decomposition"),
    }
    let ghz = families::ghz_type(0.5)?;
    println!("GHZ-type decomposes: {}", triangle_decomposition_search(&ghz, 4, 1e-9)?.is_some());
    Ok(())
}
