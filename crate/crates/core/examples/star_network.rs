//! Three leaves sharing EPR-like pairs with a centre that measures in a
//! Fourier or GHZ-diagonal basis.

use infonet::quantum::{star_network_distribution, StarMode};
use infonet::shannon::multivariate_information;

fn main() -> infonet::Result<()> {
    let leaves: [&[&str]; 3] = [&["X1"], &["X2"], &["X3"]];
    for mode in [StarMode::Fourier, StarMode::GhzSwap] {
        for thetas in [[0.5, 0.7, 0.5], [std::f64::consts::FRAC_PI_4; 3]] {
            let p = star_network_distribution(thetas, mode)?;
            let free = multivariate_information(&p, &leaves, &[])?.value();
            let given = multivariate_information(&p, &leaves, &["Y"])?.value();
            println!("{mode:?} {thetas:.3?}: I(X1;X2;X3) = {free:.4}, given Y = {given:.4}");
        }
    }
    Ok(())
}
