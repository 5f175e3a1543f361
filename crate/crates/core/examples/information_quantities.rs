//! Entropies and mutual informations of the XOR distribution and of the
//! eight-point distribution over 4-valued variables.

use infonet::probtab::{families, io};
use infonet::shannon::{conditional_mutual_information, entropy, mutual_information, EntropyProfile};

fn main() -> infonet::Result<()> {
    let xor = families::fig1();
    println!("{}", io::to_json_string(&xor));
    let e = EntropyProfile::of(&xor)?;
    println!("I(X;Y) = {:.4}  I(X;Y|Z) = {:.4}  I(X;Y;Z) = {:.4}", e.i_xy(), e.i_xy_given_z(), e.tripartite());

    let p = families::eq14();
    println!("H(X,Y,Z) = {}", entropy(&p, &["X", "Y", "Z"])?);
    println!("I(X;Y) = {}", mutual_information(&p, &["X"], &["Y"])?);
    println!("I(X;Y|Z) = {}", conditional_mutual_information(&p, &["X"], &["Y"], &["Z"])?);

    // marginals and conditionals are ordinary tables again
    let xz = xor.marginalize(&["X", "Z"])?;
    let given = xor.condition("Z", 1)?;
    println!("P(X,Z) = {:?}", xz.probs());
    println!("P(X,Y | Z=1) = {:?}", given.probs());
    Ok(())
}
