//! Entropic and Finner-type witnesses on GHZ- and W-type distributions, and
//! the mixture thresholds where they switch on.

use infonet::probtab::families;
use infonet::witness::{evaluate_inequalities, scan_mixture_threshold, ScanKind};

fn main() -> infonet::Result<()> {
    for (name, p) in [("ghz", families::ghz_type(0.5)?), ("w", families::w_type(1.0 / 3.0, 1.0 / 3.0)?)] {
        let r = evaluate_inequalities(&p, 1e-9)?;
        println!(
            "{name}: I = {:.4}, slack19 = {:.4}, slack20 = {:.4}, finner {} -> triangle {:?} {:?}",
            r.tripartite, r.slack19, r.slack20, r.finner_ok, r.triangle, r.triangle_reasons
        );
    }
    for kind in [ScanKind::InfoSign, ScanKind::Witness] {
        let t = scan_mixture_threshold(kind, 1000, 1e-4)?;
        println!("{kind}: threshold {:?} binding {:?}", t.threshold, t.binding);
    }
    Ok(())
}
