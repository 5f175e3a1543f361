//! Prints the pass/fail line of every acceptance criterion.

fn main() {
    for report in infonet::acceptance::run_all() {
        println!("{report}");
    }
}
