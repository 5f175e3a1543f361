//! One test per acceptance criterion. Each prints a single PASS/FAIL line.

use infonet::acceptance::run_criterion;

fn check(id: u8) {
    let report = run_criterion(id);
    println!("{report}");
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_01_xor_triple() {
    check(1);
}

#[test]
fn criterion_02_markov_chains_nonnegative() {
    check(2);
}

#[test]
fn criterion_03_w_type_closed_form() {
    check(3);
}

#[test]
fn criterion_04_ghz_type_excluded() {
    check(4);
}

#[test]
fn criterion_05_mixture_thresholds() {
    check(5);
}

#[test]
fn criterion_06_w_type_witness_gap() {
    check(6);
}

#[test]
fn criterion_07_inflation_certificates() {
    check(7);
}

#[test]
fn criterion_08_chain_rigidity() {
    check(8);
}

#[test]
fn criterion_09_local_channel_extrema() {
    check(9);
}

#[test]
fn criterion_10_minimal_network_information() {
    check(10);
}

#[test]
fn criterion_11_star_networks() {
    check(11);
}

#[test]
fn criterion_12_eight_point_distribution() {
    check(12);
}

#[test]
fn criterion_13_four_point_closed_forms() {
    check(13);
}
