//! One line per acceptance criterion, written to stderr so it shows up
//! under the default output capture.

use std::io::Write;

use montel_cli::selftest;

fn criterion(id: u8) {
    let r = selftest::run_by_id(id).expect("known criterion");
    let _ = writeln!(std::io::stderr(), "{}", selftest::format_line(&r));
    assert!(r.correct, "criterion {id} failed: {:?}", r.first_failure);
    assert!(r.within_limit, "criterion {id} exceeded {}s", r.limit_seconds);
}

#[test]
fn criterion_01_optimality_constant() {
    criterion(1);
}

#[test]
fn criterion_02_lattice_reconstruction() {
    criterion(2);
}

#[test]
fn criterion_03_interpolation_oracle() {
    criterion(3);
}

#[test]
fn criterion_04_montel_bound() {
    criterion(4);
}

#[test]
fn criterion_05_decomposition_round_trip() {
    criterion(5);
}

#[test]
fn criterion_06_strip_form_detection() {
    criterion(6);
}

#[test]
fn criterion_07_root_bounds() {
    criterion(7);
}

#[test]
fn criterion_08_density_certificates() {
    criterion(8);
}

#[test]
fn criterion_09_counterexamples() {
    criterion(9);
}

#[test]
fn criterion_10_djokovic_consistency() {
    criterion(10);
}
