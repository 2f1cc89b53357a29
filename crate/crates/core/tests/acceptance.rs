//! The eight acceptance criteria, each compared exactly.
//!
//! Run with `cargo test -p qk1-core --test acceptance -- --nocapture` to see
//! one line per criterion.

use qk1_core::report::CheckReport;
use qk1_core::verify::{run_check, VerifyConfig, CHECK_NAMES};

fn failing(r: &CheckReport, depth: usize, out: &mut Vec<String>) {
    for c in r.items.iter().filter(|c| !c.pass) {
        out.push(format!("{}{}: expected {} got {} (difference {})", "  ".repeat(depth), c.name, c.claimed, c.computed, c.difference));
        failing(c, depth + 1, out);
    }
}

fn criterion(i: usize) {
    let r = run_check(i, &VerifyConfig::default());
    assert_eq!(r.name, CHECK_NAMES[i]);
    println!("criterion {} {}: {}", i + 1, r.name, if r.pass { "PASS" } else { "FAIL" });
    let mut why = Vec::new();
    failing(&r, 1, &mut why);
    assert!(r.pass, "criterion {} failed:\n{}", i + 1, why.join("\n"));
}

#[test]
fn criterion_1_flagship_two_point() {
    criterion(0);
}

#[test]
fn criterion_2_tau_series() {
    criterion(1);
}

#[test]
fn criterion_3_transform_layer() {
    criterion(2);
}

#[test]
fn criterion_4_residue_goldens() {
    criterion(3);
}

#[test]
fn criterion_5_route_equivalence() {
    criterion(4);
}

#[test]
fn criterion_6_one_point_formula() {
    criterion(5);
}

#[test]
fn criterion_7_one_point_reconstruction() {
    criterion(6);
}

#[test]
fn criterion_8_kernel_properties() {
    criterion(7);
}
