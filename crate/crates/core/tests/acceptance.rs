//! End-to-end acceptance suite.
//!
//! One test per advertised guarantee, each delegating to the corresponding
//! `selfcheck` runner and printing a single PASS/FAIL line with its runtime
//! (visible under `cargo test --test acceptance -- --nocapture`). Every
//! check must both succeed and finish within its time budget.

use eccforge_core::selfcheck::{run_check, Check, CHECKS, DEFAULT_SEED};

fn run_named(name: &str) {
    let check: &Check = CHECKS
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("unknown check {name}"));
    let report = run_check(check, DEFAULT_SEED);
    let status = if report.passed { "PASS" } else { "FAIL" };
    println!(
        "{status} {name} ({:.2?} of {:.0?} budget): {}",
        report.elapsed, report.budget, report.detail
    );
    assert!(report.passed, "{name}: {}", report.detail);
    assert!(
        report.within_budget,
        "{name} took {:.2?}, budget is {:.0?}",
        report.elapsed, report.budget
    );
}

#[test]
fn cocktail_optima() {
    run_named("cocktail-optima");
}

#[test]
fn twin_cover_extension() {
    run_named("twin-cover-extension");
}

#[test]
fn last_twin_exhaustive() {
    run_named("last-twin-exhaustive");
}

#[test]
fn free_cover_families() {
    run_named("free-cover-families");
}

#[test]
fn assignment_to_cover() {
    run_named("assignment-to-cover");
}

#[test]
fn cover_to_assignment_round_trip() {
    run_named("cover-to-assignment-round-trip");
}

#[test]
fn solver_oracle_kernel_agreement() {
    run_named("solver-oracle-kernel-agreement");
}

#[test]
fn cocktail_kernel_immunity() {
    run_named("cocktail-kernel-immunity");
}

#[test]
fn size_and_budget_formulas() {
    run_named("size-and-budget-formulas");
}
