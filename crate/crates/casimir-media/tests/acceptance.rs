//! End-to-end acceptance gate.
//!
//! Runs every criterion in the validation suite at the pinned default
//! tolerances and prints one line per criterion so a failing run shows the
//! full scoreboard, not just the first assertion.

use casimir_media::quadrature::QuadratureConfig;
use casimir_media::validation::run_suite;

#[test]
fn acceptance_suite() {
    let outcomes = run_suite(&QuadratureConfig::default());
    let mut failures = 0usize;
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {detail}", name = o.name, detail = o.detail);
        if !o.passed {
            failures += 1;
        }
    }
    assert_eq!(
        failures,
        0,
        "{failures} of {} acceptance criteria failed",
        outcomes.len()
    );
}
