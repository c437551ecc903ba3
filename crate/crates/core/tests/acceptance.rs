//! Acceptance criteria 1-7: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ramcalc --test acceptance -- --nocapture` to see
//! the table.

use ramcalc::acceptance::{self, CriterionOutcome};

fn report(out: &CriterionOutcome) {
    println!("{}", out.line());
    for line in &out.log {
        println!("    {line}");
    }
}

#[test]
fn acceptance_criteria() {
    let outcomes = acceptance::run_all();
    for out in &outcomes {
        report(out);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
