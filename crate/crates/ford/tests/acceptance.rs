//! Full-scale verification sweep at the pinned scopes. Run with
//! `--nocapture` to see the per-check report lines.

use ford::verify::{all_passed, run_all, DEFAULT_SEED};

#[test]
fn full_verification_suite() {
    let reports = run_all(DEFAULT_SEED);
    for report in &reports {
        println!("{report}");
    }
    assert!(all_passed(&reports), "at least one verification check failed");
}
