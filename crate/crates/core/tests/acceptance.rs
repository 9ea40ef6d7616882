//! Runs every end-to-end check with its time limit and prints one line each.

use k3cert::verify::{run_criterion, CRITERIA};
use k3cert::Status;

/// Seed recorded for the randomised checks and the quartic family.
const SEED: u64 = 7;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA {
        let r = run_criterion(id, SEED).unwrap();
        let pass = r.status == Status::Verified
            && r.time_limit_secs.is_none_or(|l| r.elapsed_secs <= l);
        println!(
            "criterion {:>2} [{}] {}: {} ({:.2}s) {}",
            r.id,
            r.name,
            if pass { "PASS" } else { "FAIL" },
            r.status,
            r.elapsed_secs,
            r.detail
        );
        if !pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}
