//! Acceptance suite: runs every verification criterion and prints one
//! pass/fail line per item (also reachable as `branchkit verify-paper`).
//!
//! Set `BRANCHKIT_CRITERIA=1,4` to restrict the run while debugging.

use std::io::Write;

#[test]
fn acceptance_criteria() {
    let ids: Vec<usize> = std::env::var("BRANCHKIT_CRITERIA")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect())
        .unwrap_or_default();
    let mut out = Vec::new();
    let ok = branchkit::verify::run_criteria(&ids, false, &mut out).unwrap();
    std::io::stdout().write_all(&out).unwrap();
    assert!(
        ok,
        "acceptance criteria failed:\n{}",
        String::from_utf8_lossy(&out)
    );
}
