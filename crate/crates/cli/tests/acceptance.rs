//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Two criteria cannot be met as stated and are expected to print FAIL:
//! 4 asks for sub-block rank 27, but two of its columns are identical, so the
//! rank is 26; 6 puts (3, 13) and (5, 31) in the oracle grid, where λ³ ≡ 1 and
//! the cubic is singular. The harness exits nonzero if any other criterion
//! fails, or if 4 and 6 fail for any reason beyond those.

use std::process::ExitCode;
use std::time::Duration;

use coble_core::enumerative::INTEGRALITY_TOLERANCE;
use coble_core::properties::DEFAULT_CASES;
use coble_core::verify::{run_all, CRITERIA};

/// Runtime budget per criterion, in seconds.
const BUDGETS: [(u8, Option<u64>); 11] = [
    (1, Some(5)),
    (2, Some(30)),
    (3, Some(10)),
    (4, Some(300)),
    (5, None),
    (6, Some(120)),
    (7, Some(1)),
    (8, Some(10)),
    (9, None),
    (10, Some(1)),
    (11, None),
];
const VERLINDE_TOLERANCE: f64 = 1e-6;
const MIN_PROPERTY_CASES: usize = 200;

/// Checks allowed to fail, by criterion.
const UNATTAINABLE: [(u8, &[&str]); 2] = [
    (4, &["shift sub-block rank", "shift sub-block kernel", "sub-block rank over Q(w)"]),
    (6, &["oracle lambda=3 p=13", "oracle lambda=5 p=31"]),
];

fn pinned() -> Result<(), String> {
    for (c, (id, secs)) in CRITERIA.iter().zip(BUDGETS) {
        if c.id != id || c.budget != secs.map(Duration::from_secs) {
            return Err(format!("criterion {id}: budget {:?} differs from the pinned {secs:?} s", c.budget));
        }
    }
    if INTEGRALITY_TOLERANCE != VERLINDE_TOLERANCE {
        return Err(format!("integrality tolerance {INTEGRALITY_TOLERANCE} is not {VERLINDE_TOLERANCE}"));
    }
    if DEFAULT_CASES < MIN_PROPERTY_CASES {
        return Err(format!("property suites run {DEFAULT_CASES} < {MIN_PROPERTY_CASES} cases"));
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Err(e) = pinned() {
        println!("FAIL pinned tolerances: {e}");
        return ExitCode::FAILURE;
    }
    let mut unexpected = Vec::new();
    for r in run_all(|_| ()) {
        let budget = r.budget_ms.map_or("no budget".into(), |b| format!("budget {b} ms"));
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2}: {} ({} ms, {budget})", r.id, r.title, r.elapsed_ms);
        let allowed: &[&str] = UNATTAINABLE.iter().find(|(id, _)| *id == r.id).map_or(&[], |(_, names)| names);
        for c in r.failing() {
            println!("       {}: got {}, expected {}", c.name, c.actual, c.expected.value);
            if !allowed.contains(&c.name.as_str()) {
                unexpected.push(format!("criterion {}: {}", r.id, c.name));
            }
        }
        if !r.within_budget {
            unexpected.push(format!("criterion {}: over budget", r.id));
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: only the documented unattainable checks fail");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
