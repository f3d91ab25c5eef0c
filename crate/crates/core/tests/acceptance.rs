//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 2 has one known failure: the exact form of the cancelling-product rule
//! disagrees with surgery on `K(2,4)` (see `structure::check_cancelling_products`). It
//! is reported as FAIL; the run only aborts if any other check fails.

use arcalg::verify::{criterion, CriterionReport, CRITERIA};

const SEED: u64 = 0x5eed;

fn known_failure(report: &CriterionReport) -> bool {
    report.id == 2 && report.failing().all(|c| c.name.ends_with(": cancelling products"))
}

fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    for id in 1..=CRITERIA.len() {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let r = match criterion(id, SEED) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {id} ({}): FAIL error: {e}", CRITERIA[id - 1]);
                unexpected.push(id);
                continue;
            }
        };
        let checked: usize = r.checks.iter().map(|c| c.checked).sum();
        let verdict = if r.pass() { "PASS" } else { "FAIL" };
        println!("criterion {id} ({}): {verdict} [{} checks, {checked} cases, {:.1} s]", r.title, r.checks.len(), r.seconds);
        for c in r.failing() {
            println!("    {}: {} of {} failed, first {}", c.name, c.failures, c.checked, c.first_failure.as_deref().unwrap_or("?"));
        }
        for c in &r.checks {
            if c.checked == 0 {
                println!("    {}: nothing checked", c.name);
                unexpected.push(id);
            }
        }
        if !r.pass() && !known_failure(&r) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
