//! One line per criterion: PASS/FAIL, id, elapsed against its limit.
//! Runs without the test harness so the lines are never captured.

use std::process::ExitCode;

use freecurve_core::{run_suite, SuiteConfig};

fn main() -> ExitCode {
    let results = run_suite(&SuiteConfig::default());
    let mut failed = Vec::new();
    for r in &results {
        println!(
            "{} [{:>2}] {} ({} ms / {} ms): {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.elapsed_ms,
            r.limit_ms,
            r.detail
        );
        if !r.passed {
            failed.push(r.id);
        }
    }
    if results.len() != 12 {
        println!("FAIL expected 12 criteria, ran {}", results.len());
        return ExitCode::FAILURE;
    }
    if failed.is_empty() {
        println!("acceptance: 12/12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
