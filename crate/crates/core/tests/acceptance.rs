//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use qlmwkb::cli::verify::{criteria, reduction_failures, VerifyContext};

/// Random `(W, a)` pairs on top of the fixed grid the library check uses.
fn random_reductions() -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    runner
        .run(&(0.05f64..30.0, 0.2f64..5.0), |(w, a)| {
            let f = reduction_failures(w, a);
            prop_assert!(f.is_empty(), "{}", f.join("; "));
            Ok::<(), TestCaseError>(())
        })
        .map_err(|e| e.to_string())
}

fn main() {
    let ctx = VerifyContext::builtin();
    let mut failed = 0;
    for c in criteria() {
        let mut report = c.run(&ctx);
        if c.id == 9 {
            if let Err(e) = random_reductions() {
                report.passed = false;
                report.detail = format!("{}; random parameters: {e}", report.detail);
            } else {
                report.detail = format!("{}; 200 random parameter pairs", report.detail);
            }
        }
        println!(
            "{} criterion {} ({}) [{:.2} s]: {}",
            if report.passed { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            report.seconds,
            report.detail
        );
        if !report.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
