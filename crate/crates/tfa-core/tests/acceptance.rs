//! Full verification suite: runs every numbered criterion and prints one
//! pass/fail line per criterion. Any failure fails the test with details.

use tfa_core::verify::run_all;

#[test]
fn all_criteria_pass() {
    let results = run_all(None).expect("verification suite ran");
    assert_eq!(results.len(), 15);
    let mut failures = Vec::new();
    for r in &results {
        let status = if r.passed { "pass" } else { "FAIL" };
        println!("criterion {:2} {:<24} {status}", r.id, r.name);
        if !r.passed {
            failures.push(format!("criterion {} ({}): {}", r.id, r.name, r.details));
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
