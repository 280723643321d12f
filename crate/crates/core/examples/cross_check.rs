//! The cross-engine agreement suite at the quick level, printing failures only.
//!
//! Usage: cargo run --release --example cross_check [quick|full]

use tropgw::check::{run_checks, CheckLevel};
use tropgw::wdvv::Engine;

fn main() {
    let level = match std::env::args().nth(1).as_deref() {
        Some("full") => CheckLevel::Full,
        _ => CheckLevel::Quick,
    };
    let report = run_checks(level, &mut Engine::default(), 1);
    for c in report.failures() {
        println!("FAIL {}: expected {}, got {}", c.name, c.expected, c.actual);
    }
    println!(
        "{} checks, all passed: {}",
        report.checks.len(),
        report.passed()
    );
    if !report.passed() {
        std::process::exit(3);
    }
}
