//! Runs every invariant suite and prints one line per suite.
//!
//! Pass `--corrupt` to scale the closed-form sigma by 1.01 and watch the
//! harness report the offending instance.

use qaoa_bounds::certify::{run_certify, CorpusConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corrupt = std::env::args().any(|a| a == "--corrupt");
    let cfg = CorpusConfig {
        corrupt_sigma: corrupt.then_some(1.01),
        ..CorpusConfig::default()
    };
    let summary = run_certify(&cfg)?;
    for c in &summary.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        println!("{status}  {:<32} cases={:<4} worst={:.3e}", c.name, c.cases, c.worst);
        if let Some(r) = &c.reproducer {
            println!("      reproducer: {r}");
        }
    }
    println!("overall: {}", if summary.passed { "pass" } else { "FAIL" });
    Ok(())
}
