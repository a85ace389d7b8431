//! Runs the randomized structural checks and prints a summary.

use rigid_solvable::verify::{run_all, VerifyConfig};

fn main() -> rigid_solvable::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let cfg = VerifyConfig { seed, samples: Some(20), ..VerifyConfig::default() };
    for r in run_all(&cfg, None)? {
        let verdict = if r.passed() { "ok  " } else { "FAIL" };
        println!("{verdict} {:<22} {:>3} samples  {}", r.name, r.samples, r.statement);
    }
    Ok(())
}
