//! Runs every acceptance criterion and prints one line per criterion.
//! Set GRLIE_CRITERIA=3,7 to run a subset and GRLIE_VERBOSE=1 to list every check.

use grlie::verify::{run_all, VerifyConfig, CRITERIA};

fn main() {
    let ids: Vec<usize> = match std::env::var("GRLIE_CRITERIA") {
        Ok(s) if !s.trim().is_empty() => s.split(',').map(|x| x.trim().parse().expect("criterion id")).collect(),
        _ => CRITERIA.iter().map(|c| c.0).collect(),
    };
    let verbose = std::env::var("GRLIE_VERBOSE").is_ok_and(|v| v != "0");
    let cfg = VerifyConfig::default();
    println!("running {} acceptance criteria", ids.len());
    let reports = run_all(&cfg, &ids, |r| {
        println!("{}", r.line());
        if verbose || !r.passed() {
            for c in r.checks.iter().filter(|c| verbose || !c.ok) {
                println!("    {}: {}", c.label, c.detail);
            }
        }
    });
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("acceptance: {} passed, {} failed", reports.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
