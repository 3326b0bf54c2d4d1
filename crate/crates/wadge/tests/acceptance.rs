use std::process::ExitCode;

use wadge::suite::run_all;

fn main() -> ExitCode {
    let seed = std::env::var("WADGE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(2024);
    let outcomes = run_all(seed);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed (seed {seed})", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
