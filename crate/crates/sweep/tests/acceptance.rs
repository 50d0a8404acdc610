//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed, passing or not.

use std::process::ExitCode;

use qdiode::checks;

fn main() -> ExitCode {
    println!(
        "\nrunning {} acceptance criteria",
        checks::PHYSICS.len() + 2
    );
    let outcomes = checks::run_all_with(|outcome| println!("{outcome}"));
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id.to_string())
        .collect();
    println!(
        "\nacceptance result: {} passed; {} failed{}\n",
        outcomes.len() - failed.len(),
        failed.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!(" (criteria {})", failed.join(", "))
        }
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
