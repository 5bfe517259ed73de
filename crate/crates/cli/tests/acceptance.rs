//! Prints one PASS/FAIL line per acceptance criterion; fails if any criterion does.

use std::process::ExitCode;

use bethe_cli::acceptance;

fn main() -> ExitCode {
    let outcomes = acceptance::run_all();
    for o in &outcomes {
        println!("{o}");
    }
    if outcomes.iter().all(|o| o.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
