//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../common/mod.rs"]
mod common;

mod catalogue;
mod documents;
mod persistence;
mod replay;
mod scoping;

use std::panic;
use std::process::ExitCode;

/// `Ok(detail)` when the criterion holds, `Err(reason)` otherwise.
type Outcome = Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("rule catalogue", catalogue::run),
        ("oracle soundness", random::soundness),
        ("equivalence preservation", random::preservation),
        ("trial 5 end-to-end", documents::trial5),
        ("first-order end-to-end", documents::first_order),
        ("persistence", persistence::run),
        ("protocol replay", replay::run),
        ("scoping", scoping::run),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let outcome = panic::catch_unwind(criterion).unwrap_or_else(|e| {
            let message = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name}: {reason}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
