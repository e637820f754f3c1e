use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(aris_core::cli::main())
}
