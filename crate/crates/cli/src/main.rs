//! `zeroerr`: confusion graphs, invariants, quantum protocols and rate reports
//! from the command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input, 3 solver timeout
//! (the bracket is still printed), 4 verification failure.

mod args;
mod commands;
mod resolve;

use std::process::ExitCode;

use clap::Parser;
use zeroerr_core::Error;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Timeout { .. }) => 3,
        Some(Error::VerificationFailure { .. } | Error::StructureViolation(_)) => 4,
        Some(Error::Convergence(_)) => 1,
        Some(_) => 2,
        None if err.downcast_ref::<std::io::Error>().is_some() => 2,
        None if err.downcast_ref::<commands::Failed>().is_some() => 4,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
