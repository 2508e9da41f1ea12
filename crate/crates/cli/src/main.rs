//! `zelist` command-line front end.

mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::Parser;
use zelist::ErrorClass;

fn exit_code(err: &anyhow::Error) -> u8 {
    let class = err
        .chain()
        .find_map(|e| e.downcast_ref::<zelist::Error>())
        .map(zelist::Error::class);
    match class {
        Some(ErrorClass::Guard) => 3,
        Some(ErrorClass::Numeric) => 4,
        _ => 2,
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
