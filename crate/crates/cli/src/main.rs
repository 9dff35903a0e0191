use std::process::ExitCode;

use clap::Parser;
use superpix_cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("superpix: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
