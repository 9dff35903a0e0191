//! Command-line front end for `superpix`: segmentation to files and the
//! benchmark harness.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run_bench, run_segment, BenchReport, BenchRow, BENCH_HEADER};
pub use config::{Cli, CliConfig};
pub use error::CliError;
pub use output::{encode_csv, parse_csv, write_labels, LabelFormat};

/// Runs the configured mode; bench CSV goes to stdout.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = CliConfig::try_from(cli)?;
    if cfg.bench {
        let report = run_bench(&cfg)?;
        print!("{}", report.to_csv());
    } else {
        run_segment(&cfg)?;
    }
    Ok(())
}
