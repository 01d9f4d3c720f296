use std::process::ExitCode;

use adicergo::cli::{config_from_args, CliError};
use adicergo::{emit_report, run_command};

fn main() -> ExitCode {
    let config = match config_from_args(std::env::args_os()) {
        Ok(c) => c,
        Err(CliError::Usage(e)) => e.exit(),
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_command(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    for n in &report.notices {
        eprintln!("{n}");
    }
    for line in &report.lines {
        println!("{line}");
    }
    if let Some(out) = &config.output {
        match emit_report(&report, out) {
            Ok((csv, json)) => eprintln!("wrote {} and {}", csv.display(), json.display()),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
    }
    ExitCode::SUCCESS
}
