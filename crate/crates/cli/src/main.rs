use std::process::ExitCode;

use clap::Parser;
use qlo_cli::{run, Cli, EXIT_VERIFICATION};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = qlo_core::par::init_from_env() {
        eprintln!("error: {msg}");
        return ExitCode::from(3);
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.output);
            if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
