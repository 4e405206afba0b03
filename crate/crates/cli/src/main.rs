use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qtorsion_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout(), "{}", report.render(cli.format));
            ExitCode::from(report.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
