use std::io::Write;
use std::process::ExitCode;

use blfr_cli::{error_json, error_report, run, Cli};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            eprint!("{e}");
            let err = anyhow::Error::new(e);
            print!("{}", error_json(&error_report(&err, None)));
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            if out.flagged {
                eprintln!("{name}: completed with flagged failures");
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            print!("{}", error_json(&error_report(&e, Some(name))));
            ExitCode::FAILURE
        }
    }
}
