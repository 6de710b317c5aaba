use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use conductor_cli::commands::{self, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors; usage errors must not look like a verdict
            return ExitCode::from(if e.use_stderr() {
                commands::EXIT_USAGE as u8
            } else {
                0
            });
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
