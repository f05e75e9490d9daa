use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dgpp::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.global.report {
                if let Err(e) = std::fs::write(path, out.report.to_json()) {
                    eprintln!("error: cannot write report {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(out.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
