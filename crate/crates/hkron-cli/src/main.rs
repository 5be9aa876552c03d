use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hkron_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(r.body.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(r.exit_code)
        }
        Err(e) => {
            eprintln!("hkron: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
