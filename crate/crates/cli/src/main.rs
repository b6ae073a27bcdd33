use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hnrank_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.render(&cli).as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("hnrank: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
