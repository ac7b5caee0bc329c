use std::process::ExitCode;

use clap::Parser;
use mzv_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("mzv: {e}");
            ExitCode::from(2)
        }
    }
}
