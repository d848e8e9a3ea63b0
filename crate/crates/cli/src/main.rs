use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tqft_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.json).expect("json renders");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(out.code as u8)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
