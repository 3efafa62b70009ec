//! `lieposet`: command-line front end. Every subcommand prints one JSON
//! document; exit codes are 0 (ok), 2 (invalid input) and 3 (undetermined).

mod args;
mod commands;
mod input;

use clap::Parser;
use std::process::ExitCode;

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNDETERMINED: u8 = 3;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    if let Some(n) = std::env::var("LIEPOSET_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // ignore failure: the global pool may already exist
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let msg = serde_json::json!({ "error": e.to_string() });
            eprintln!("{msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
