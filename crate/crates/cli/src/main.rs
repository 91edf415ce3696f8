mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use crate::args::{Cli, Format};
use crate::commands::VerificationFailed;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (kind, code) = if e.is::<VerificationFailed>() {
                ("VerificationFailed", 3)
            } else {
                ("Error", 2)
            };
            match cli.format {
                Format::Human => eprintln!("error: {e:#}"),
                Format::Structured => {
                    eprintln!(
                        "{}",
                        json!({"record": "error", "kind": kind, "message": format!("{e:#}")})
                    )
                }
            }
            ExitCode::from(code)
        }
    }
}
