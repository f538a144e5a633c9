mod args;
mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Outcome;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::dispatch(&cli);
    emit(&cli, &outcome);
    ExitCode::from(outcome.exit_code())
}

fn emit(cli: &Cli, outcome: &Outcome) {
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("error: {msg}");
    }
    if cli.global.json {
        let envelope = serde_json::json!({
            "command": outcome.command,
            "status": outcome.status.as_str(),
            "data": outcome.data,
        });
        let body = serde_json::to_string_pretty(&envelope).expect("JSON values serialize");
        // ignore closed pipes
        let _ = writeln!(io::stdout().lock(), "{body}");
    } else {
        let _ = io::stdout().lock().write_all(outcome.text.as_bytes());
    }
}
