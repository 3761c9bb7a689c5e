//! `weylwave`: runs named experiments and writes JSON or CSV reports.
//!
//! Exit codes: 0 success, 1 validation error, 2 numerical failure.

mod args;
mod config;
mod experiments;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

use args::{Cli, Command, Format};
use experiments::{CliError, Outcome};
use report::{Report, Verdict};

fn parameters(cli: &Cli) -> Value {
    let mut p = match &cli.command {
        Command::Verify(a) => serde_json::to_value(a),
        Command::Invariants(a) | Command::Oracle(a) => serde_json::to_value(a),
        Command::Energy(a) => serde_json::to_value(a),
        Command::Xpulse(a) => serde_json::to_value(a),
        Command::FitAxicon(a) => serde_json::to_value(a),
        Command::Dispersion(a) => serde_json::to_value(a),
    }
    .unwrap_or(Value::Null);
    if let Value::Object(map) = &mut p {
        map.insert("seed".into(), cli.common.seed.into());
    }
    p
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let seed = cli.common.seed;
    match &cli.command {
        Command::Verify(a) => experiments::verify(a),
        Command::Invariants(a) => experiments::invariants(a, seed),
        Command::Energy(a) => experiments::energy(a),
        Command::Xpulse(a) => experiments::xpulse(a),
        Command::FitAxicon(a) => experiments::fit_axicon(a),
        Command::Dispersion(a) => experiments::dispersion(a),
        Command::Oracle(a) => experiments::oracle(a, seed),
    }
}

fn run() -> Result<Verdict, CliError> {
    let argv = config::expand(std::env::args().collect()).map_err(CliError::validation)?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(Verdict::Pass);
        }
        Err(e) => {
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            return Err(CliError::validation(format!("{first} (see --help)")));
        }
    };
    if let Some(n) = cli.common.threads {
        if n == 0 {
            return Err(CliError::validation("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::validation(format!("cannot size the thread pool: {e}")))?;
    }

    let start = Instant::now();
    let outcome = execute(&cli)?;
    let wall_time = if cli.common.reproducible { 0.0 } else { start.elapsed().as_secs_f64() };
    let name = cli.command.name();
    let dir = &cli.common.out;
    let body = match cli.common.format {
        Format::Json => report::json(&Report {
            experiment: name,
            parameters: parameters(&cli),
            norms: outcome.norms,
            order: outcome.order,
            verdict: outcome.verdict,
            wall_time,
            metrics: outcome.metrics,
        })
        .map_err(CliError::validation)?,
        Format::Csv => outcome.table.to_csv().map_err(CliError::validation)?,
    };
    let path = report::write(dir, &report::file_name(name, cli.common.format), &body).map_err(CliError::validation)?;
    for (file, table) in &outcome.extras {
        report::write(dir, file, &table.to_csv().map_err(CliError::validation)?).map_err(CliError::validation)?;
    }
    println!("{name}: {}", outcome.summary);
    println!("report: {}", path.display());
    Ok(outcome.verdict)
}

fn main() -> ExitCode {
    match run() {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => {
            eprintln!("error: verdict is fail; see the report for the norms");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
