//! `paraprod`: command-line front end for paraprod-core.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage or input error,
//! 3 inconclusive result under `--strict`, 4 term or degree explosion.

mod args;
mod manifest;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use paraprod_core::norms::QuadratureConfig;
use paraprod_core::Error;

use args::Cli;
use manifest::{alongside, RunManifest};
use run::Output;

const THREADS_ENV: &str = "PARAPROD_THREADS";

fn exit_code(e: &Error) -> u8 {
    if e.is_guard() {
        return 4;
    }
    match e {
        Error::Parse(_)
        | Error::InvalidParameter(_)
        | Error::Domain(_)
        | Error::WrongWeightKind { .. }
        | Error::Shape(_)
        | Error::DivisionByZero
        | Error::EmptyFamily
        | Error::InsufficientGrid(_) => 2,
        _ => 1,
    }
}

fn configure_threads() -> Result<usize, String> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{v}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(rayon::current_num_threads())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match configure_threads() {
        Ok(n) => n,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let quad = match &cli.common.quad {
        None => QuadratureConfig::default(),
        Some(text) => match serde_json::from_str(text) {
            Ok(q) => q,
            Err(e) => {
                eprintln!("error: --quad: {e}");
                return ExitCode::from(2);
            }
        },
    };
    let outcome = match run::run(&cli.command, quad) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = match &outcome.output {
        Output::Json(v) => serde_json::to_string(v).expect("json output") + "\n",
        Output::Csv(s) => s.clone(),
    };

    let inputs = serde_json::json!({
        "command": serde_json::to_value(&cli.command).expect("arguments serialize"),
        "quad": quad,
    });
    let mut manifest = RunManifest::new(cli.command.name(), inputs, cli.command.seed(), threads);
    let manifest_path = cli.common.manifest.clone().or_else(|| cli.common.out.as_deref().map(alongside));
    let written = match &cli.common.out {
        Some(path) => {
            manifest.outputs.push(path.clone());
            std::fs::write(path, &text)
        }
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(1);
    }
    if let Some(path) = manifest_path {
        if let Err(e) = manifest.write(&path) {
            eprintln!("error: writing manifest {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if cli.common.strict && outcome.inconclusive {
        eprintln!("inconclusive result (--strict)");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
