//! `lech`: exact multiplicities and colengths of m-primary ideals from the
//! command line.
//!
//! Exit codes: 0 on success, 1 on computation errors or a failing `verify`,
//! 2 on usage errors. Errors are written to stderr as
//! `{"error": {"kind": ..., "message": ...}}`.

mod commands;
mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::input::InputError;
use crate::render::Format;

#[derive(Debug, Parser)]
#[command(name = "lech", version, about = "Exact Hilbert–Samuel and Hilbert–Kunz multiplicities versus colength")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "LECH_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Numerical semigroup rings k[[S]].
    Semigroup(commands::SemigroupArgs),
    /// Monomial ideals of k[[x_1, …, x_d]].
    Monomial(commands::MonomialArgs),
    /// Monomial ideals of Stanley–Reisner rings.
    Branched(commands::BranchedArgs),
    /// Bounded extremal search over an ideal family.
    Sweep(commands::SweepArgs),
    /// Maximal chains of integrally closed ideals.
    Chain(commands::ChainArgs),
    /// Brute-force limits from colength sequences.
    Oracle(commands::OracleArgs),
    /// Run the acceptance suite.
    Verify(commands::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let (kind, code) = classify(&e);
            let record = json!({"error": {"kind": kind, "message": e.to_string()}});
            eprintln!("{record}");
            ExitCode::from(code)
        }
    }
}

fn classify(e: &anyhow::Error) -> (&'static str, u8) {
    if let Some(err) = e.downcast_ref::<lech_core::Error>() {
        (err.kind(), 1)
    } else if e.downcast_ref::<InputError>().is_some() {
        ("Usage", 2)
    } else if e.downcast_ref::<std::io::Error>().is_some() {
        ("Io", 1)
    } else {
        ("Internal", 1)
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()?;
    }
    let (report, ok) = match &cli.command {
        Command::Semigroup(a) => (commands::semigroup(a)?, true),
        Command::Monomial(a) => (commands::monomial(a)?, true),
        Command::Branched(a) => (commands::branched(a)?, true),
        Command::Sweep(a) => (commands::sweep(a)?, true),
        Command::Chain(a) => (commands::chain(a)?, true),
        Command::Oracle(a) => (commands::oracle(a)?, true),
        Command::Verify(a) => commands::verify(a)?,
    };
    let text = report.render(cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
