//! `xop`: tables, weights, reductions and verification reports for
//! classical and exceptional X1 orthogonal polynomials.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or constraint
//! error, 3 mathematical degeneracy.

mod args;
mod commands;
mod error;
mod render;
mod verify;

use args::CommonArgs;
use clap::{Parser, Subcommand};
use error::CliError;
use std::process::ExitCode;
use verify::Suite;

#[derive(Parser)]
#[command(name = "xop", version, about = "Classical and exceptional X1 orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monic classical polynomials with their eigenvalues
    Classical(CommonArgs),
    /// X1 polynomials with lambda, nu, c0*, theta and case per degree
    X1(CommonArgs),
    /// Check equations, orthogonality, norms or the weight roundtrip
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// The weight (x - r)^theta W(x) of an X1 family or equation
    Weight(CommonArgs),
    /// Reduction of an X1 member to a classical family
    Reduce(CommonArgs),
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Classical(a) | Command::X1(a) | Command::Weight(a) | Command::Reduce(a) => a,
            Command::Verify { args, .. } => args,
        }
    }
}

fn emit(args: &CommonArgs, text: &str) -> Result<(), CliError> {
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = cli.command.args();
    let result = match &cli.command {
        Command::Classical(a) => commands::classical(a),
        Command::X1(a) => commands::x1(a),
        Command::Verify { suite, args } => verify::verify(*suite, args),
        Command::Weight(a) => commands::weight(a),
        Command::Reduce(a) => commands::reduce(a),
    };
    let outcome = match result {
        Ok(text) => emit(args, &text),
        Err(CliError::Report(text)) => emit(args, &text).and(Err(CliError::Report(String::new()))),
        Err(e) => Err(e),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Report(_)) {
                eprintln!("xop: {e}");
            } else {
                eprintln!("xop: some checks failed");
            }
            e.code()
        }
    }
}
