use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tenstwist::cli::{parse_scenario, run, Command, RunOptions, INVALID_INPUT};
use tenstwist::polymer::EnumerationLimits;

#[derive(Parser)]
#[command(name = "tenstwist", version, about = "Polymer and tensor-twist checks on classical Dynkin data")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Polymer and Deligne-polymer validation.
    Validate(Common),
    /// Full criteria matrix and verdict.
    Twist(Common),
    /// Enumerate Deligne polymers with per-polymer classification.
    Enumerate(Common),
    /// Dimension of the representation attached to the polymer.
    Dims(Common),
    /// Randomized check of the tensor index rule.
    Keylemma(Common),
    /// Everything above in one report.
    Report(Common),
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_name = "PATH")]
    scenario: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    max_orbits: usize,
    #[arg(long, default_value_t = 1_000)]
    max_output: usize,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Machine,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, common) = match args.command {
        Cmd::Validate(c) => (Command::Validate, c),
        Cmd::Twist(c) => (Command::Twist, c),
        Cmd::Enumerate(c) => (Command::Enumerate, c),
        Cmd::Dims(c) => (Command::Dims, c),
        Cmd::Keylemma(c) => (Command::KeyLemma, c),
        Cmd::Report(c) => (Command::Report, c),
    };
    ExitCode::from(execute(command, &common) as u8)
}

fn execute(command: Command, common: &Common) -> i32 {
    let scenario = match &common.scenario {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return INVALID_INPUT;
                }
            };
            match parse_scenario(&text) {
                Ok(s) => Some(s),
                Err(errs) => {
                    for e in &errs.0 {
                        eprintln!("error: {}: {e}", path.display());
                    }
                    return INVALID_INPUT;
                }
            }
        }
        None => None,
    };
    let opts = RunOptions {
        trials: common.trials,
        seed: common.seed,
        limits: EnumerationLimits {
            max_orbits: common.max_orbits,
            max_output: common.max_output,
        },
    };
    match run(command, scenario.as_ref(), &opts) {
        Ok(report) => {
            let body = match common.format {
                Format::Machine => report.to_machine(),
                Format::Text => report.to_text(),
            };
            // A closed pipe (e.g. `| head`) is not an error for a report.
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(body.as_bytes()).and_then(|_| out.flush());
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            INVALID_INPUT
        }
    }
}
