//! `stnf`: normal forms of moving-triangle objects from the command line.
//!
//! Exit status is 0 on success, 1 when the input is well formed but fails
//! (invalid atoms, differing normal forms, pipeline errors) and 2 when the
//! input cannot be read or parsed.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stnf_core::exact_arith::{parse_rational, Rational};

#[derive(Parser)]
#[command(name = "stnf", version, about = "Affine-invariant triangulation of moving-triangle objects")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Accuracy for snapshots at irrational times, as N/D.
    #[arg(long, global = true, env = "STNF_EPSILON", value_parser = positive_rational)]
    epsilon: Option<Rational>,
    /// Seed for sampled membership checks in `diff`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check every atom for poles and singular determinants.
    Validate { input: PathBuf },
    /// Print the event times of each object.
    Partition { input: PathBuf },
    /// Compute the normal form of each object.
    Triangulate {
        input: PathBuf,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Succeed iff both inputs have the same normal form.
    Diff { first: PathBuf, second: PathBuf },
    /// Print the snapshot triangles at one time.
    Snapshot {
        input: PathBuf,
        #[arg(long, value_parser = rational)]
        time: Rational,
    },
    /// Write SVG frames of the normal form at evenly spaced times.
    Render {
        input: PathBuf,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(1..))]
        frames: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

fn positive_rational(s: &str) -> Result<Rational, String> {
    let r = rational(s)?;
    if r <= Rational::from_integer(0.into()) {
        return Err(format!("epsilon must be positive: {s}"));
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = commands::RunConfig {
        epsilon: cli.config.epsilon.unwrap_or_else(stnf_core::st_pipeline::default_epsilon),
        seed: cli.config.seed,
    };
    let result = match cli.command {
        Command::Validate { input } => commands::validate(&input),
        Command::Partition { input } => commands::partition(&input),
        Command::Triangulate { input, out } => commands::triangulate(&input, out.as_deref(), &config),
        Command::Diff { first, second } => commands::diff(&first, &second, &config),
        Command::Snapshot { input, time } => commands::snapshot(&input, &time),
        Command::Render { input, frames, out } => render::render(&input, frames as usize, &out, &config),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code().into()
        }
    }
}
