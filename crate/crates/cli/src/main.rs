//! `spwt`: place a UAV so that its array nulls an eavesdropper, and sweep the
//! resulting secrecy rate.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod manifest;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Common, Failure, SchemeChoice, SweepKind, SweepOptions};

#[derive(Parser)]
#[command(
    name = "spwt",
    version,
    about = "UAV placement for null-steered secure transmission"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (`key = value` lines) or a manifest.json from a previous run.
    #[arg(long)]
    config: PathBuf,
    /// RNG seed for the random baselines; beats the file and SPWT_SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// Override a config key, e.g. `--set g_m=300`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

impl CommonArgs {
    fn common(&self) -> Common {
        Common {
            config: self.config.clone(),
            seed: self.seed,
            overrides: self.overrides.clone(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Azimuth,
    Pitch,
    Both,
}

impl From<SchemeArg> for SchemeChoice {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Azimuth => SchemeChoice::Azimuth,
            SchemeArg::Pitch => SchemeChoice::Pitch,
            SchemeArg::Both => SchemeChoice::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Snr,
    Alpha,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the placements that null Eve and print them.
    Place {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "both")]
        scheme: SchemeArg,
        /// Also write placements.csv and manifest.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Secrecy rate over SNR or alpha against random deployments.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "snr")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "azimuth")]
        scheme: SchemeArg,
        /// start:step:stop. Defaults to 0:2:20 (snr) or 0:0.1:1 (alpha).
        #[arg(long)]
        grid: Option<String>,
        /// SNR for the alpha sweep.
        #[arg(long, default_value_t = 15.0, allow_negative_numbers = true)]
        snr_db: f64,
        /// Number of random deployments.
        #[arg(long, default_value_t = 3)]
        baselines: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// |h_E^H h_B| over a square grid of UAV positions.
    Pattern {
        #[command(flatten)]
        common: CommonArgs,
        /// start:step:stop for both x and y. Defaults to -1000:5:1000.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Place {
            common,
            scheme,
            out,
        } => commands::place(&common.common(), scheme.into(), out.as_deref()),
        Command::Sweep {
            common,
            kind,
            scheme,
            grid,
            snr_db,
            baselines,
            out,
        } => commands::sweep(
            &common.common(),
            &SweepOptions {
                kind: match kind {
                    KindArg::Snr => SweepKind::Snr,
                    KindArg::Alpha => SweepKind::Alpha,
                },
                scheme: scheme.into(),
                grid: grid.as_deref(),
                snr_db,
                baselines,
                out: &out,
            },
        ),
        Command::Pattern { common, grid, out } => {
            commands::pattern(&common.common(), grid.as_deref(), &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(e) => eprintln!("error: {e:#}"),
                Failure::Infeasible(msg) => eprintln!("infeasible: {msg}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
