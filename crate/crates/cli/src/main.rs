//! `wagegdp`: batch front end for the wage-to-GDP toolkit.
//!
//! Exit codes: 0 success, 1 runtime error, 2 usage or validation error.
//! Data goes to standard output or `--out`; diagnostics go to standard error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "wagegdp", version, about = "Minimum and mean wages as portions of per-capita GDP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an annual series CSV and list every violation.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compute indicator series from an annual series CSV.
    Indicators {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated: wmin, wmean, kaitz, minmean, nonsup, real.
        #[arg(long, value_delimiter = ',', required = true)]
        series: Vec<String>,
        /// Deflator base year, required for `real`.
        #[arg(long)]
        base_year: Option<i32>,
        /// Output path, `-` for standard output.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Emit the numeric series behind a figure.
    Figures {
        #[arg(long)]
        input: PathBuf,
        /// min-gdp-union, min-mean-scatter or min-gini.
        #[arg(long)]
        fig: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run a scenario and write its history as CSV.
    Simulate {
        /// Scenario JSON: a bare scenario or a `{preset}` / `{config}` payload.
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        scenario: Option<PathBuf>,
        /// hungary, us-baseline, us-fixed-nominal or gdpc-two-thirds.
        #[arg(long)]
        preset: Option<String>,
        /// Overrides the scenario's step count.
        #[arg(long)]
        steps: Option<u32>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run the HTTP session service until interrupted.
    Serve {
        #[arg(long, default_value = wagegdp_service::DEFAULT_BIND)]
        bind: String,
        #[arg(long, env = "WAGEGDP_DATA_DIR", default_value = "wagegdp-data")]
        data_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_level = if matches!(cli.command, Command::Serve { .. }) { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(default_level)).init();

    let result = match cli.command {
        Command::Validate { input } => commands::validate(&input),
        Command::Indicators {
            input,
            series,
            base_year,
            out,
        } => commands::indicators(&input, &series, base_year, &out),
        Command::Figures { input, fig, out } => commands::figures(&input, &fig, &out),
        Command::Simulate {
            scenario,
            preset,
            steps,
            out,
        } => commands::simulate(scenario.as_deref(), preset.as_deref(), steps, &out),
        Command::Serve { bind, data_dir } => commands::serve(&bind, data_dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
