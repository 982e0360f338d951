//! Command-line front end: price a contract from a config file, rebuild the
//! mixture-versus-BSM tables, run the invariant suites.
//!
//! Exit codes are a stable contract: 0 success, 1 a check failed, 2 bad
//! configuration, 3 internal inconsistency.

pub mod checks;
pub mod config;
pub mod error;
pub mod output;
pub mod price;
pub mod table;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use checks::Suite;
pub use config::{ConfigError, RunConfig};
pub use error::CliError;
pub use output::Format;

pub const THREADS_ENV: &str = "BAYES_PRICER_THREADS";
pub const DEFAULT_AMERICAN_GRID: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "bayes-pricer", version, about = "Call prices from minimum Bayes risk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Price a European call described by a config file.
    Price {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to the config's `format` key, then json.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Rebuild table 1 (i = 0.04) or table 2 (i = 0.08).
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Price an American call by minimizing over intermediate maturities.
    American {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = DEFAULT_AMERICAN_GRID)]
        grid_size: usize,
    },
    /// Run an invariant suite on the benchmark set.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// What a successful or check-failing command prints.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

fn ok(stdout: String) -> Outcome {
    Outcome { stdout, exit_code: 0 }
}

/// Worker count from `BAYES_PRICER_THREADS`; 0 or unset lets rayon decide.
pub fn thread_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Config(ConfigError {
                line: None,
                message: format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"),
            })
        }),
        Err(_) => Ok(0),
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Price { config, format } => {
            let cfg = RunConfig::from_file(&config)?;
            let report = price::price(&cfg)?;
            let out = match format.or(cfg.format).unwrap_or(Format::Json) {
                Format::Csv => output::to_csv(&[report])?,
                Format::Json => output::to_json(&report) + "\n",
                Format::Text => {
                    let mut s = String::new();
                    let json = serde_json::to_value(&report).map_err(|e| CliError::Output(e.to_string()))?;
                    for (k, v) in json.as_object().expect("report is a struct") {
                        s.push_str(&format!("{k:<20}{v}\n"));
                    }
                    s
                }
            };
            Ok(ok(out))
        }
        Command::Table { which, format } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(thread_count()?)
                .build()
                .map_err(|e| CliError::Output(e.to_string()))?;
            let t = pool.install(|| table::table(which))?;
            Ok(ok(match format {
                Format::Text => t.to_text(),
                Format::Json => output::to_json(&t) + "\n",
                Format::Csv => output::to_csv(&t.cells)?,
            }))
        }
        Command::American { config, grid_size } => {
            let cfg = RunConfig::from_file(&config)?;
            let report = price::american(&cfg, grid_size)?;
            Ok(ok(output::to_json(&report) + "\n"))
        }
        Command::Check { suite, format } => {
            let rows = checks::run_suite(suite)?;
            let out = match format {
                Format::Text => checks::report_text(&rows),
                Format::Json => output::to_json(&rows) + "\n",
                Format::Csv => output::to_csv(&rows)?,
            };
            let failed = rows.iter().any(|r| !r.passed);
            Ok(Outcome {
                stdout: out,
                exit_code: if failed { 1 } else { 0 },
            })
        }
    }
}
