//! Command-line front end: `macroslit <mode> --config FILE [options]`.
//!
//! Exit codes: 0 success, 2 configuration, 3 regime, 4 numerical failure,
//! 1 for i/o problems.

pub mod config;
pub mod output;
pub mod run;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::Parser;

pub use config::{parse_config, parse_echo, ConfigError, Mode, RawConfig, RunConfig};
pub use run::{execute, run, RunError, RunOutcome};

#[derive(Debug, Parser)]
#[command(
    name = "macroslit",
    version,
    about = "Double-slit patterns of a macroscopic oscillator coupled to an environment",
    after_help = config::key_reference()
)]
pub struct Args {
    /// full | narrow | wide | seds | compare
    pub mode: Mode,
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
    #[arg(long, conflicts_with = "screen_distance")]
    pub time: Option<f64>,
    #[arg(long)]
    pub screen_distance: Option<f64>,
    /// Replace a config value, e.g. `--override hbar=0.02`; repeatable.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

/// Merges the config file with the command-line options.
pub fn resolve(args: &Args) -> Result<RunConfig, ConfigError> {
    let text = fs::read_to_string(&args.config).map_err(|e| ConfigError::Io {
        path: args.config.display().to_string(),
        message: e.to_string(),
    })?;
    let mut raw = RawConfig::parse(&text)?;
    raw.set("mode", args.mode.as_str());
    for o in &args.overrides {
        raw.apply_override(o)?;
    }
    if let Some(t) = args.time {
        raw.remove("screen_distance");
        raw.set("time", &t.to_string());
    }
    if let Some(l) = args.screen_distance {
        raw.remove("time");
        raw.set("screen_distance", &l.to_string());
    }
    if let Some(p) = &args.out_csv {
        raw.set("out_csv", &p.display().to_string());
    }
    if let Some(p) = &args.out_svg {
        raw.set("out_svg", &p.display().to_string());
    }
    raw.into_config()
}

/// Full program behaviour; returns the process exit code.
pub fn main_entry<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = resolve(&args).map_err(RunError::from).and_then(|c| run(&c));
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            eprint!("{}", outcome.report);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
