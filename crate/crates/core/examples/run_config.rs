//! Drives a full run from a config file, as the command-line tool does.
//!
//! `cargo run --example run_config -- configs/compare.conf`

use std::fs;

use macroslit::cli::config::parse_config;
use macroslit::cli::run::execute;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| format!("{}/configs/compare.conf", env!("CARGO_MANIFEST_DIR")));
    let text = fs::read_to_string(&path).expect("readable config");
    let config = parse_config(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
    let outcome = execute(&config).unwrap_or_else(|e| panic!("run failed: {e}"));
    print!("{}", outcome.report);
    for w in &outcome.warnings {
        println!("warning: {w}");
    }
    for line in outcome.csv.lines().filter(|l| !l.starts_with("# ")).take(14) {
        println!("{line}");
    }
    println!("... ({} bytes of CSV, {} bytes of SVG)", outcome.csv.len(), outcome.svg.len());
}
