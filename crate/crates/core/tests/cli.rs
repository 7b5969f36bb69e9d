mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use macroslit::cli::config::{parse_config, parse_echo};
use macroslit::cli::output::parse_csv_rows;
use macroslit::cli::run::execute;

use common::fringes::{maxima_positions, mean_spacing};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn macroslit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macroslit"))
        .args(args)
        .output()
        .expect("spawn macroslit")
}

fn run_to_csv(mode: &str, conf: &Path, extra: &[&str]) -> (String, Output) {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let svg = dir.path().join("out.svg");
    let mut args = vec![mode, "--config", conf.to_str().unwrap()];
    args.extend(["--out-csv", csv.to_str().unwrap(), "--out-svg", svg.to_str().unwrap()]);
    args.extend(extra);
    let out = macroslit(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    (fs::read_to_string(&csv).unwrap(), out)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (header, rows) = parse_csv_rows(text).unwrap();
    let k = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[k]).collect()
}

#[test]
fn narrow_figure_has_a_single_peak() {
    let (csv, _) = run_to_csv("narrow", &config("fig1_narrow.conf"), &[]);
    let y = column(&csv, "y");
    let peaks = maxima_positions(&y, &column(&csv, "intensity"), 1e-6);
    assert_eq!(peaks.len(), 1);
    assert!((peaks[0] - 0.6).abs() < 0.01);
}

#[test]
fn wide_figures_scale_with_hbar() {
    let spacing = |name: &str, half: f64| {
        let (csv, _) = run_to_csv("wide", &config(name), &[]);
        mean_spacing(&column(&csv, "y"), &column(&csv, "intensity"), half).0
    };
    let big = spacing("fig2_hbar0.1.conf", 29.0);
    let small = spacing("fig2_hbar0.01.conf", 11.0);
    assert!((big / 10.0 - small).abs() <= 0.01, "{big} {small}");
}

#[test]
fn far_field_warning_goes_to_stderr() {
    let (_, out) = run_to_csv("wide", &config("fig2_hbar0.01.conf"), &[]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not in the far field"));
}

#[test]
fn seds_surface_is_monotone() {
    let (csv, _) = run_to_csv("seds", &config("fig3_seds.conf"), &[]);
    let (h, b, th) = (column(&csv, "hbar"), column(&csv, "b_half"), column(&csv, "theta"));
    assert_eq!(h.len(), 100);
    for i in 0..h.len() {
        for j in 0..h.len() {
            if h[i] == h[j] && b[i] < b[j] {
                assert!(th[i] >= th[j]);
            }
            if b[i] == b[j] && h[i] < h[j] {
                assert!(th[i] <= th[j]);
            }
        }
    }
}

#[test]
fn compare_emits_all_columns() {
    let (csv, _) = run_to_csv("compare", &config("compare.conf"), &[]);
    let (header, rows) = parse_csv_rows(&csv).unwrap();
    assert_eq!(header, ["y", "qm_full", "qm_limit", "seds_shape"]);
    assert_eq!(rows.len(), 1081);
    let y = column(&csv, "y");
    assert_eq!(maxima_positions(&y, &column(&csv, "qm_full"), 1e-6).len(), 1);
    assert!(maxima_positions(&y, &column(&csv, "seds_shape"), 1e-6).len() >= 3);
}

#[test]
fn output_is_deterministic_and_echo_reproduces_it() {
    let text = fs::read_to_string(config("compare.conf")).unwrap();
    let first = execute(&parse_config(&text).unwrap()).unwrap().csv;
    let second = execute(&parse_config(&text).unwrap()).unwrap().csv;
    assert_eq!(first, second);
    let replay = execute(&parse_echo(&first).unwrap()).unwrap().csv;
    assert_eq!(first, replay);
}

#[test]
fn command_line_time_and_overrides_apply() {
    let conf = config("fig1_narrow.conf");
    let (csv, _) = run_to_csv("narrow", &conf, &["--time", "0.1", "--override", "y0=0.55"]);
    assert!(csv.contains("# time = 0.1\n"));
    assert!(csv.contains("# y0 = 0.55\n"));
    let (csv, _) = run_to_csv("narrow", &conf, &["--screen-distance", "0.2"]);
    assert!(csv.contains("# screen_distance = 0.2\n"));
}

#[test]
fn stdout_receives_csv_without_out_path() {
    let conf = config("fig1_narrow.conf");
    let out = macroslit(&["narrow", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("y,intensity\n"));
}

#[test]
fn exit_codes_distinguish_failures() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    };
    let base = fs::read_to_string(config("fig1_narrow.conf")).unwrap();
    let code = |args: &[&str]| macroslit(args).status.code();

    let missing = write("missing.conf", &base.replace("omega_e = 125\n", ""));
    assert_eq!(code(&["narrow", "--config", missing.to_str().unwrap()]), Some(2));
    let unknown = write("unknown.conf", &format!("{base}colour = blue\n"));
    assert_eq!(code(&["narrow", "--config", unknown.to_str().unwrap()]), Some(2));
    let bad = write("bad.conf", &base.replace("gamma1 = 0.1", "gamma1 = 1.5"));
    assert_eq!(code(&["narrow", "--config", bad.to_str().unwrap()]), Some(2));
    assert_eq!(code(&["sideways", "--config", missing.to_str().unwrap()]), Some(2));

    let wide = config("fig2_hbar0.1.conf");
    assert_eq!(code(&["narrow", "--config", wide.to_str().unwrap()]), Some(3));
    let narrow = config("fig1_narrow.conf");
    assert_eq!(code(&["wide", "--config", narrow.to_str().unwrap()]), Some(3));

    let unwritable = dir.path().join("no-such-dir").join("out.csv");
    assert_eq!(
        code(&["narrow", "--config", narrow.to_str().unwrap(), "--out-csv", unwritable.to_str().unwrap()]),
        Some(1)
    );
}
