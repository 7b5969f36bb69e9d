//! Executes a validated [`RunConfig`].

use std::fmt::Write as _;
use std::fs;

use thiserror::Error;

use super::config::{ConfigError, Mode, RunConfig};
use super::output::{csv_document, svg_plot, SvgSeries};
use crate::coupling::{check_validity, CouplingError, CouplingParams, DecoupledModes};
use crate::propagation::{
    check_narrow_regime, check_wide_regime, pattern_full, pattern_narrow_limit, pattern_wide_limit,
    uniform_grid, PacketParams, PatternSeries, PropagationError, SlitGeometry,
};
use crate::seds::{deviation_angle, deviation_surface, intensity_maxima, seds_screen_shape, SedsError, SedsParams};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("regime error: {message}\n{report}")]
    Regime { message: String, report: String },
    #[error("numerical failure: {0}")]
    Numerics(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Parameters(_) => 2,
            RunError::Regime { .. } => 3,
            RunError::Numerics(_) => 4,
            RunError::Io(_) => 1,
        }
    }
}

/// Artifacts of a run, not yet written anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub csv: String,
    pub svg: String,
    pub warnings: Vec<String>,
    /// Human-readable summary: coupling results and validity checks.
    pub report: String,
}

struct Setup {
    coupling: CouplingParams,
    modes: DecoupledModes,
    packet: PacketParams,
    geometry: SlitGeometry,
    report: String,
}

fn from_coupling(e: CouplingError) -> RunError {
    match e {
        CouplingError::InvalidParameter { .. } | CouplingError::AlphaOutOfRange(_) => RunError::Parameters(e.to_string()),
        CouplingError::Unstable { .. } | CouplingError::DegenerateMode => RunError::Numerics(e.to_string()),
    }
}

fn from_propagation(e: PropagationError, report: &str) -> RunError {
    match e {
        PropagationError::Regime(_) | PropagationError::UnsupportedGeometry(_) | PropagationError::ZeroPattern => {
            RunError::Regime {
                message: e.to_string(),
                report: report.to_string(),
            }
        }
        PropagationError::Numerics(_) => RunError::Numerics(e.to_string()),
        PropagationError::InvalidParameter { .. } | PropagationError::NonPositiveTime(_) | PropagationError::InvalidGrid(_) => {
            RunError::Parameters(e.to_string())
        }
    }
}

fn from_seds(e: SedsError, report: &str) -> RunError {
    match e {
        SedsError::InvalidParameter { .. } => RunError::Parameters(e.to_string()),
        SedsError::NoRealAngle(_) => RunError::Regime {
            message: e.to_string(),
            report: report.to_string(),
        },
        SedsError::Pattern(p) => from_propagation(p, report),
    }
}

fn setup(c: &RunConfig) -> Result<Setup, RunError> {
    let coupling = CouplingParams::new(c.omega_e, c.omega_alpha, c.gamma, c.hbar).map_err(from_coupling)?;
    let modes = DecoupledModes::compute(&coupling).map_err(from_coupling)?;
    let packet = PacketParams::new(c.zeta, c.k0x, c.x0, c.y0, modes.beta, c.hbar)
        .map_err(|e| RunError::Parameters(e.to_string()))?;
    let geometry = SlitGeometry::new(c.w, c.w_prime, c.d, c.d_prime, c.a_slit)
        .map_err(|e| RunError::Parameters(e.to_string()))?;

    let mut report = String::new();
    let _ = writeln!(report, "composite frequency omega = {:.10}", modes.omega);
    let _ = writeln!(
        report,
        "rotation angles theta = [{:.10}, {:.10}]{}",
        modes.theta[0],
        modes.theta[1],
        if modes.degenerate.iter().any(|d| *d) { " (degenerate)" } else { "" }
    );
    let _ = writeln!(report, "beta = {:.10}, delta_y = {:.10}", packet.beta, packet.delta_y());
    match c.lambda_alpha {
        // λ̄0/R0 = h̄ in these units.
        Some(l) => {
            let _ = writeln!(report, "{}", check_validity(&coupling, l, c.hbar));
        }
        None => {
            let _ = writeln!(report, "coupling validity report: set lambda_alpha for the wavelength checks");
        }
    }
    Ok(Setup {
        coupling,
        modes,
        packet,
        geometry,
        report,
    })
}

fn seds_params(c: &RunConfig, report: &str) -> Result<SedsParams, RunError> {
    SedsParams::from_edge_distance(c.hbar, c.seds_c, c.seds_v, c.seds_b_half, c.seds_r).map_err(|e| from_seds(e, report))
}

fn base_metadata(c: &RunConfig, s: &Setup, kind: &str) -> Vec<String> {
    vec![
        format!("macroslit {} output", env!("CARGO_PKG_VERSION")),
        format!("kind = {kind}"),
        format!("t = {}", c.time()),
        format!("beta = {}", s.packet.beta),
        format!("delta_y = {}", s.packet.delta_y()),
        format!("omega = {}", s.modes.omega),
        format!("hbar_classical_window = {}", s.coupling.hbar() > 0.01 && s.coupling.hbar() < 0.1),
    ]
}

/// Runs the configured mode and renders its artifacts.
pub fn execute(c: &RunConfig) -> Result<RunOutcome, RunError> {
    let s = setup(c)?;
    let t = c.time();
    let grid = uniform_grid(c.y_min, c.y_max, c.y_samples).map_err(|e| RunError::Parameters(e.to_string()))?;
    let echo = c.echo();
    let p = &s.packet;
    let g = &s.geometry;
    let prop = |e| from_propagation(e, &s.report);

    let single = |series: PatternSeries, title: &str| {
        let mut meta = base_metadata(c, &s, series.kind.as_str());
        meta.push(format!("normalization = {}", series.normalization.as_str()));
        meta.extend(series.warnings.iter().map(|w| format!("warning: {w}")));
        let csv = csv_document(&echo, &meta, &["y", "intensity"], &[&series.y_grid, &series.values]);
        let svg = svg_plot(
            &format!("{title}, hbar = {}, t = {t}", c.hbar),
            "y",
            "intensity",
            &[SvgSeries {
                label: series.kind.as_str().to_string(),
                x: &series.y_grid,
                y: &series.values,
            }],
        );
        RunOutcome {
            csv,
            svg,
            warnings: series.warnings.clone(),
            report: s.report.clone(),
        }
    };

    match c.mode {
        Mode::Full => {
            let series = pattern_full(t, p, g, &grid, c.normalization).map_err(prop)?;
            Ok(single(series, "full pattern"))
        }
        Mode::Narrow => {
            let series = pattern_narrow_limit(t, p, g, &grid, c.normalization, &c.thresholds).map_err(prop)?;
            Ok(single(series, "narrow-packet limit"))
        }
        Mode::Wide => {
            let series = pattern_wide_limit(t, p, g, &grid, c.normalization, &c.thresholds).map_err(prop)?;
            Ok(single(series, "wide-packet limit"))
        }
        Mode::Seds => run_seds(c, &s, &echo),
        Mode::Compare => run_compare(c, &s, &grid, &echo),
    }
}

fn run_seds(c: &RunConfig, s: &Setup, echo: &str) -> Result<RunOutcome, RunError> {
    let sp = seds_params(c, &s.report)?;
    let spec = c.surface;
    let axis = |lo: f64, hi: f64, n: usize| {
        if n == 1 {
            vec![lo]
        } else {
            uniform_grid(lo, hi, n).unwrap_or_else(|_| vec![lo; n])
        }
    };
    let hbar_axis = axis(spec.hbar_min, spec.hbar_max, spec.hbar_samples);
    let b_axis = axis(spec.b_min, spec.b_max, spec.b_samples);
    let surface = deviation_surface(&hbar_axis, &b_axis, c.seds_v, spec.order).map_err(|e| from_seds(e, &s.report))?;

    let maxima = intensity_maxima(&sp, c.seds_n_max);
    let mut meta = base_metadata(c, s, "seds_surface");
    meta.push(format!("omega_n = {}", sp.omega_n));
    match deviation_angle(&sp) {
        Ok((plus, _)) => meta.push(format!("deviation_angle = +-{plus}")),
        Err(e) => meta.push(format!("deviation_angle: {e}")),
    }
    meta.push(format!(
        "intensity_maxima = {}",
        maxima.angles.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
    ));
    meta.push(format!("intensity_maxima_excluded_orders = {}", maxima.excluded));
    meta.push(format!("surface_monotone = {}", surface.is_monotone()));
    meta.push(format!("surface_saturated_cells = {}", surface.saturated_count()));

    let mut h_col = Vec::new();
    let mut b_col = Vec::new();
    let mut theta_col = Vec::new();
    let mut sat_col = Vec::new();
    for (i, &h) in surface.hbar.iter().enumerate() {
        for (j, &b) in surface.b_half.iter().enumerate() {
            h_col.push(h);
            b_col.push(b);
            theta_col.push(surface.theta[i][j]);
            sat_col.push(if surface.saturated[i][j] { 1.0 } else { 0.0 });
        }
    }
    let csv = csv_document(echo, &meta, &["hbar", "b_half", "theta", "saturated"], &[&h_col, &b_col, &theta_col, &sat_col]);

    let columns: Vec<Vec<f64>> = (0..surface.b_half.len())
        .map(|j| surface.theta.iter().map(|row| row[j]).collect())
        .collect();
    let stride = (columns.len() / 6).max(1);
    let series: Vec<SvgSeries> = columns
        .iter()
        .enumerate()
        .step_by(stride)
        .map(|(j, col)| SvgSeries {
            label: format!("b_half = {:.3}", surface.b_half[j]),
            x: &surface.hbar,
            y: col,
        })
        .collect();
    let svg = svg_plot(&format!("deviation angle, order n = {}", spec.order), "hbar", "theta [rad]", &series);
    let warnings = if surface.saturated_count() > 0 {
        vec![format!("{} surface cells saturated (sin theta clamped to 1)", surface.saturated_count())]
    } else {
        Vec::new()
    };
    Ok(RunOutcome {
        csv,
        svg,
        warnings,
        report: s.report.clone(),
    })
}

fn run_compare(c: &RunConfig, s: &Setup, grid: &[f64], echo: &str) -> Result<RunOutcome, RunError> {
    let t = c.time();
    let (p, g) = (&s.packet, &s.geometry);
    let prop = |e| from_propagation(e, &s.report);
    let full = pattern_full(t, p, g, grid, c.normalization).map_err(prop)?;

    let mut warnings = Vec::new();
    let limit = if let Ok(w) = check_narrow_regime(p, g, &c.thresholds) {
        warnings.extend(w);
        Some(pattern_narrow_limit(t, p, g, grid, c.normalization, &c.thresholds).map_err(prop)?)
    } else if let Ok(w) = check_wide_regime(t, p, g, &c.thresholds) {
        warnings.extend(w);
        Some(pattern_wide_limit(t, p, g, grid, c.normalization, &c.thresholds).map_err(prop)?)
    } else {
        warnings.push("neither limiting case applies; qm_limit column is nan".to_string());
        None
    };
    let limit_kind = limit.as_ref().map_or("none", |l| l.kind.as_str());
    let limit_values = limit.map_or_else(|| vec![f64::NAN; grid.len()], |l| l.values);

    let seds = seds_screen_shape(grid, t, c.hbar, c.w, c.seds_b_half).map_err(|e| from_seds(e, &s.report))?;

    let mut meta = base_metadata(c, s, "compare");
    meta.push(format!("normalization = {} (seds_shape is always unit_peak)", c.normalization.as_str()));
    meta.push(format!("qm_limit = {limit_kind}"));
    meta.extend(warnings.iter().map(|w| format!("warning: {w}")));
    let csv = csv_document(
        echo,
        &meta,
        &["y", "qm_full", "qm_limit", "seds_shape"],
        &[grid, &full.values, &limit_values, &seds.values],
    );

    // Plot all three on a common unit-peak scale.
    let unit = |v: &[f64]| {
        let peak = v.iter().cloned().filter(|x| x.is_finite()).fold(0.0, f64::max);
        v.iter().map(|x| if peak > 0.0 { x / peak } else { *x }).collect::<Vec<_>>()
    };
    let (f, l, sd) = (unit(&full.values), unit(&limit_values), unit(&seds.values));
    let svg = svg_plot(
        &format!("QM vs SEDS, hbar = {}, t = {t}", c.hbar),
        "y",
        "intensity (unit peak)",
        &[
            SvgSeries { label: "qm_full".into(), x: grid, y: &f },
            SvgSeries { label: format!("qm_limit ({limit_kind})"), x: grid, y: &l },
            SvgSeries { label: "seds_shape".into(), x: grid, y: &sd },
        ],
    );
    Ok(RunOutcome {
        csv,
        svg,
        warnings,
        report: s.report.clone(),
    })
}

/// Executes and writes the artifacts; returns the outcome for reporting.
pub fn run(c: &RunConfig) -> Result<RunOutcome, RunError> {
    let outcome = execute(c)?;
    match &c.out_csv {
        Some(path) => fs::write(path, &outcome.csv).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{}", outcome.csv),
    }
    if let Some(path) = &c.out_svg {
        fs::write(path, &outcome.svg).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(outcome)
}
