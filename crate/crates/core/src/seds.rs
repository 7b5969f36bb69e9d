//! Stochastic-electrodynamics-with-spin (SEDS) predictions for the same slits.
//!
//! A particle whose gyration frequency `ω_n` matches a zero-point-field mode
//! standing between the slit edges receives a transverse kick
//! `v_y = h̄ ω_n / 2c` and leaves at `sin θ = ± h̄ ω_n / 2cv`. The slit admits
//! modes with amplitude `F_s = sinc(k_y b)` and energy density `ρ_E ∝ F_s²`,
//! whose maxima sit at `k_y = 0` and `k_y b = π(n + ½)`.
//!
//! `b` here is a half-width (the mode integral runs over `[-b, b]`), so it is
//! called `b_half` throughout. `c` and `v` are plain dimensionless inputs.

use std::f64::consts::PI;

use thiserror::Error;

use crate::propagation::{sinc, Normalization, PatternKind, PatternSeries, PropagationError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SedsError {
    #[error("{field} = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("no real deviation angle: h̄ω_n/(2cv) = {0} exceeds 1")]
    NoRealAngle(f64),
    #[error(transparent)]
    Pattern(#[from] PropagationError),
}

fn positive(field: &'static str, value: f64) -> Result<(), SedsError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(SedsError::InvalidParameter {
            field,
            value,
            reason: "must be positive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SedsParams {
    pub hbar: f64,
    pub c: f64,
    pub v: f64,
    pub b_half: f64,
    /// Distance from the nearest slit edge; `None` when `omega_n` was given directly.
    pub r: Option<f64>,
    pub omega_n: f64,
}

impl SedsParams {
    /// Gyration frequency fixed by the edge distance, `ω_n = v / r`.
    pub fn from_edge_distance(hbar: f64, c: f64, v: f64, b_half: f64, r: f64) -> Result<Self, SedsError> {
        positive("r", r)?;
        let mut p = Self::with_frequency(hbar, c, v, b_half, v / r)?;
        p.r = Some(r);
        Ok(p)
    }

    pub fn with_frequency(hbar: f64, c: f64, v: f64, b_half: f64, omega_n: f64) -> Result<Self, SedsError> {
        positive("hbar", hbar)?;
        positive("c", c)?;
        positive("v", v)?;
        positive("b_half", b_half)?;
        if !(omega_n >= 0.0 && omega_n.is_finite()) {
            return Err(SedsError::InvalidParameter {
                field: "omega_n",
                value: omega_n,
                reason: "must be non-negative",
            });
        }
        Ok(Self {
            hbar,
            c,
            v,
            b_half,
            r: None,
            omega_n,
        })
    }
}

/// `v_y = h̄ ω_n / 2c`.
pub fn transverse_velocity(p: &SedsParams) -> f64 {
    p.hbar * p.omega_n / (2.0 * p.c)
}

/// `(+θ, -θ)` with `sin θ = h̄ ω_n / 2cv`.
pub fn deviation_angle(p: &SedsParams) -> Result<(f64, f64), SedsError> {
    let s = transverse_velocity(p) / p.v;
    if s > 1.0 {
        return Err(SedsError::NoRealAngle(s));
    }
    let theta = s.asin();
    Ok((theta, -theta))
}

/// `F_s = sin(k_y b) / (k_y b)`.
pub fn mode_amplitude(k_y: f64, b_half: f64) -> f64 {
    sinc(k_y * b_half)
}

/// `ρ_E = F_s²`, with unit proportionality constant.
pub fn mode_energy_density(k_y: f64, b_half: f64) -> f64 {
    let f = mode_amplitude(k_y, b_half);
    f * f
}

/// Mode wavenumber of the n-th side maximum, `k_y b = π(n + ½)`.
pub fn maximum_wavenumber(n: u32, b_half: f64) -> f64 {
    PI * (n as f64 + 0.5) / b_half
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntensityMaxima {
    /// The central 0 first, then `+θ_n, -θ_n` for each admitted order.
    pub angles: Vec<f64>,
    /// Orders `n` that produced a real angle.
    pub orders: Vec<u32>,
    /// Number of orders in `1..=n_max` dropped because `sin θ > 1`.
    pub excluded: usize,
}

/// Deviation angles of the intensity maxima for orders `1..=n_max`.
pub fn intensity_maxima(p: &SedsParams, n_max: u32) -> IntensityMaxima {
    let mut angles = vec![0.0];
    let mut orders = Vec::new();
    let mut excluded = 0;
    for n in 1..=n_max {
        let s = maximum_sine(p.hbar, p.b_half, p.v, n);
        if s <= 1.0 {
            let theta = s.asin();
            angles.push(theta);
            angles.push(-theta);
            orders.push(n);
        } else {
            excluded += 1;
        }
    }
    IntensityMaxima {
        angles,
        orders,
        excluded,
    }
}

/// `sin θ_n = h̄ π (n + ½) / (2 b v)`.
pub fn maximum_sine(hbar: f64, b_half: f64, v: f64, n: u32) -> f64 {
    hbar * PI * (n as f64 + 0.5) / (2.0 * b_half * v)
}

/// `θ(h̄, b)` of one maximum order on a grid; rows follow `hbar`, columns `b_half`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationSurface {
    pub hbar: Vec<f64>,
    pub b_half: Vec<f64>,
    pub v: f64,
    pub n: u32,
    pub theta: Vec<Vec<f64>>,
    /// `sin θ` was clamped to 1 in this cell.
    pub saturated: Vec<Vec<bool>>,
}

impl DeviationSurface {
    /// Increasing in h̄ and decreasing in b wherever neither neighbour is saturated.
    pub fn is_monotone(&self) -> bool {
        let rows = self.hbar.len();
        let cols = self.b_half.len();
        for i in 0..rows {
            for j in 0..cols {
                if self.saturated[i][j] {
                    continue;
                }
                if i + 1 < rows && !self.saturated[i + 1][j] && !(self.theta[i + 1][j] > self.theta[i][j]) {
                    return false;
                }
                if j + 1 < cols && !self.saturated[i][j + 1] && !(self.theta[i][j + 1] < self.theta[i][j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn saturated_count(&self) -> usize {
        self.saturated.iter().flatten().filter(|s| **s).count()
    }
}

pub fn deviation_surface(hbar: &[f64], b_half: &[f64], v: f64, n: u32) -> Result<DeviationSurface, SedsError> {
    positive("v", v)?;
    for (field, axis) in [("hbar", hbar), ("b_half", b_half)] {
        if axis.is_empty() {
            return Err(SedsError::InvalidParameter {
                field,
                value: f64::NAN,
                reason: "surface axis is empty",
            });
        }
        for &x in axis {
            positive(field, x)?;
        }
    }
    let mut theta = Vec::with_capacity(hbar.len());
    let mut saturated = Vec::with_capacity(hbar.len());
    for &h in hbar {
        let (row, flags): (Vec<f64>, Vec<bool>) = b_half
            .iter()
            .map(|&b| {
                let s = maximum_sine(h, b, v, n);
                (s.min(1.0).asin(), s > 1.0)
            })
            .unzip();
        theta.push(row);
        saturated.push(flags);
    }
    Ok(DeviationSurface {
        hbar: hbar.to_vec(),
        b_half: b_half.to_vec(),
        v,
        n,
        theta,
        saturated,
    })
}

/// Screen wavenumber matching the far-field envelope: `k_y b = w y / 2h̄t`.
pub fn screen_wavenumber(y: f64, t: f64, hbar: f64, w: f64, b_half: f64) -> f64 {
    y * w / (2.0 * hbar * t * b_half)
}

/// The mode energy density mapped onto the screen, unit peak.
pub fn seds_screen_shape(
    y_grid: &[f64],
    t: f64,
    hbar: f64,
    w: f64,
    b_half: f64,
) -> Result<PatternSeries, SedsError> {
    positive("t", t)?;
    positive("w", w)?;
    positive("b_half", b_half)?;
    let values = y_grid
        .iter()
        .map(|&y| mode_energy_density(screen_wavenumber(y, t, hbar, w, b_half), b_half))
        .collect();
    Ok(PatternSeries::build(
        y_grid,
        t,
        values,
        PatternKind::Seds,
        Normalization::UnitPeak,
        Vec::new(),
    )?)
}
