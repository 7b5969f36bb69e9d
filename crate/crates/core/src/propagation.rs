//! Slit geometry, the factorized wave packet and its free evolution behind
//! the slits.
//!
//! The incoming packet is `χ(x, t) φ(y, t)`. At the slit plane the y-part is
//! truncated to the transmitted set `I = [d, d+w] ∪ [-d'-w', -d']` and then
//! evolves freely:
//!
//! ```text
//! φ_I(y, t) = (β / (2 π^{3/2} i h̄ t))^{1/2} exp(i Y² / 2h̄t)
//!             · ∫_{I - y0} exp(-A η² - i Y η / h̄t) dη,      Y = y - y0
//! A = β²/2 - i/(2h̄t)
//! ```
//!
//! which is the free propagator applied to the truncated Gaussian, written in
//! the variable `η = ξ - y0` measured from the packet centre. Each slit
//! contributes one finite Gaussian integral evaluated in closed form.
//!
//! Two limiting patterns are provided: a packet much narrower than either
//! slit (Gaussian spreading scaled by the transmitted fraction) and a packet
//! much wider than the slits in the far field (`sinc² · cos²` fringes).

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{gaussian_interval_integral_scaled, gaussian_tail_integral, NumericsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PropagationError {
    #[error("{field} = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("evolution time must be positive (got {0}); use phi_initial for t = 0")]
    NonPositiveTime(f64),
    #[error("invalid y grid: {0}")]
    InvalidGrid(&'static str),
    #[error("regime violation: {0}")]
    Regime(String),
    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),
    #[error("pattern is identically zero and cannot be normalized to unit peak")]
    ZeroPattern,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn require(field: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<(), PropagationError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(PropagationError::InvalidParameter { field, value, reason })
    }
}

/// The two transmitting slits.
///
/// The upper slit spans `[d, d + w]`, the lower `[-d' - w', -d']`. The barrier
/// occupies the gap between them and everything outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitGeometry {
    pub w: f64,
    pub w_prime: f64,
    pub d: f64,
    pub d_prime: f64,
    pub a_slit: f64,
}

impl SlitGeometry {
    pub fn new(w: f64, w_prime: f64, d: f64, d_prime: f64, a_slit: f64) -> Result<Self, PropagationError> {
        require("w", w, w > 0.0, "slit width must be positive")?;
        require("w_prime", w_prime, w_prime > 0.0, "slit width must be positive")?;
        require("d", d, d >= 0.0, "slit offset must be non-negative")?;
        require("d_prime", d_prime, d_prime >= 0.0, "slit offset must be non-negative")?;
        require("a_slit", a_slit, a_slit > 0.0, "barrier half-depth must be positive")?;
        // d = d' = 0 would merge the slits into one interval.
        require("d", d, d + d_prime > 0.0, "the slits must be separated (d + d_prime > 0)")?;
        Ok(Self {
            w,
            w_prime,
            d,
            d_prime,
            a_slit,
        })
    }

    pub fn symmetric(w: f64, d: f64, a_slit: f64) -> Result<Self, PropagationError> {
        Self::new(w, w, d, d, a_slit)
    }

    pub fn upper(&self) -> (f64, f64) {
        (self.d, self.d + self.w)
    }

    pub fn lower(&self) -> (f64, f64) {
        (-self.d_prime - self.w_prime, -self.d_prime)
    }

    /// Both components of `I`, upper slit first.
    pub fn components(&self) -> [(f64, f64); 2] {
        [self.upper(), self.lower()]
    }

    pub fn contains(&self, y: f64) -> bool {
        self.components().iter().any(|&(lo, hi)| lo <= y && y <= hi)
    }

    pub fn is_symmetric(&self) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300);
        close(self.w, self.w_prime) && (close(self.d, self.d_prime) || self.d == self.d_prime)
    }

    pub fn min_width(&self) -> f64 {
        self.w.min(self.w_prime)
    }

    /// Largest `|y|` inside `I`.
    pub fn extent(&self) -> f64 {
        (self.d + self.w).max(self.d_prime + self.w_prime)
    }
}

/// Parameters of the incoming packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketParams {
    pub zeta: f64,
    pub k0x: f64,
    pub x0: f64,
    pub y0: f64,
    pub beta: f64,
    pub hbar: f64,
}

impl PacketParams {
    pub fn new(zeta: f64, k0x: f64, x0: f64, y0: f64, beta: f64, hbar: f64) -> Result<Self, PropagationError> {
        require("zeta", zeta, zeta > 0.0, "must be positive")?;
        require("k0x", k0x, k0x > 0.0, "the packet must move toward the slits")?;
        require("x0", x0, true, "must be finite")?;
        require("y0", y0, true, "must be finite")?;
        require("beta", beta, beta > 0.0, "must be positive")?;
        require("hbar", hbar, hbar > 0.0, "must be positive")?;
        Ok(Self {
            zeta,
            k0x,
            x0,
            y0,
            beta,
            hbar,
        })
    }

    /// Position spread `Δy = 1/(β√2)`.
    pub fn delta_y(&self) -> f64 {
        1.0 / (self.beta * 2f64.sqrt())
    }
}

/// Evolution time for a screen at distance `l` behind the slits.
pub fn screen_time(l: f64, k0x: f64) -> Result<f64, PropagationError> {
    require("screen_distance", l, l > 0.0, "must be positive")?;
    require("k0x", k0x, k0x > 0.0, "must be positive")?;
    Ok(l / k0x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Full,
    NarrowLimit,
    WideLimit,
    Seds,
}

impl PatternKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PatternKind::Full => "full",
            PatternKind::NarrowLimit => "narrow_limit",
            PatternKind::WideLimit => "wide_limit",
            PatternKind::Seds => "seds",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// The y-probability density `|φ_I(y, t)|²` (the x-factor is not included).
    Raw,
    #[default]
    UnitPeak,
}

impl Normalization {
    pub fn as_str(&self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::UnitPeak => "unit_peak",
        }
    }
}

/// Intensity samples on a screen.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternSeries {
    pub y_grid: Vec<f64>,
    pub t: f64,
    pub values: Vec<f64>,
    pub kind: PatternKind,
    pub normalization: Normalization,
    /// Soft regime warnings raised while building the series.
    pub warnings: Vec<String>,
}

impl PatternSeries {
    pub(crate) fn build(
        y_grid: &[f64],
        t: f64,
        mut values: Vec<f64>,
        kind: PatternKind,
        normalization: Normalization,
        warnings: Vec<String>,
    ) -> Result<Self, PropagationError> {
        if normalization == Normalization::UnitPeak {
            let peak = values.iter().cloned().fold(0.0, f64::max);
            if !(peak > 0.0) {
                return Err(PropagationError::ZeroPattern);
            }
            values.iter_mut().for_each(|v| *v /= peak);
        }
        Ok(Self {
            y_grid: y_grid.to_vec(),
            t,
            values,
            kind,
            normalization,
            warnings,
        })
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }
}

/// `n` equally spaced points from `min` to `max` inclusive.
pub fn uniform_grid(min: f64, max: f64, n: usize) -> Result<Vec<f64>, PropagationError> {
    if n < 2 {
        return Err(PropagationError::InvalidGrid("at least two samples are required"));
    }
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(PropagationError::InvalidGrid("y_min must be below y_max"));
    }
    let step = (max - min) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { max } else { min + step * i as f64 })
        .collect())
}

fn check_grid(y_grid: &[f64]) -> Result<(), PropagationError> {
    if y_grid.is_empty() {
        return Err(PropagationError::InvalidGrid("empty"));
    }
    if y_grid.iter().any(|y| !y.is_finite()) {
        return Err(PropagationError::InvalidGrid("non-finite sample"));
    }
    if y_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(PropagationError::InvalidGrid("samples must be strictly increasing"));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<(), PropagationError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(PropagationError::NonPositiveTime(t))
    }
}

/// The x-packet at time `t`, centred on `p.x0` at `t = 0`.
pub fn chi_x(x: f64, t: f64, p: &PacketParams) -> Complex64 {
    chi_x_from(x, t, p, p.x0)
}

/// The x-packet behind the slits, which starts at the barrier face `x = a`.
pub fn chi_after_slits(x: f64, t: f64, p: &PacketParams, g: &SlitGeometry) -> Complex64 {
    chi_x_from(x, t, p, g.a_slit)
}

fn chi_x_from(x: f64, t: f64, p: &PacketParams, x0: f64) -> Complex64 {
    let i = Complex64::i();
    let spread = Complex64::new(1.0, p.hbar * p.zeta * p.zeta * t);
    let amplitude = (p.zeta / (PI.sqrt() * spread)).sqrt();
    let u = x - x0 - p.k0x * t;
    let exponent = -0.5 * p.zeta * p.zeta * u * u / spread + i * p.k0x * (x - x0) / p.hbar
        - i * p.k0x * p.k0x * t / (2.0 * p.hbar);
    amplitude * exponent.exp()
}

/// The y-packet at the slit plane, zero on the barrier.
pub fn phi_initial(y: f64, p: &PacketParams, g: &SlitGeometry) -> Complex64 {
    if !g.contains(y) {
        return Complex64::new(0.0, 0.0);
    }
    let u = y - p.y0;
    Complex64::new((p.beta / PI.sqrt()).sqrt() * (-0.5 * p.beta * p.beta * u * u).exp(), 0.0)
}

/// `∫_I |φ(y, 0)|² dy`, the probability transmitted by the slits.
pub fn truncated_mass(p: &PacketParams, g: &SlitGeometry) -> f64 {
    g.components()
        .iter()
        .map(|&(lo, hi)| gaussian_tail_integral(p.beta * (lo - p.y0), p.beta * (hi - p.y0)))
        .sum::<f64>()
        / PI.sqrt()
}

/// `φ_I(y, t)` for `t > 0`.
pub fn phi_evolved(y: f64, t: f64, p: &PacketParams, g: &SlitGeometry) -> Result<Complex64, PropagationError> {
    check_time(t)?;
    if !y.is_finite() {
        return Err(PropagationError::InvalidParameter {
            field: "y",
            value: y,
            reason: "must be finite",
        });
    }
    let ht = p.hbar * t;
    let big_y = y - p.y0;
    let a = Complex64::new(0.5 * p.beta * p.beta, -0.5 / ht);
    let b = Complex64::new(0.0, -big_y / ht);
    // The Y² phase is folded into each integral; large |Y| then never
    // evaluates an exponential far from the unit circle.
    let c = Complex64::new(0.0, 0.5 * big_y * big_y / ht);
    let mut integral = Complex64::new(0.0, 0.0);
    for (lo, hi) in g.components() {
        integral += gaussian_interval_integral_scaled(a, b, c, lo - p.y0, hi - p.y0)?;
    }
    let prefactor = (p.beta / (2.0 * PI.powf(1.5) * Complex64::i() * ht)).sqrt();
    Ok(prefactor * integral)
}

/// Regime factors for the limiting patterns; the criteria themselves are
/// only "much narrower" / "much wider".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    /// Narrow limit requires `Δy ≤ min(w, w') / narrow_factor`.
    pub narrow_factor: f64,
    /// Narrow limit warns when `Δy > min(w, w') / narrow_warn_factor`.
    pub narrow_warn_factor: f64,
    /// Wide limit requires `Δy ≥ wide_factor · w`.
    pub wide_factor: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            narrow_factor: 5.0,
            narrow_warn_factor: 10.0,
            wide_factor: 5.0,
        }
    }
}

/// `Δy ≤ min(w, w')/narrow_factor`; returns any soft warnings.
pub fn check_narrow_regime(
    p: &PacketParams,
    g: &SlitGeometry,
    thresholds: &RegimeThresholds,
) -> Result<Vec<String>, PropagationError> {
    let dy = p.delta_y();
    let w = g.min_width();
    if dy > w / thresholds.narrow_factor {
        return Err(PropagationError::Regime(format!(
            "narrow-packet limit needs delta_y <= min(w, w_prime)/{}; delta_y = {dy:.6e}, min width = {w:.6e}",
            thresholds.narrow_factor
        )));
    }
    let mut warnings = Vec::new();
    if dy > w / thresholds.narrow_warn_factor {
        warnings.push(format!(
            "delta_y = {dy:.3e} exceeds min(w, w_prime)/{}; the narrow limit is only approximate",
            thresholds.narrow_warn_factor
        ));
    }
    Ok(warnings)
}

/// Symmetric slits with `Δy ≥ wide_factor · w`; warns outside the far field.
pub fn check_wide_regime(
    t: f64,
    p: &PacketParams,
    g: &SlitGeometry,
    thresholds: &RegimeThresholds,
) -> Result<Vec<String>, PropagationError> {
    if !g.is_symmetric() {
        return Err(PropagationError::UnsupportedGeometry(format!(
            "the wide-packet limit assumes d = d_prime and w = w_prime (got d = {}, d_prime = {}, w = {}, w_prime = {})",
            g.d, g.d_prime, g.w, g.w_prime
        )));
    }
    let dy = p.delta_y();
    if dy < thresholds.wide_factor * g.w {
        return Err(PropagationError::Regime(format!(
            "wide-packet limit needs delta_y >= {} w; delta_y = {dy:.6e}, w = {:.6e}",
            thresholds.wide_factor, g.w
        )));
    }
    let mut warnings = Vec::new();
    // Phase of the dropped ξ²/2h̄t term across one slit; the part common to
    // both slits cancels in the intensity.
    let fresnel = g.w * (2.0 * g.d + g.w) / (2.0 * p.hbar * t);
    if fresnel > 1.0 {
        warnings.push(format!(
            "not in the far field: w(2d + w)/(2 hbar t) = {fresnel:.3} > 1"
        ));
    }
    Ok(warnings)
}

/// `|φ_I(y, t)|²` on the grid.
pub fn pattern_full(
    t: f64,
    p: &PacketParams,
    g: &SlitGeometry,
    y_grid: &[f64],
    normalization: Normalization,
) -> Result<PatternSeries, PropagationError> {
    check_time(t)?;
    check_grid(y_grid)?;
    let values = y_grid
        .iter()
        .map(|&y| phi_evolved(y, t, p, g).map(|phi| phi.norm_sqr()))
        .collect::<Result<Vec<_>, _>>()?;
    PatternSeries::build(y_grid, t, values, PatternKind::Full, normalization, Vec::new())
}

/// Spreading Gaussian weighted by the squared transmitted amplitude.
pub fn narrow_limit_density(y: f64, t: f64, p: &PacketParams, g: &SlitGeometry) -> f64 {
    let b = p.beta;
    let ht = p.hbar * t;
    let spread = 1.0 + ht * ht * b.powi(4);
    let envelope = PI.powf(-1.5) * b / spread.sqrt() * (-b * b * (y - p.y0).powi(2) / spread).exp();
    let s = b / 2f64.sqrt();
    let lower = gaussian_tail_integral((p.y0 + g.d_prime) * s, (p.y0 + g.w_prime + g.d_prime) * s);
    let upper = gaussian_tail_integral((p.y0 - g.d - g.w) * s, (p.y0 - g.d) * s);
    let bracket = lower + upper;
    envelope * bracket * bracket
}

pub fn pattern_narrow_limit(
    t: f64,
    p: &PacketParams,
    g: &SlitGeometry,
    y_grid: &[f64],
    normalization: Normalization,
    thresholds: &RegimeThresholds,
) -> Result<PatternSeries, PropagationError> {
    check_time(t)?;
    check_grid(y_grid)?;
    let warnings = check_narrow_regime(p, g, thresholds)?;
    let values = y_grid.iter().map(|&y| narrow_limit_density(y, t, p, g)).collect();
    PatternSeries::build(y_grid, t, values, PatternKind::NarrowLimit, normalization, warnings)
}

/// `sin(u)/u` with `sinc(0) = 1`.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

/// Far-field two-slit density for symmetric slits.
pub fn wide_limit_density(y: f64, t: f64, p: &PacketParams, g: &SlitGeometry) -> f64 {
    let ht = p.hbar * t;
    let peak = 2.0 * g.w * g.w * p.beta / (PI.powf(1.5) * ht) * (-p.beta * p.beta * p.y0 * p.y0).exp();
    let envelope = sinc(g.w * y / (2.0 * ht));
    let fringe = (y / ht * (g.d + 0.5 * g.w)).cos();
    peak * envelope * envelope * fringe * fringe
}

pub fn pattern_wide_limit(
    t: f64,
    p: &PacketParams,
    g: &SlitGeometry,
    y_grid: &[f64],
    normalization: Normalization,
    thresholds: &RegimeThresholds,
) -> Result<PatternSeries, PropagationError> {
    check_time(t)?;
    check_grid(y_grid)?;
    let warnings = check_wide_regime(t, p, g, thresholds)?;
    let values = y_grid.iter().map(|&y| wide_limit_density(y, t, p, g)).collect();
    PatternSeries::build(y_grid, t, values, PatternKind::WideLimit, normalization, warnings)
}

/// Screen positions of the envelope zeros, `2πn h̄t/w` for `n = 1..=count`.
pub fn sinc_zeros(t: f64, p: &PacketParams, g: &SlitGeometry, count: usize) -> Vec<f64> {
    (1..=count).map(|n| 2.0 * PI * n as f64 * p.hbar * t / g.w).collect()
}

/// Period of the `cos²` fringes, `π h̄t / (d + w/2)`.
pub fn fringe_spacing(t: f64, p: &PacketParams, g: &SlitGeometry) -> f64 {
    PI * p.hbar * t / (g.d + 0.5 * g.w)
}

/// Indices of strict interior local maxima whose value exceeds `floor`.
pub fn local_maxima(values: &[f64], floor: f64) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1] && values[i] > floor)
        .collect()
}

/// Indices of strict interior local minima.
pub fn local_minima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
        .collect()
}
