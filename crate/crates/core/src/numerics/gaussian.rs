//! Finite-interval integrals of complex Gaussians,
//! `∫_lo^hi exp(-Aξ² + Bξ + C) dξ` with `Re A >= 0`.
//!
//! The closed form completes the square, `u = √A (ξ - B/2A)`, and expresses
//! the result through the scaled complementary error function so that the
//! exponentials are always evaluated at the interval endpoints (or at the
//! vertex, when it separates them). Short intervals on which the integrand is
//! nearly constant are summed from the Taylor series of the exponent instead,
//! because there the erf difference cancels.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::erf::erfcx_complex;
use super::quadrature::{integrate_adaptive, QuadratureOptions, QuadratureResult};
use super::NumericsError;

const SERIES_RADIUS: f64 = 1.0;
const SERIES_MAX_TERMS: usize = 200;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn expm1(w: Complex64) -> Complex64 {
    if w.norm() < 0.5 {
        let mut term = w;
        let mut sum = w;
        for k in 2..40 {
            term *= w / k as f64;
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        w.exp() - 1.0
    }
}

/// `∫_lo^hi exp(-Aξ² + Bξ) dξ`.
pub fn gaussian_interval_integral(
    a: Complex64,
    b: Complex64,
    lo: f64,
    hi: f64,
) -> Result<Complex64, NumericsError> {
    gaussian_interval_integral_scaled(a, b, zero(), lo, hi)
}

/// `∫_lo^hi exp(-Aξ² + Bξ + C) dξ`.
///
/// The constant `C` is folded into every exponential before evaluation, so a
/// large `C` compensating a large `B²/4A` does not overflow.
pub fn gaussian_interval_integral_scaled(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    lo: f64,
    hi: f64,
) -> Result<Complex64, NumericsError> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(NumericsError::InvalidInterval { lo, hi });
    }
    if a.re < 0.0 || !a.is_finite() || !b.is_finite() || !c.is_finite() {
        return Err(NumericsError::NegativeRealPart { a });
    }
    if lo == hi {
        return Ok(zero());
    }

    let exponent = |x: f64| -a * x * x + b * x + c;
    let value = if a == zero() {
        if b == zero() {
            c.exp() * (hi - lo)
        } else {
            (b * lo + c).exp() * expm1(b * (hi - lo)) / b
        }
    } else {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let slope = b - 2.0 * a * mid;
        if slope.norm() * half + a.norm() * half * half <= SERIES_RADIUS {
            exponent(mid).exp() * centered_series(a, slope, half)
        } else {
            erfcx_form(a, b, c, lo, hi)
        }
    };

    if value.is_finite() {
        Ok(value)
    } else {
        Err(NumericsError::Overflow)
    }
}

/// `∫_{-h}^{h} exp(s·slope - A s²) ds` from the power series of the integrand.
fn centered_series(a: Complex64, slope: Complex64, half: f64) -> Complex64 {
    // q_k = P_k h^k where exp(slope s - A s²) = Σ P_k s^k and
    // k P_k = slope P_{k-1} - 2A P_{k-2}.
    let lin = slope * half;
    let quad = a * (2.0 * half * half);
    let mut q_prev = Complex64::new(1.0, 0.0);
    let mut q = lin;
    let mut sum = q_prev;
    for k in 2..SERIES_MAX_TERMS {
        let next = (lin * q - quad * q_prev) / k as f64;
        q_prev = q;
        q = next;
        if k % 2 == 0 {
            sum += q / (k + 1) as f64;
        }
        if k > 6 && q.norm() + q_prev.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum * (2.0 * half)
}

fn erfcx_form(a: Complex64, b: Complex64, c: Complex64, lo: f64, hi: f64) -> Complex64 {
    let root = a.sqrt();
    let vertex = b / (2.0 * a);
    let u_lo = root * (lo - vertex);
    let u_hi = root * (hi - vertex);
    let f_lo = (-a * lo * lo + b * lo + c).exp();
    let f_hi = (-a * hi * hi + b * hi + c).exp();
    let prefactor = PI.sqrt() / (2.0 * root);

    // Re u is increasing in ξ because Re √A > 0.
    let bracket = if u_lo.re >= 0.0 {
        f_lo * erfcx_complex(u_lo) - f_hi * erfcx_complex(u_hi)
    } else if u_hi.re <= 0.0 {
        f_hi * erfcx_complex(-u_hi) - f_lo * erfcx_complex(-u_lo)
    } else {
        let peak = (c + b * b / (4.0 * a)).exp();
        peak * 2.0 - f_hi * erfcx_complex(u_hi) - f_lo * erfcx_complex(-u_lo)
    };
    prefactor * bracket
}

/// Number of equal panels needed so that the phase of `exp(-Aξ² + Bξ)`
/// changes by at most π/2 across each panel.
pub fn oscillation_panels(a: Complex64, b: Complex64, lo: f64, hi: f64) -> usize {
    // d/dξ Im(-Aξ² + Bξ) = Im B - 2 Im A ξ, linear in ξ: extremal at an endpoint.
    let rate = |x: f64| (b.im - 2.0 * a.im * x).abs();
    let max_rate = rate(lo).max(rate(hi));
    let phase = max_rate * (hi - lo);
    ((phase / (0.5 * PI)).ceil() as usize).max(1)
}

/// The same integral as [`gaussian_interval_integral`], by adaptive quadrature
/// on phase-bounded panels.
pub fn gaussian_interval_quadrature(
    a: Complex64,
    b: Complex64,
    lo: f64,
    hi: f64,
    opts: &QuadratureOptions,
) -> Result<QuadratureResult, NumericsError> {
    let panels = oscillation_panels(a, b, lo, hi).max(opts.initial_panels);
    let opts = QuadratureOptions {
        max_subdivisions: opts.max_subdivisions.max(panels * 4),
        ..opts.with_initial_panels(panels)
    };
    integrate_adaptive(|x| (-a * x * x + b * x).exp(), lo, hi, &opts)
}
