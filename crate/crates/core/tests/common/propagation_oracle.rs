//! Independent evaluations of the evolved slit wave function.
//!
//! `phi_direct` integrates the momentum representation numerically: for each
//! slit, the initial state's Fourier transform (inner ξ integral) is fed
//! through the free evolution phase (outer p integral). The outer integrand
//! only decays conditionally on the real axis, so the p contour is rotated to
//! `p = p0 + e^{-iπ/4} s` through the stationary point of the slit centre,
//! where `exp(-i p² t / 2h̄)` becomes a real Gaussian in `s`. The inner
//! integral is entire in `p`, so the rotation does not change the value.

use std::f64::consts::{FRAC_PI_4, PI};

use macroslit::numerics::{integrate_adaptive, QuadratureOptions};
use macroslit::propagation::{phi_evolved, truncated_mass, PacketParams, SlitGeometry};
use num_complex::Complex64;

pub fn phi_direct(y: f64, t: f64, p: &PacketParams, g: &SlitGeometry, rel_tol: f64) -> Complex64 {
    let h = p.hbar;
    let prefactor = p.beta.sqrt() / (2.0 * h * PI.powf(1.25));
    let rot = Complex64::from_polar(1.0, -FRAC_PI_4);
    let i = Complex64::i();
    let inner_opts = QuadratureOptions::with_tolerances(1e-300, rel_tol * 1e-2);

    let mut total = Complex64::new(0.0, 0.0);
    for (lo, hi) in g.components() {
        let centre = 0.5 * (lo + hi);
        let p0 = (y - centre) / t;
        let inner = |pc: Complex64| {
            let f = |xi: f64| (-i * pc * xi / h - 0.5 * (p.beta * (xi - p.y0)).powi(2)).exp();
            let phase = pc.norm() * (hi - lo) / h;
            let panels = (phase / (0.5 * PI)).ceil().max(1.0) as usize;
            integrate_adaptive(f, lo, hi, &inner_opts.with_initial_panels(panels))
                .expect("inner slit integral")
                .value
        };
        let outer = |s: f64| {
            let pc = p0 + rot * s;
            (i / h * (pc * y - pc * pc * t / 2.0)).exp() * inner(pc) * rot
        };

        // Gaussian width √(h̄/t) in s, shifted by at most w/(2√2 t).
        let mut half = (hi - lo) / (2.0 * 2f64.sqrt() * t) + 8.0 * (h / t).sqrt();
        let mut previous: Option<Complex64> = None;
        let value = loop {
            let phase = (y.abs() + half) * half / h;
            let panels = (phase / (0.5 * PI)).ceil().clamp(4.0, 2000.0) as usize;
            let opts = QuadratureOptions {
                max_subdivisions: 200_000,
                ..QuadratureOptions::with_tolerances(1e-300, rel_tol * 1e-1).with_initial_panels(panels)
            };
            let v = integrate_adaptive(outer, -half, half, &opts).expect("outer momentum integral").value;
            if let Some(prev) = previous {
                if (v - prev).norm() <= rel_tol * 1e-1 * v.norm() {
                    break v;
                }
            }
            previous = Some(v);
            half *= 2.0;
        };
        total += value;
    }
    prefactor * total
}

/// `∫_{-Y}^{Y} |φ_I(y, t)|² dy` plus an estimate of the mass beyond `±Y`.
///
/// Far from the slits the evolved wave is dominated by the four slit-edge
/// contributions `e^{g_k}/g'(η_k)`; their squared moduli integrate in closed
/// form, and the cross terms oscillate and average out.
pub fn screen_mass(t: f64, p: &PacketParams, g: &SlitGeometry, half_width: f64, rel_tol: f64) -> f64 {
    let ht = p.hbar * t;
    let f = |y: f64| Complex64::new(phi_evolved(y, t, p, g).unwrap().norm_sqr(), 0.0);
    // Resolve the fastest edge-interference oscillation, 2 extent / h̄t.
    let rate = 2.0 * (g.extent() + p.y0.abs()) / ht;
    let panels = ((2.0 * half_width * rate) / (0.5 * PI)).ceil().clamp(16.0, 50_000.0) as usize;
    let opts = QuadratureOptions {
        max_subdivisions: 400_000,
        ..QuadratureOptions::with_tolerances(1e-300, rel_tol).with_initial_panels(panels)
    };
    let core = integrate_adaptive(f, -half_width, half_width, &opts)
        .expect("screen integral")
        .value
        .re;

    let pref_sq = p.beta / (2.0 * PI.powf(1.5) * ht);
    let mut tail = 0.0;
    for (lo, hi) in g.components() {
        for xi in [lo, hi] {
            let eta = xi - p.y0;
            let weight = (-(p.beta * eta).powi(2)).exp();
            let a = ht * p.beta * p.beta * eta.abs();
            let c = p.y0 + eta;
            let side = |dist: f64| if a > 0.0 { (a / dist).atan() / a } else { 1.0 / dist };
            tail += pref_sq * weight * ht * ht * (side(half_width - c) + side(half_width + c));
        }
    }
    core + tail
}

pub fn initial_mass(p: &PacketParams, g: &SlitGeometry) -> f64 {
    truncated_mass(p, g)
}

/// Screen half-width for `screen_mass` at 1e-6 accuracy: the slowly decaying
/// edge cross terms need a wider window as `h̄t` grows.
pub fn unitarity_half_width(t: f64, p: &PacketParams) -> f64 {
    if p.hbar * t < 1e-3 {
        20.0
    } else {
        1000.0 * t.sqrt().max(1.0)
    }
}
