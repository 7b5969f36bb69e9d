//! Brute-force checks of the normal-mode decomposition.

use macroslit::coupling::{composite_frequency, CouplingParams, DecoupledModes, joint_ground_state};
use macroslit::numerics::{integrate_adaptive, QuadratureOptions};
use num_complex::Complex64;

/// Eigenvalues of `[[a, b], [b, c]]`, ascending, by the quadratic formula.
pub fn symmetric_eigenvalues(a: f64, b: f64, c: f64) -> (f64, f64) {
    let mean = 0.5 * (a + c);
    let radius = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    // The smaller root from the product to avoid cancellation.
    let large = mean + radius;
    let small = (a * c - b * b) / large;
    (small, large)
}

/// The α-block of the potential matrix, `(ω², -ω_α²γ_α, ω_α²)`.
pub fn potential_block(p: &CouplingParams, alpha: usize) -> (f64, f64, f64) {
    let w = composite_frequency(p);
    let wa = p.omega_alpha()[alpha];
    (w * w, -wa * wa * p.gamma()[alpha], wa * wa)
}

/// Entries of `R M Rᵀ` with `R = [[c, s], [-s, c]]`.
pub fn rotate(block: (f64, f64, f64), theta: f64) -> (f64, f64, f64) {
    let (m11, m12, m22) = block;
    let (s, c) = theta.sin_cos();
    let d11 = c * c * m11 + 2.0 * s * c * m12 + s * s * m22;
    let d12 = -s * c * m11 + (c * c - s * s) * m12 + s * c * m22;
    let d22 = s * s * m11 - 2.0 * s * c * m12 + c * c * m22;
    (d11, d12, d22)
}

/// `∫∫ |Ψ(q', x1, x2)|² dx1 dx2` by nested adaptive quadrature.
pub fn marginal_density(q_prime: f64, modes: &DecoupledModes, hbar: f64) -> f64 {
    // Widest environment spread sets the box.
    let slowest = modes
        .omega_plus
        .iter()
        .chain(modes.omega_minus.iter())
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let half = 12.0 * (hbar / slowest).sqrt() + 2.0 * q_prime.abs();
    let opts = QuadratureOptions::with_tolerances(1e-300, 1e-12).with_initial_panels(8);
    let inner = |x1: f64| {
        let f = |x2: f64| {
            let psi = joint_ground_state(modes.normal_coordinates(q_prime, [x1, x2]), modes, hbar);
            Complex64::new(psi * psi, 0.0)
        };
        integrate_adaptive(f, -half, half, &opts).expect("x2 integral").value
    };
    integrate_adaptive(inner, -half, half, &opts).expect("x1 integral").value.re
}

/// Least-squares slope of `ln P(q') - ln P(0)` against `-q'²`.
pub fn fitted_marginal_coefficient(modes: &DecoupledModes, hbar: f64, q_points: &[f64]) -> (f64, f64) {
    let p0 = marginal_density(0.0, modes, hbar);
    let mut num = 0.0;
    let mut den = 0.0;
    for &q in q_points {
        let y = -(marginal_density(q, modes, hbar) / p0).ln();
        let x = q * q;
        num += x * y;
        den += x * x;
    }
    (num / den, p0)
}
