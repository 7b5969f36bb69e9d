//! Central oscillator bilinearly coupled to two environmental oscillators.
//!
//! After eliminating the counter-term, the potential seen by the system
//! coordinate `q' = q/N` and environment coordinate `x_α` is the quadratic form
//!
//! ```text
//! ½ [ω² q'² + ω_α² x_α² - 2 ω_α² γ_α q' x_α],   ω² = ω_e² + Σ_α ω_α² γ_α²
//! ```
//!
//! A rotation by `θ_α` with `tan 2θ_α = ω'_α² / (ω² - ω_α²)`, where
//! `ω'_α² = -2 ω_α² γ_α`, diagonalizes each α-block into two normal modes
//! `ω_{±α}`. The system's ground-state position distribution is then a
//! Gaussian `(β/√π) exp(-β² q²)`.
//!
//! `ω'_α` is imaginary; only its square enters any formula, so it is stored as
//! the real, negative quantity `ω'_α²`.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;

use thiserror::Error;

use crate::units::is_quasi_classical;

/// Number of environmental oscillators.
pub const ENVIRONMENT_SIZE: usize = 2;

/// Below this `|ω² - ω_α²|` the rotation angle takes its limiting value.
pub const DEGENERACY_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CouplingError {
    #[error("{field} = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("environment index {0} out of range (expected 0 or 1)")]
    AlphaOutOfRange(usize),
    #[error("normal mode {mode} of environment oscillator {alpha} is unstable (squared frequency {radicand})")]
    Unstable {
        alpha: usize,
        mode: char,
        radicand: f64,
    },
    #[error("degenerate normal-mode frequencies: the marginal width is undefined")]
    DegenerateMode,
}

/// Parameters of the system-environment model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    omega_e: f64,
    omega_alpha: [f64; ENVIRONMENT_SIZE],
    gamma: [f64; ENVIRONMENT_SIZE],
    hbar: f64,
}

impl CouplingParams {
    pub fn new(
        omega_e: f64,
        omega_alpha: [f64; ENVIRONMENT_SIZE],
        gamma: [f64; ENVIRONMENT_SIZE],
        hbar: f64,
    ) -> Result<Self, CouplingError> {
        let positive = |field, value: f64| {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                Err(CouplingError::InvalidParameter {
                    field,
                    value,
                    reason: "must be positive",
                })
            }
        };
        positive("omega_e", omega_e)?;
        positive("omega_alpha1", omega_alpha[0])?;
        positive("omega_alpha2", omega_alpha[1])?;
        positive("hbar", hbar)?;
        for (field, g) in [("gamma1", gamma[0]), ("gamma2", gamma[1])] {
            if !(g > 0.0 && g < 1.0) {
                return Err(CouplingError::InvalidParameter {
                    field,
                    value: g,
                    reason: "coupling strength must lie in (0, 1)",
                });
            }
        }
        Ok(Self {
            omega_e,
            omega_alpha,
            gamma,
            hbar,
        })
    }

    /// Both environment oscillators share frequency and coupling.
    pub fn identical(omega_e: f64, omega_alpha: f64, gamma: f64, hbar: f64) -> Result<Self, CouplingError> {
        Self::new(omega_e, [omega_alpha; 2], [gamma; 2], hbar)
    }

    pub fn omega_e(&self) -> f64 {
        self.omega_e
    }

    pub fn omega_alpha(&self) -> [f64; ENVIRONMENT_SIZE] {
        self.omega_alpha
    }

    pub fn gamma(&self) -> [f64; ENVIRONMENT_SIZE] {
        self.gamma
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Σ_α γ_α², which reduces to `N γ²` for identical oscillators.
    pub fn gamma_sq_sum(&self) -> f64 {
        self.gamma.iter().map(|g| g * g).sum()
    }

    fn check_alpha(alpha: usize) -> Result<(), CouplingError> {
        if alpha < ENVIRONMENT_SIZE {
            Ok(())
        } else {
            Err(CouplingError::AlphaOutOfRange(alpha))
        }
    }
}

/// `ω = sqrt(ω_e² + Σ_α ω_α² γ_α²)`.
pub fn composite_frequency(p: &CouplingParams) -> f64 {
    composite_frequency_sq(p).sqrt()
}

fn composite_frequency_sq(p: &CouplingParams) -> f64 {
    p.omega_e * p.omega_e
        + p.omega_alpha
            .iter()
            .zip(p.gamma.iter())
            .map(|(w, g)| w * w * g * g)
            .sum::<f64>()
}

/// Quadratic coefficient of the effective potential `V1(q) = coefficient · q²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivePotential {
    pub coefficient: f64,
    /// The environment has turned the well into a barrier.
    pub inverted: bool,
}

pub fn effective_potential_coefficient(p: &CouplingParams) -> EffectivePotential {
    let shift: f64 = p
        .omega_alpha
        .iter()
        .zip(p.gamma.iter())
        .map(|(w, g)| g * (1.0 - g) * w * w)
        .sum();
    let coefficient = 0.5 * (p.omega_e * p.omega_e - shift);
    EffectivePotential {
        coefficient,
        inverted: coefficient < 0.0,
    }
}

/// `ω'_α² = -2 ω_α² γ_α`.
pub fn omega_prime_sq(p: &CouplingParams, alpha: usize) -> Result<f64, CouplingError> {
    CouplingParams::check_alpha(alpha)?;
    let w = p.omega_alpha[alpha];
    Ok(-2.0 * w * w * p.gamma[alpha])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAngle {
    pub theta: f64,
    /// `ω² ≈ ω_α²`; `theta` is the limiting value -π/4.
    pub degenerate: bool,
}

/// Principal-branch decoupling angle, `2θ ∈ (-π/2, π/2)`.
pub fn rotation_angle(p: &CouplingParams, alpha: usize) -> Result<RotationAngle, CouplingError> {
    let numerator = omega_prime_sq(p, alpha)?;
    let wa = p.omega_alpha[alpha];
    let denominator = composite_frequency_sq(p) - wa * wa;
    if denominator.abs() < DEGENERACY_TOLERANCE {
        return Ok(RotationAngle {
            theta: -FRAC_PI_4,
            degenerate: true,
        });
    }
    Ok(RotationAngle {
        theta: 0.5 * (numerator / denominator).atan(),
        degenerate: false,
    })
}

/// `(ω_{+α}, ω_{-α})` for a rotation by `theta`.
pub fn normal_mode_frequencies(
    p: &CouplingParams,
    theta: f64,
    alpha: usize,
) -> Result<(f64, f64), CouplingError> {
    let wp2 = omega_prime_sq(p, alpha)?;
    let wa = p.omega_alpha[alpha];
    let (plus_sq, minus_sq) = rotated_stiffness(composite_frequency_sq(p), wa * wa, wp2, theta);
    if !(plus_sq > 0.0) {
        return Err(CouplingError::Unstable {
            alpha,
            mode: '+',
            radicand: plus_sq,
        });
    }
    if !(minus_sq > 0.0) {
        return Err(CouplingError::Unstable {
            alpha,
            mode: '-',
            radicand: minus_sq,
        });
    }
    Ok((plus_sq.sqrt(), minus_sq.sqrt()))
}

/// Diagonal entries of the rotated potential matrix.
pub(crate) fn rotated_stiffness(omega_sq: f64, omega_alpha_sq: f64, omega_prime_sq: f64, theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let plus = omega_sq * c * c + omega_alpha_sq * s * s + omega_prime_sq * s * c;
    let minus = omega_sq * s * s + omega_alpha_sq * c * c - omega_prime_sq * s * c;
    (plus, minus)
}

/// Outcome of the regime checks on the coupling and wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    /// `λ0² (1 - Σγ²) < λ_α²`.
    pub wavelength_bound: bool,
    /// `λ0 < λ_α`, equivalently `λ̄0/R0 < λ̄_α/R0`.
    pub wavelength_order: bool,
    /// `0.01 < h̄ < 0.1`.
    pub hbar_window: bool,
    /// Per oscillator: `ω_e² < ω_α² (1 - Σγ²)`, the branch with `tan 2θ > 0`.
    pub positive_tangent_branch: [bool; ENVIRONMENT_SIZE],
    /// `Σγ² < 1`; without it the positive-tangent branch cannot occur.
    pub interaction_bounded: bool,
    pub gamma_sq_sum: f64,
}

impl ValidityReport {
    pub fn wavelength_conditions_hold(&self) -> bool {
        self.wavelength_bound && self.wavelength_order && self.hbar_window
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "coupling validity report:")?;
        writeln!(f, "  lambda0^2 (1 - sum gamma^2) < lambda_alpha^2 : {}", mark(self.wavelength_bound))?;
        writeln!(f, "  lambda0 < lambda_alpha                        : {}", mark(self.wavelength_order))?;
        writeln!(f, "  0.01 < hbar < 0.1                             : {}", mark(self.hbar_window))?;
        writeln!(
            f,
            "  sum gamma^2 = {:.6} < 1                     : {}",
            self.gamma_sq_sum,
            mark(self.interaction_bounded)
        )?;
        write!(
            f,
            "  omega_e^2 < omega_alpha^2 (1 - sum gamma^2)   : [{}, {}]",
            mark(self.positive_tangent_branch[0]),
            mark(self.positive_tangent_branch[1])
        )
    }
}

pub fn check_validity(p: &CouplingParams, lambda_alpha: f64, lambda_0: f64) -> ValidityReport {
    let gamma_sq_sum = p.gamma_sq_sum();
    let reduction = 1.0 - gamma_sq_sum;
    let we2 = p.omega_e * p.omega_e;
    let branch = |alpha: usize| {
        let wa = p.omega_alpha[alpha];
        reduction > 0.0 && we2 < wa * wa * reduction
    };
    ValidityReport {
        wavelength_bound: lambda_0 * lambda_0 * reduction < lambda_alpha * lambda_alpha,
        wavelength_order: lambda_0 < lambda_alpha,
        hbar_window: is_quasi_classical(p.hbar),
        positive_tangent_branch: [branch(0), branch(1)],
        interaction_bounded: gamma_sq_sum < 1.0,
        gamma_sq_sum,
    }
}

/// The decoupled normal-mode description of the ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoupledModes {
    pub theta: [f64; ENVIRONMENT_SIZE],
    pub degenerate: [bool; ENVIRONMENT_SIZE],
    pub omega: f64,
    pub omega_prime_sq: [f64; ENVIRONMENT_SIZE],
    pub omega_plus: [f64; ENVIRONMENT_SIZE],
    pub omega_minus: [f64; ENVIRONMENT_SIZE],
    /// sin θ_α
    pub s_rot: [f64; ENVIRONMENT_SIZE],
    /// cos θ_α
    pub c_rot: [f64; ENVIRONMENT_SIZE],
    pub beta: f64,
}

impl DecoupledModes {
    pub fn compute(p: &CouplingParams) -> Result<Self, CouplingError> {
        let mut modes = DecoupledModes {
            theta: [0.0; 2],
            degenerate: [false; 2],
            omega: composite_frequency(p),
            omega_prime_sq: [0.0; 2],
            omega_plus: [0.0; 2],
            omega_minus: [0.0; 2],
            s_rot: [0.0; 2],
            c_rot: [1.0; 2],
            beta: 0.0,
        };
        for alpha in 0..ENVIRONMENT_SIZE {
            let angle = rotation_angle(p, alpha)?;
            let (plus, minus) = normal_mode_frequencies(p, angle.theta, alpha)?;
            let (s, c) = angle.theta.sin_cos();
            modes.theta[alpha] = angle.theta;
            modes.degenerate[alpha] = angle.degenerate;
            modes.omega_prime_sq[alpha] = omega_prime_sq(p, alpha)?;
            modes.omega_plus[alpha] = plus;
            modes.omega_minus[alpha] = minus;
            modes.s_rot[alpha] = s;
            modes.c_rot[alpha] = c;
        }
        modes.beta = marginal_width_beta(&modes, p.hbar)?;
        Ok(modes)
    }

    /// Normal coordinates `(x_{+1}, x_{-1}, x_{+2}, x_{-2})` of the point
    /// `(q', x_1, x_2)`.
    pub fn normal_coordinates(&self, q_prime: f64, x: [f64; ENVIRONMENT_SIZE]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for i in 0..ENVIRONMENT_SIZE {
            let (s, c) = (self.s_rot[i], self.c_rot[i]);
            out[2 * i] = c * q_prime + s * x[i];
            out[2 * i + 1] = -s * q_prime + c * x[i];
        }
        out
    }

    fn mode_denominator(&self, i: usize) -> f64 {
        let (s, c) = (self.s_rot[i], self.c_rot[i]);
        s * s * self.omega_plus[i] + c * c * self.omega_minus[i]
    }

    /// `Σ_α ω_{+α} ω_{-α} / (s_α² ω_{+α} + c_α² ω_{-α})`, i.e. `h̄ β²`.
    fn width_numerator_ratio(&self) -> Result<f64, CouplingError> {
        let mut total = 0.0;
        for i in 0..ENVIRONMENT_SIZE {
            let d = self.mode_denominator(i);
            if !(d > 0.0) {
                return Err(CouplingError::DegenerateMode);
            }
            total += self.omega_plus[i] * self.omega_minus[i] / d;
        }
        Ok(total)
    }
}

/// Inverse width of the system's marginal position Gaussian.
///
/// With a common rotation angle this is
///
/// ```text
/// β² = [s² ω+1 ω+2 (ω-1 + ω-2) + c² ω-1 ω-2 (ω+1 + ω+2)]
///      / [h̄ (s² ω+1 + c² ω-1)(s² ω+2 + c² ω-2)]
/// ```
///
/// written here as the equivalent sum `Σ_α ω+α ω-α / (s_α² ω+α + c_α² ω-α) / h̄`,
/// which keeps each oscillator's own angle when the two differ.
pub fn marginal_width_beta(modes: &DecoupledModes, hbar: f64) -> Result<f64, CouplingError> {
    if modes.omega_plus.iter().chain(modes.omega_minus.iter()).any(|w| !(*w > 0.0)) {
        return Err(CouplingError::DegenerateMode);
    }
    if !(hbar > 0.0) {
        return Err(CouplingError::InvalidParameter {
            field: "hbar",
            value: hbar,
            reason: "must be positive",
        });
    }
    let beta_sq = modes.width_numerator_ratio()? / hbar;
    if beta_sq.is_finite() && beta_sq > 0.0 {
        Ok(beta_sq.sqrt())
    } else {
        Err(CouplingError::DegenerateMode)
    }
}

/// Normalized marginal density `(β/√π) exp(-β² q²)`.
pub fn ground_state_density(q: f64, modes: &DecoupledModes, hbar: f64) -> Result<f64, CouplingError> {
    let beta = marginal_width_beta(modes, hbar)?;
    Ok(beta / PI.sqrt() * (-beta * beta * q * q).exp())
}

/// The system wave function in its printed product form:
///
/// ```text
/// ψ(q) = (1/πh̄)^¼ [D1 D2]^-¼ K^¼ exp(-q² K / (2h̄ D1 D2))
/// ```
///
/// with `D_α = s² ω+α + c² ω-α` and `K` the bracket in β².
/// Uses the first oscillator's angle for `s`, `c`.
pub fn ground_state_amplitude(q: f64, modes: &DecoupledModes, hbar: f64) -> f64 {
    let (d1, d2, k) = printed_factors(modes);
    (1.0 / (PI * hbar)).powf(0.25) * (d1 * d2).powf(-0.25) * k.powf(0.25)
        * (-q * q * k / (2.0 * hbar * d1 * d2)).exp()
}

/// Prefactor of the printed marginal distribution,
/// `(ω+1 ω-1 ω+2 ω-2)^½ / (π h̄ sqrt(D1 D2))`.
///
/// It does not normalize `exp(-β² q²)`; see [`printed_marginal_norm`].
pub fn printed_marginal_prefactor(modes: &DecoupledModes, hbar: f64) -> f64 {
    let (d1, d2, _) = printed_factors(modes);
    let prod = modes.omega_plus[0] * modes.omega_minus[0] * modes.omega_plus[1] * modes.omega_minus[1];
    prod.sqrt() / (PI * hbar * (d1 * d2).sqrt())
}

/// `∫ P(q) dq` for the printed marginal, `prefactor · √π / β`.
pub fn printed_marginal_norm(modes: &DecoupledModes, hbar: f64) -> Result<f64, CouplingError> {
    let beta = marginal_width_beta(modes, hbar)?;
    Ok(printed_marginal_prefactor(modes, hbar) * PI.sqrt() / beta)
}

fn printed_factors(modes: &DecoupledModes) -> (f64, f64, f64) {
    let (s, c) = (modes.s_rot[0], modes.c_rot[0]);
    let (p1, p2) = (modes.omega_plus[0], modes.omega_plus[1]);
    let (m1, m2) = (modes.omega_minus[0], modes.omega_minus[1]);
    let d1 = s * s * p1 + c * c * m1;
    let d2 = s * s * p2 + c * c * m2;
    let k = s * s * p1 * p2 * (m1 + m2) + c * c * m1 * m2 * (p1 + p2);
    (d1, d2, k)
}

/// Joint ground state in normal coordinates, `(x+1, x-1, x+2, x-2)`.
pub fn joint_ground_state(coords: [f64; 4], modes: &DecoupledModes, hbar: f64) -> f64 {
    let freqs = [
        modes.omega_plus[0],
        modes.omega_minus[0],
        modes.omega_plus[1],
        modes.omega_minus[1],
    ];
    let norm = (freqs.iter().product::<f64>() / (PI.powi(4) * hbar.powi(4))).powf(0.25);
    let exponent: f64 = freqs.iter().zip(coords.iter()).map(|(w, x)| -w * x * x / (2.0 * hbar)).sum();
    norm * exponent.exp()
}
