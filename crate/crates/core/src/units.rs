//! Dimensionless unit system and the classicality parameter `h̄`.
//!
//! Given a length unit `R0`, an energy unit `U0`, a mass `M` and the physical
//! action constant, every other scale follows:
//!
//! ```text
//! τ0 = R0 / sqrt(U0/M)      P0 = sqrt(U0 M)      ω0 = 1/τ0
//! h̄  = ħ / (P0 R0) = sqrt(ħ² / (M U0 R0²))
//! λ̄0 = h̄ R0                 P0' = M λ̄0 ω0 = h̄ P0
//! ```
//!
//! A system with `0.01 < h̄ < 0.1` is treated as quasi-classical (open interval).
//!
//! Note on packet motion: the x-packet center moves as `x0 + k0x t`, i.e. with
//! velocity `k0x` in these units, not `h̄ k0x`.

use std::f64::consts::TAU;

use thiserror::Error;

/// Lower end of the quasi-classical window (exclusive).
pub const QUASI_CLASSICAL_MIN: f64 = 0.01;
/// Upper end of the quasi-classical window (exclusive).
pub const QUASI_CLASSICAL_MAX: f64 = 0.1;

const SCALE_AGREEMENT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitsError {
    #[error("{field} must be strictly positive and finite, got {value}")]
    NonPositive { field: &'static str, value: f64 },
    #[error("the two expressions for h̄ disagree ({via_momentum} vs {via_energy}); inputs out of floating-point range")]
    InconsistentScales { via_momentum: f64, via_energy: f64 },
}

fn positive(field: &'static str, value: f64) -> Result<f64, UnitsError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(UnitsError::NonPositive { field, value })
    }
}

/// Characteristic scales of a system in dimensionless form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub r0: f64,
    pub u0: f64,
    pub mass: f64,
    pub hbar_si: f64,
    pub tau0: f64,
    pub p0: f64,
    pub hbar_dim: f64,
    /// Reduced de Broglie length λ̄0 = λ0 / 2π.
    pub lambda0_bar: f64,
    pub p0_prime: f64,
    pub omega0: f64,
}

impl UnitSystem {
    pub fn is_quasi_classical(&self) -> bool {
        is_quasi_classical(self.hbar_dim)
    }

    /// de Broglie wavelength λ0 = 2π λ̄0.
    pub fn lambda0(&self) -> f64 {
        TAU * self.lambda0_bar
    }
}

/// True iff `0.01 < hbar < 0.1`.
pub fn is_quasi_classical(hbar: f64) -> bool {
    hbar > QUASI_CLASSICAL_MIN && hbar < QUASI_CLASSICAL_MAX
}

pub fn build_unit_system(r0: f64, u0: f64, mass: f64, hbar_si: f64) -> Result<UnitSystem, UnitsError> {
    let r0 = positive("R0", r0)?;
    let u0 = positive("U0", u0)?;
    let mass = positive("M", mass)?;
    let hbar_si = positive("hbar_SI", hbar_si)?;

    let tau0 = r0 / (u0 / mass).sqrt();
    let p0 = (u0 * mass).sqrt();
    let via_momentum = hbar_si / (p0 * r0);
    let via_energy = (hbar_si * hbar_si / (mass * u0 * r0 * r0)).sqrt();
    if !(via_momentum.is_finite()
        && via_energy.is_finite()
        && via_momentum > 0.0
        && (via_momentum - via_energy).abs() <= SCALE_AGREEMENT * via_momentum)
    {
        return Err(UnitsError::InconsistentScales { via_momentum, via_energy });
    }
    let hbar_dim = via_momentum;
    let omega0 = 1.0 / tau0;
    let lambda0_bar = hbar_dim * r0;
    let p0_prime = mass * lambda0_bar * omega0;

    Ok(UnitSystem {
        r0,
        u0,
        mass,
        hbar_si,
        tau0,
        p0,
        hbar_dim,
        lambda0_bar,
        p0_prime,
        omega0,
    })
}

/// `h̄ = (λ0 / 2π) / R0`.
pub fn hbar_from_wavelength(lambda0: f64, r0: f64) -> Result<f64, UnitsError> {
    let lambda0 = positive("lambda0", lambda0)?;
    let r0 = positive("R0", r0)?;
    Ok(lambda0 / TAU / r0)
}
