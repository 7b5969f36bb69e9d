//! Special functions and quadrature used by the propagation code.
//!
//! * [`erf`] wraps the Faddeeva-function evaluation behind a bounded
//!   accuracy domain and adds numerically stable real helpers.
//! * [`quadrature`] is a complex-valued adaptive Gauss-Kronrod integrator
//!   with an a-posteriori error estimate.
//! * [`gaussian`] evaluates `∫ exp(-Aξ² + Bξ) dξ` over a finite interval in
//!   closed form, plus a quadrature route for the same integral.

pub mod erf;
pub mod gaussian;
pub mod quadrature;

use num_complex::Complex64;
use thiserror::Error;

pub use erf::{
    erf_complex, erf_real, erfc_real, erfcx_complex, gaussian_tail_integral, ERF_DOMAIN,
};
pub use gaussian::{
    gaussian_interval_integral, gaussian_interval_integral_scaled, gaussian_interval_quadrature,
    oscillation_panels,
};
pub use quadrature::{integrate_adaptive, QuadratureOptions, QuadratureResult};

/// Failures of the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("erf argument {re} + {im}i lies outside the accuracy domain |Re z|, |Im z| <= {ERF_DOMAIN}")]
    OutsideErfDomain { re: f64, im: f64 },
    #[error("invalid integration interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("quadrature tolerances must be positive (abs_tol = {abs_tol}, rel_tol = {rel_tol})")]
    InvalidTolerance { abs_tol: f64, rel_tol: f64 },
    #[error(
        "adaptive quadrature did not converge within {subdivisions} panels \
         (best value {value}, error estimate {estimate:e})"
    )]
    NonConvergence {
        value: Complex64,
        estimate: f64,
        subdivisions: usize,
    },
    #[error("quadratic coefficient A = {a} has a negative real part")]
    NegativeRealPart { a: Complex64 },
    #[error("overflow while evaluating a Gaussian interval integral")]
    Overflow,
}
