//! Error functions.
//!
//! The complex error function is computed through the Faddeeva function
//! `w(z) = exp(-z²) erfc(-iz)`; the evaluation is delegated to the
//! `errorfunctions` crate (a port of the MIT Faddeeva package). Arguments are
//! restricted to the square `|Re z|, |Im z| <= 25`, outside of which the
//! result is either not representable or dominated by cancellation.

use errorfunctions::{ComplexErrorFunctions, RealErrorFunctions};
use num_complex::Complex64;

use super::NumericsError;

/// Half-width of the square on which [`erf_complex`] is accurate.
pub const ERF_DOMAIN: f64 = 25.0;

const SQRT_PI_2: f64 = 0.886_226_925_452_758_f64; // √π / 2

/// Error function of a complex argument.
pub fn erf_complex(z: Complex64) -> Result<Complex64, NumericsError> {
    if !(z.re.abs() <= ERF_DOMAIN && z.im.abs() <= ERF_DOMAIN) {
        return Err(NumericsError::OutsideErfDomain { re: z.re, im: z.im });
    }
    Ok(z.erf())
}

/// Scaled complementary error function `exp(z²) erfc(z)`.
///
/// Bounded by one in modulus for `Re z >= 0`; no domain restriction.
pub fn erfcx_complex(z: Complex64) -> Complex64 {
    z.erfcx()
}

pub fn erf_real(x: f64) -> f64 {
    RealErrorFunctions::erf(x)
}

pub fn erfc_real(x: f64) -> f64 {
    RealErrorFunctions::erfc(x)
}

/// `∫_a^b exp(-s²) ds`, evaluated without cancellation when both limits lie
/// in the same tail.
pub fn gaussian_tail_integral(a: f64, b: f64) -> f64 {
    if a > b {
        return -gaussian_tail_integral(b, a);
    }
    if a >= 0.0 {
        SQRT_PI_2 * (erfc_real(a) - erfc_real(b))
    } else if b <= 0.0 {
        SQRT_PI_2 * (erfc_real(-b) - erfc_real(-a))
    } else {
        SQRT_PI_2 * (erf_real(b) - erf_real(a))
    }
}
