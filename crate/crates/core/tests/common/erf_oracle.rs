//! Independent error-function oracle: the Maclaurin series
//! `erf z = 2/√π Σ (-1)^n z^(2n+1) / (n! (2n+1))`, summed in binary floating
//! point with enough bits to absorb the cancellation between terms.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex64;

type Big = FBig<HalfEven, 2>;

use std::f64::consts::FRAC_2_SQRT_PI as TWO_OVER_SQRT_PI;

fn big(x: f64, bits: usize) -> Big {
    Big::try_from(x).expect("finite").with_precision(bits).value()
}

/// erf(z) by the series; accurate to a few ulp of binary64.
pub fn erf_series(z: Complex64) -> Complex64 {
    let r2 = z.norm_sqr();
    // Largest term is about exp(|z|²); keep ~100 bits beyond it.
    let bits = (r2 * std::f64::consts::LOG2_E) as usize + 128;
    let (zr, zi) = (big(z.re, bits), big(z.im, bits));
    // w = -z²
    let wr = &(&zi * &zi) - &(&zr * &zr);
    let wi = -(Big::from(2u8) * &zr * &zi);

    let (mut tr, mut ti) = (zr.clone(), zi.clone());
    let (mut sr, mut si) = (zr, zi);
    let ln_r = 0.5 * r2.max(1e-300).ln();
    let mut ln_term = ln_r;
    let mut n: u64 = 0;
    loop {
        n += 1;
        let nr = &(&tr * &wr) - &(&ti * &wi);
        let ni = &(&tr * &wi) + &(&ti * &wr);
        let nb = Big::from(n);
        tr = nr / &nb;
        ti = ni / &nb;
        let k = Big::from(2 * n + 1);
        sr = &sr + &(&tr / &k);
        si = &si + &(&ti / &k);
        ln_term += 2.0 * ln_r - (n as f64).ln();
        // Terms decrease once n > |z|²; stop far below the result scale.
        if n as f64 > r2 && ln_term < ln_r.min(0.0) - 80.0 {
            break;
        }
    }
    Complex64::new(
        sr.to_f64().value() * TWO_OVER_SQRT_PI,
        si.to_f64().value() * TWO_OVER_SQRT_PI,
    )
}
