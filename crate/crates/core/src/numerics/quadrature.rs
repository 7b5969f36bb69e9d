//! Adaptive Gauss-Kronrod (7/15) quadrature for complex-valued integrands.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate satisfies `err <= max(abs_tol, rel_tol * |value|)`. The estimate
//! per panel is the raw difference between the 15-point Kronrod and embedded
//! 7-point Gauss results, floored at a multiple of the rounding level. This is
//! deliberately pessimistic: the Kronrod value is usually far more accurate
//! than the estimate claims.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::NumericsError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and budget for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of panels before giving up.
    pub max_subdivisions: usize,
    /// Number of equal panels the interval is split into before any error
    /// estimate is trusted.
    pub initial_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 20_000,
            initial_panels: 1,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_initial_panels(mut self, panels: usize) -> Self {
        self.initial_panels = panels.max(1);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    /// Number of panels in the final partition.
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
    // Creation order, used to make heap ordering total and reproducible.
    serial: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.serial.cmp(&self.serial))
    }
}

fn kronrod15<F>(f: &F, lo: f64, hi: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];

    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += (f1 + f2) * wk;
        abs_sum += (f1.norm() + f2.norm()) * wk;
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }

    let value = kronrod * half;
    let raw = ((kronrod - gauss) * half).norm();
    let rounding = 50.0 * f64::EPSILON * abs_sum * half.abs();
    (value, raw.max(rounding))
}

/// Integrates `f` over `[lo, hi]` to the requested tolerance.
///
/// Identical inputs give bit-identical results.
pub fn integrate_adaptive<F>(
    f: F,
    lo: f64,
    hi: f64,
    opts: &QuadratureOptions,
) -> Result<QuadratureResult, NumericsError>
where
    F: Fn(f64) -> Complex64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(NumericsError::InvalidInterval { lo, hi });
    }
    if !(opts.abs_tol > 0.0 && opts.rel_tol > 0.0) {
        return Err(NumericsError::InvalidTolerance {
            abs_tol: opts.abs_tol,
            rel_tol: opts.rel_tol,
        });
    }

    let n0 = opts.initial_panels.max(1);
    let width = (hi - lo) / n0 as f64;
    let mut heap = BinaryHeap::with_capacity(n0.max(64));
    let mut serial = 0usize;
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for k in 0..n0 {
        let a = lo + width * k as f64;
        let b = if k + 1 == n0 { hi } else { lo + width * (k + 1) as f64 };
        let (value, error) = kronrod15(&f, a, b);
        total += value;
        total_err += error;
        heap.push(Panel { lo: a, hi: b, value, error, serial });
        serial += 1;
    }

    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(NumericsError::NonConvergence {
                value: total,
                estimate: total_err,
                subdivisions: heap.len(),
            });
        }
        if total_err <= opts.abs_tol.max(opts.rel_tol * total.norm()) {
            break;
        }
        if heap.len() >= opts.max_subdivisions.max(n0) {
            return Err(NumericsError::NonConvergence {
                value: total,
                estimate: total_err,
                subdivisions: heap.len(),
            });
        }
        let worst = heap.pop().expect("partition is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) {
            // Panel cannot be split further in binary64.
            let subdivisions = heap.len() + 1;
            return Err(NumericsError::NonConvergence {
                value: total,
                estimate: total_err,
                subdivisions,
            });
        }
        let (v1, e1) = kronrod15(&f, worst.lo, mid);
        let (v2, e2) = kronrod15(&f, mid, worst.hi);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { lo: worst.lo, hi: mid, value: v1, error: e1, serial });
        heap.push(Panel { lo: mid, hi: worst.hi, value: v2, error: e2, serial: serial + 1 });
        serial += 2;
    }

    // Re-sum in left-to-right order to shed the drift of the running totals.
    let mut panels = heap.into_vec();
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value = panels.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
    let abs_error_estimate = panels.iter().map(|p| p.error).sum();
    Ok(QuadratureResult {
        value,
        abs_error_estimate,
        subdivisions: panels.len(),
    })
}
