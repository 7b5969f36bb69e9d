//! Peak bookkeeping on sampled patterns.

use macroslit::propagation::local_maxima;

/// Positions of local maxima above `floor · peak`.
pub fn maxima_positions(y: &[f64], values: &[f64], floor: f64) -> Vec<f64> {
    let peak = values.iter().cloned().fold(0.0, f64::max);
    local_maxima(values, floor * peak).into_iter().map(|i| y[i]).collect()
}

/// Mean spacing of consecutive maxima within `|y| <= half_window`.
pub fn mean_spacing(y: &[f64], values: &[f64], half_window: f64) -> (f64, usize) {
    let peaks: Vec<f64> = maxima_positions(y, values, 1e-9)
        .into_iter()
        .filter(|p| p.abs() <= half_window)
        .collect();
    assert!(peaks.len() >= 2, "need two maxima to measure a spacing");
    ((peaks[peaks.len() - 1] - peaks[0]) / (peaks.len() - 1) as f64, peaks.len())
}

/// Position of the smallest sample within `[lo, hi]`.
pub fn argmin_in(y: &[f64], values: &[f64], lo: f64, hi: f64) -> f64 {
    y.iter()
        .zip(values)
        .filter(|(x, _)| **x >= lo && **x <= hi)
        .fold((f64::NAN, f64::INFINITY), |best, (x, v)| if *v < best.1 { (*x, *v) } else { best })
        .0
}

pub fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
