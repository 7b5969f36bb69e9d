//! A narrow packet passes one slit untouched: the exact pattern is the spreading Gaussian.

use macroslit::propagation::{
    check_narrow_regime, pattern_full, pattern_narrow_limit, uniform_grid, Normalization, PacketParams,
    RegimeThresholds, SlitGeometry,
};

fn main() {
    let hbar = 0.05;
    let slits = SlitGeometry::symmetric(0.2, 0.5, 1.0).unwrap();
    let thresholds = RegimeThresholds::default();
    let grid = uniform_grid(-1.0, 2.2, 1601).unwrap();
    for divisor in [20.0, 8.0, 3.0] {
        let delta_y = slits.min_width() / divisor;
        let beta = 1.0 / (delta_y * 2f64.sqrt());
        let packet = PacketParams::new(10.0, 1.0, 0.0, 0.6, beta, hbar).unwrap();
        match check_narrow_regime(&packet, &slits, &thresholds) {
            Err(e) => println!("delta_y = w/{divisor}: {e}"),
            Ok(warnings) => {
                let full = pattern_full(0.05, &packet, &slits, &grid, Normalization::UnitPeak).unwrap();
                let limit =
                    pattern_narrow_limit(0.05, &packet, &slits, &grid, Normalization::UnitPeak, &thresholds).unwrap();
                let dist = full.values.iter().zip(&limit.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                println!("delta_y = w/{divisor}: L-inf distance {dist:.3e}, warnings {warnings:?}");
            }
        }
    }
}
