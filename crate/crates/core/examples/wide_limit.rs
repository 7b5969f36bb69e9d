//! A wide packet illuminates both slits: cos² fringes under a sinc² envelope.

use macroslit::propagation::{
    check_wide_regime, fringe_spacing, local_maxima, pattern_wide_limit, sinc_zeros, uniform_grid, Normalization,
    PacketParams, RegimeThresholds, SlitGeometry,
};

fn main() {
    let slits = SlitGeometry::symmetric(0.2, 2.0, 1.0).unwrap();
    let thresholds = RegimeThresholds::default();
    let t = 40.0;
    let grid = uniform_grid(-70.0, 70.0, 14001).unwrap();
    for hbar in [0.1, 0.05, 0.01] {
        let packet = PacketParams::new(1.0, 1.0, 0.0, 0.0, 0.05, hbar).unwrap();
        let warnings = check_wide_regime(t, &packet, &slits, &thresholds).unwrap();
        let s = pattern_wide_limit(t, &packet, &slits, &grid, Normalization::UnitPeak, &thresholds).unwrap();
        println!(
            "hbar = {hbar}: spacing {:.4}, first sinc zeros {:?}, {} maxima on screen{}",
            fringe_spacing(t, &packet, &slits),
            sinc_zeros(t, &packet, &slits, 2).iter().map(|z| (z * 100.0).round() / 100.0).collect::<Vec<_>>(),
            local_maxima(&s.values, 1e-6).len(),
            if warnings.is_empty() { String::new() } else { format!(" ({})", warnings.join("; ")) }
        );
    }
}
