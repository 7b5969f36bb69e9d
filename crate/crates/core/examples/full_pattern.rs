//! Exact screen pattern behind two slits as the packet spreads.

use macroslit::coupling::{CouplingParams, DecoupledModes};
use macroslit::propagation::{
    fringe_spacing, local_maxima, pattern_full, uniform_grid, Normalization, PacketParams, SlitGeometry,
};

fn main() {
    let hbar = 0.05;
    let beta = DecoupledModes::compute(&CouplingParams::identical(0.02, 1.0, 0.05, hbar).unwrap())
        .unwrap()
        .beta;
    let packet = PacketParams::new((0.02 / hbar).sqrt(), 1.0, 0.0, 0.0, beta, hbar).unwrap();
    let slits = SlitGeometry::symmetric(0.2, 0.6, 1.0).unwrap();
    let grid = uniform_grid(-8.0, 8.0, 3201).unwrap();
    println!("beta = {beta:.4}, delta_y = {:.3}", packet.delta_y());
    for t in [0.5, 2.0, 8.0, 32.0] {
        let s = pattern_full(t, &packet, &slits, &grid, Normalization::Raw).unwrap();
        let peaks = local_maxima(&s.values, 1e-3 * s.peak());
        println!(
            "t = {t:>4}: peak {:.4e}, {:>3} maxima above 1e-3, far-field spacing {:.4}",
            s.peak(),
            peaks.len(),
            fringe_spacing(t, &packet, &slits)
        );
    }
}
