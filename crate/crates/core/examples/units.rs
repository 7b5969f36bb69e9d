//! Dimensionless units for a heavy molecule in a nanometre-scale potential.

use macroslit::units::{build_unit_system, hbar_from_wavelength};

fn main() {
    let hbar_si = 1.054_571_817e-34;
    // ~C70 mass, 10 meV well, 1 nm length scale.
    let mass = 840.0 * 1.660_539e-27;
    let u0 = 0.010 * 1.602_177e-19;
    for r0 in [1e-10, 3e-10, 1e-9] {
        let units = build_unit_system(r0, u0, mass, hbar_si).expect("positive inputs");
        println!(
            "R0 = {r0:.1e} m: hbar = {:.4}, tau0 = {:.3e} s, lambda0 = {:.3e} m, quasi-classical = {}",
            units.hbar_dim,
            units.tau0,
            units.lambda0(),
            units.is_quasi_classical()
        );
    }
    let h = hbar_from_wavelength(2.5e-12, 1e-11).unwrap();
    println!("de Broglie 2.5 pm over 10 pm: hbar = {h:.5}");
}
