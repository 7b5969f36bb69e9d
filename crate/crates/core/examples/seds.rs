//! Stochastic-electrodynamics picture: discrete deviation angles from slit-edge modes.

use macroslit::seds::{deviation_surface, intensity_maxima, seds_screen_shape, SedsParams};
use macroslit::propagation::uniform_grid;

fn main() {
    let p = SedsParams::with_frequency(0.05, 1.0, 1.0, 0.5, 0.0).unwrap();
    let maxima = intensity_maxima(&p, 5);
    println!("maxima (rad): {:?}", maxima.angles);
    println!("orders excluded (sin > 1): {}", maxima.excluded);

    let hbar: Vec<f64> = (1..=5).map(|i| 0.02 * i as f64).collect();
    let b_half: Vec<f64> = (1..=5).map(|i| 0.2 * i as f64).collect();
    let surface = deviation_surface(&hbar, &b_half, 1.0, 1).unwrap();
    println!("first-order angle over (hbar, b_half):");
    for (i, h) in hbar.iter().enumerate() {
        let row: Vec<String> = surface.theta[i].iter().map(|t| format!("{t:.4}")).collect();
        println!("  hbar {h:.2}: {}", row.join(" "));
    }

    let grid = uniform_grid(-100.0, 100.0, 9).unwrap();
    let shape = seds_screen_shape(&grid, 40.0, 0.05, 0.2, 0.1).unwrap();
    println!("screen shape: {:?}", shape.values.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>());
}
