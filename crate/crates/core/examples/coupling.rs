//! Normal modes of a system oscillator coupled to two environment oscillators.

use macroslit::coupling::{check_validity, effective_potential_coefficient, CouplingParams, DecoupledModes};

fn main() {
    let p = CouplingParams::new(0.5, [1.0, 1.4], [0.1, 0.25], 0.05).expect("valid parameters");
    let modes = DecoupledModes::compute(&p).expect("stable coupling");
    println!("composite frequency  {:.10}", modes.omega);
    for alpha in 0..2 {
        println!(
            "alpha {}: theta = {:+.10}, omega+ = {:.10}, omega- = {:.10}",
            alpha + 1,
            modes.theta[alpha],
            modes.omega_plus[alpha],
            modes.omega_minus[alpha]
        );
    }
    let eff = effective_potential_coefficient(&p);
    println!("effective potential coefficient {:.6} (inverted: {})", eff.coefficient, eff.inverted);
    println!("marginal width beta = {:.10}, delta_y = {:.6}", modes.beta, 1.0 / (modes.beta * 2f64.sqrt()));
    println!("{}", check_validity(&p, 0.5, 2.0));
}
