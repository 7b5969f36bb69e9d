mod common;

use macroslit::coupling::{
    ground_state_density, marginal_width_beta, normal_mode_frequencies, rotation_angle, CouplingParams,
    DecoupledModes,
};
use proptest::prelude::*;

use common::ground_state_oracle::{potential_block, rotate, symmetric_eigenvalues};

// Frozen from an independent eigendecomposition of the potential block.
#[test]
fn reference_point_matches_eigendecomposition() {
    let p = CouplingParams::identical(0.5, 1.0, 0.1, 0.05).unwrap();
    let theta = rotation_angle(&p, 0).unwrap().theta;
    let (plus, minus) = normal_mode_frequencies(&p, theta, 0).unwrap();
    assert!((theta - 0.1337053985919368).abs() < 1e-14);
    assert!((plus * plus - 0.25654921059667485).abs() < 1e-14);
    assert!((minus * minus - 1.0134507894033253).abs() < 1e-14);
    let modes = DecoupledModes::compute(&p).unwrap();
    assert!((modes.beta * modes.beta - 20.44076119774204).abs() < 1e-11);
}

#[test]
fn beta_scales_as_inverse_root_hbar() {
    let beta = |h| {
        let modes = DecoupledModes::compute(&CouplingParams::identical(0.7, 1.2, 0.3, h).unwrap()).unwrap();
        marginal_width_beta(&modes, h).unwrap()
    };
    let ratio = beta(0.01) / beta(0.04);
    assert!((ratio - 2.0).abs() < 1e-12, "{ratio}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rotation_diagonalizes(
        we in 0.05f64..3.0,
        wa in 0.1f64..3.0,
        g in 0.001f64..0.99,
    ) {
        let p = CouplingParams::identical(we, wa, g, 0.05).unwrap();
        let block = potential_block(&p, 0);
        let theta = rotation_angle(&p, 0).unwrap().theta;
        let (d11, d12, d22) = rotate(block, theta);
        let scale = block.0.abs().max(block.2.abs());
        prop_assert!(d12.abs() < 1e-12 * scale);
        let (lo, hi) = symmetric_eigenvalues(block.0, block.1, block.2);
        let (a, b) = if d11 < d22 { (d11, d22) } else { (d22, d11) };
        prop_assert!(((a - lo) / lo).abs() < 1e-10);
        prop_assert!(((b - hi) / hi).abs() < 1e-10);
    }

    #[test]
    fn density_is_even_and_positive(q in 0.0f64..2.0) {
        let modes = DecoupledModes::compute(&CouplingParams::identical(0.5, 1.0, 0.1, 0.05).unwrap()).unwrap();
        let a = ground_state_density(q, &modes, 0.05).unwrap();
        prop_assert_eq!(a, ground_state_density(-q, &modes, 0.05).unwrap());
        prop_assert!(a >= 0.0);
    }
}
