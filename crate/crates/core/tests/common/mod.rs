#![allow(dead_code)]

pub mod erf_oracle;
pub mod fringes;
pub mod ground_state_oracle;
pub mod propagation_oracle;
