pub mod cli;
pub mod coupling;
pub mod numerics;
pub mod propagation;
pub mod seds;
pub mod units;
