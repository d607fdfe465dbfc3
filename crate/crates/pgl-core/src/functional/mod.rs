//! Discretized maps and the p-Ginzburg-Landau energy.

pub mod energy;
pub mod field;
pub mod operators;
pub mod params;

pub use energy::{
    energy_densities, energy_profile, gradient_norm_sq, volume_weights, EnergyProfile,
};
pub use field::{Ansatz, BoundaryConditions, InnerBc, OuterBc, RadialField};
pub use operators::{el_residual, energy_gradient, energy_gradient_raw};
pub use params::{GLParams, DEFAULT_DELTA};
