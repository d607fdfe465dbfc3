//! Numerical laboratory for critical points of the p-Ginzburg-Landau energy
//!
//!   E(u) = ∫ |du|^p / p + (1 - |u|^2)^2 / (4 eps^n)
//!
//! on rotationally symmetric Riemannian manifolds with a pole. The crate
//! builds model metrics from radial curvature profiles, discretizes radial
//! and equivariant maps, computes discrete critical points by energy
//! descent, and quantitatively verifies the monotonicity, conservation-law,
//! growth and Liouville-type properties these critical points satisfy.
//!
//! Layout:
//! - [`geometry`]: warping tables, Hessian spectra, sigma bounds, areas,
//!   volumes and tail integrals.
//! - [`functional`]: fields, energy densities, ball-energy profiles, the
//!   Euler-Lagrange residual and the discrete energy gradient.
//! - [`stress`]: stress-energy tensor, its divergence, the conservation
//!   identity and the Stokes boundary/bulk identity.
//! - [`solver`]: damped gradient descent with backtracking, the constant
//!   Dirichlet experiment and the planar vortex.
//! - [`verify`]: monotonicity, growth, asymptotic-decay, slow-divergence
//!   and composite Liouville-consistency reports.

pub mod error;
pub mod exec;
pub mod functional;
pub mod geometry;
pub mod quad;
pub mod solver;
pub mod stress;
pub mod verify;

pub use error::{Error, Result};
