//! Rotationally symmetric model manifolds with a pole and their
//! comparison-geometry quantities.

pub mod comparison;
pub mod curvature;
pub mod spectrum;
pub mod volume;
pub mod warping;

pub use comparison::{comparison_check, volume_bound_check, ComparisonReport, VolumeBoundReport};
pub use curvature::{BandSelection, CurvatureProfile};
pub use spectrum::{
    case_formula, hessian_spectrum, sigma_closed_form, sigma_numeric, HessianSpectrum, SigmaBound,
    SigmaCase, LAMBDA_RADIAL,
};
pub use volume::{
    ball_volume, ball_volumes, sphere_area, sphere_area_at, sphere_areas, tail_integral,
    unit_sphere_area, TailIntegral,
};
pub use warping::{solve_warping, WarpingTable};
