//! Sphere areas, ball volumes and inverse-area tail integrals on the model
//! metric.

use crate::error::{Error, Result};
use crate::geometry::warping::WarpingTable;
use crate::quad;

/// (m-1)-volume of the unit sphere in R^m: 2 pi^{m/2} / Gamma(m/2).
///
/// Gamma at integer and half-integer arguments is evaluated by the exact
/// recursion, so the value is accurate to rounding for every m we handle.
pub fn unit_sphere_area(m: usize) -> f64 {
    assert!(m >= 2, "unit_sphere_area needs m >= 2");
    let gamma_half = |n: usize| -> f64 {
        // Gamma(n/2)
        let mut x = if n % 2 == 0 { 1.0 } else { std::f64::consts::PI.sqrt() };
        let mut k = if n % 2 == 0 { 2 } else { 1 };
        while k + 2 <= n {
            x *= k as f64 / 2.0;
            k += 2;
        }
        x
    };
    2.0 * std::f64::consts::PI.powf(m as f64 / 2.0) / gamma_half(m)
}

/// Area of the geodesic sphere of radius `r`: omega_m f(r)^{m-1}.
/// `r` must sit on the grid (nearest-node lookup).
pub fn sphere_area(warp: &WarpingTable, r: f64) -> Result<f64> {
    let i = warp
        .node_at(r)
        .ok_or_else(|| Error::InvalidParams(format!("radius {r} outside the grid")))?;
    Ok(sphere_area_at(warp, i))
}

/// Area of the geodesic sphere through grid node `i`.
pub fn sphere_area_at(warp: &WarpingTable, i: usize) -> f64 {
    warp.omega_m() * warp.f()[i].powi(warp.m() as i32 - 1)
}

/// Nodal sphere areas for the whole grid.
pub fn sphere_areas(warp: &WarpingTable) -> Vec<f64> {
    (0..warp.len()).map(|i| sphere_area_at(warp, i)).collect()
}

/// Volume of the geodesic ball of radius `rho`, by cumulative trapezoid
/// quadrature of the sphere area.
pub fn ball_volume(warp: &WarpingTable, rho: f64) -> Result<f64> {
    let i = warp
        .node_at(rho)
        .ok_or_else(|| Error::InvalidParams(format!("radius {rho} outside the grid")))?;
    let areas = sphere_areas(warp);
    Ok(quad::cumulative_trapezoid(warp.grid(), &areas)[i])
}

/// Cumulative ball volumes at every node.
pub fn ball_volumes(warp: &WarpingTable) -> Vec<f64> {
    let areas = sphere_areas(warp);
    quad::cumulative_trapezoid(warp.grid(), &areas)
}

/// Inverse-area tail integral with its truncated and analytic parts.
#[derive(Debug, Clone, Copy)]
pub struct TailIntegral {
    /// Full value: quadrature to r_max plus the analytic tail.
    pub total: f64,
    /// Contribution of [r, r_max], by O(h^4) node quadrature.
    pub truncated: f64,
    /// Closed-form tail beyond r_max under the linear-growth model
    /// f(s) >= f(r_max) s / r_max (valid for K <= 0).
    pub analytic_tail: f64,
}

impl TailIntegral {
    /// Fraction of the value supplied by the analytic continuation.
    pub fn tail_fraction(&self) -> f64 {
        if self.total > 0.0 {
            self.analytic_tail / self.total
        } else {
            0.0
        }
    }
}

/// ∫_r^∞ ds / vol(∂B_s): quadrature up to r_max plus the analytic tail
/// r_max / (A(r_max) (m-2)) from the model area growth (s/r_max)^{m-1}.
///
/// Errors with [`Error::TailDiverges`] when m = 2 (the model tail integral
/// is infinite) or when the area is not growing at r_max.
pub fn tail_integral(warp: &WarpingTable, r: f64) -> Result<TailIntegral> {
    let m = warp.m();
    if m < 3 {
        return Err(Error::TailDiverges { m, exponent: (m - 1) as f64 });
    }
    let last = warp.len() - 1;
    if warp.f_prime()[last] <= 0.0 {
        // area shrinking at the edge: sub-polynomial growth, model invalid
        return Err(Error::TailDiverges { m, exponent: 0.0 });
    }
    let i = warp
        .node_at(r)
        .ok_or_else(|| Error::InvalidParams(format!("radius {r} outside the grid")))?;
    if i == 0 {
        return Err(Error::InvalidParams(
            "tail integral from the pole diverges; use r > 0".into(),
        ));
    }
    let inv: Vec<f64> = (0..warp.len()).map(|j| 1.0 / sphere_area_at(warp, j).max(f64::MIN_POSITIVE)).collect();
    let truncated = quad::simpson_nodes(warp.grid(), &inv, i, last);
    let area_max = sphere_area_at(warp, last);
    let analytic_tail = warp.r_max() / (area_max * (m as f64 - 2.0));
    Ok(TailIntegral {
        total: truncated + analytic_tail,
        truncated,
        analytic_tail,
    })
}
