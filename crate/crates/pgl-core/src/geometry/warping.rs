//! Warping function of the model metric g = dr^2 + f(r)^2 g_{S^{m-1}}.
//!
//! f solves the Jacobi equation f'' + K_r f = 0 with f(0) = 0, f'(0) = 1,
//! integrated by the classical fourth-order Runge-Kutta method on a uniform
//! grid. The ratio f'/f has a removable singularity at the pole; callers
//! get it through [`WarpingTable::log_derivative`], which switches to the
//! series 1/r - K(0) r / 3 close to the origin.

use crate::error::{Error, Result};
use crate::geometry::curvature::CurvatureProfile;
use crate::geometry::volume::unit_sphere_area;

/// Discretized warping function on a uniform radial grid.
#[derive(Debug, Clone)]
pub struct WarpingTable {
    grid: Vec<f64>,
    f: Vec<f64>,
    f_prime: Vec<f64>,
    m: usize,
    k0: f64,
    omega_m: f64,
}

/// Integrate the warping ODE for `profile` up to `r_max` with `n_steps`
/// uniform RK4 steps.
///
/// Fails with [`Error::PoleViolation`] if f becomes nonpositive at any node
/// past the origin (a conjugate point).
pub fn solve_warping(
    profile: &CurvatureProfile,
    m: usize,
    r_max: f64,
    n_steps: usize,
) -> Result<WarpingTable> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("dimension m must be >= 2, got {m}")));
    }
    if !(r_max > 0.0) {
        return Err(Error::InvalidParams(format!("r_max must be positive, got {r_max}")));
    }
    if n_steps < 16 {
        return Err(Error::InvalidParams(format!("n_steps must be >= 16, got {n_steps}")));
    }

    let h = r_max / n_steps as f64;
    let mut grid = Vec::with_capacity(n_steps + 1);
    let mut f = Vec::with_capacity(n_steps + 1);
    let mut fp = Vec::with_capacity(n_steps + 1);
    grid.push(0.0);
    f.push(0.0);
    fp.push(1.0);

    let rhs = |r: f64, y: (f64, f64)| -> (f64, f64) { (y.1, -profile.k_at(r) * y.0) };

    let mut y = (0.0f64, 1.0f64);
    for i in 0..n_steps {
        let r = i as f64 * h;
        let k1 = rhs(r, y);
        let k2 = rhs(r + 0.5 * h, (y.0 + 0.5 * h * k1.0, y.1 + 0.5 * h * k1.1));
        let k3 = rhs(r + 0.5 * h, (y.0 + 0.5 * h * k2.0, y.1 + 0.5 * h * k2.1));
        let k4 = rhs(r + h, (y.0 + h * k3.0, y.1 + h * k3.1));
        y = (
            y.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            y.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
        let r_next = (i + 1) as f64 * h;
        if y.0 <= 0.0 {
            return Err(Error::PoleViolation { r: r_next });
        }
        grid.push(r_next);
        f.push(y.0);
        fp.push(y.1);
    }

    Ok(WarpingTable {
        grid,
        f,
        f_prime: fp,
        m,
        k0: profile.k_at(0.0),
        omega_m: unit_sphere_area(m),
    })
}

impl WarpingTable {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn f_prime(&self) -> &[f64] {
        &self.f_prime
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Curvature at the pole, used by the small-r series.
    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// (m-1)-volume of the unit sphere in R^m.
    pub fn omega_m(&self) -> f64 {
        self.omega_m
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    pub fn r_max(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    /// Index of the grid node closest to `r`, if it lies within half a step.
    pub fn node_at(&self, r: f64) -> Option<usize> {
        let h = self.step();
        let i = (r / h).round();
        if i < 0.0 || i >= self.grid.len() as f64 {
            return None;
        }
        let i = i as usize;
        ((self.grid[i] - r).abs() <= 0.5 * h + 1e-12).then_some(i)
    }

    /// f'/f with the removable pole singularity handled by series:
    /// for r < 4h this returns 1/r - K(0) r / 3 (and +inf is never produced
    /// because the pole node itself is mapped through the same series term
    /// only by callers that multiply by r first).
    pub fn log_derivative(&self, i: usize) -> f64 {
        let r = self.grid[i];
        let h = self.step();
        if r < 4.0 * h {
            if i == 0 {
                f64::INFINITY
            } else {
                1.0 / r - self.k0 * r / 3.0
            }
        } else {
            self.f_prime[i] / self.f[i]
        }
    }

    /// r * f'/f, finite at the pole (limit 1).
    pub fn r_log_derivative(&self, i: usize) -> f64 {
        let r = self.grid[i];
        let h = self.step();
        if r < 4.0 * h {
            1.0 - self.k0 * r * r / 3.0
        } else {
            r * self.f_prime[i] / self.f[i]
        }
    }

    /// Restrict the table to the sub-grid [0, r]; `r` must be a grid node.
    pub fn truncate(&self, r: f64) -> Result<WarpingTable> {
        let i = self.node_at(r).ok_or_else(|| {
            Error::InvalidParams(format!("truncation radius {r} is not a grid node"))
        })?;
        if i < 16 {
            return Err(Error::InvalidParams(format!(
                "truncation at node {i} leaves fewer than 16 steps"
            )));
        }
        Ok(WarpingTable {
            grid: self.grid[..=i].to_vec(),
            f: self.f[..=i].to_vec(),
            f_prime: self.f_prime[..=i].to_vec(),
            m: self.m,
            k0: self.k0,
            omega_m: self.omega_m,
        })
    }

    /// CSV export with the stable column set.
    pub fn to_csv(&self) -> String {
        use std::fmt::Write;
        let spec = crate::geometry::spectrum::hessian_spectrum(self);
        let mut s = String::from("r,f,f_prime,lambda_tan\n");
        for i in 0..self.len() {
            writeln!(
                s,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                self.grid[i], self.f[i], self.f_prime[i], spec.lambda_tan()[i]
            )
            .unwrap();
        }
        s
    }
}
