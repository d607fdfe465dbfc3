//! Energy densities and cumulative ball-energy profiles.

use crate::functional::field::{Ansatz, RadialField};
use crate::functional::params::GLParams;
use crate::geometry::warping::WarpingTable;
use crate::quad;

/// Squared gradient norm |du|^2 per node.
///
/// Scalar ansatz: phi'(r)^2. Equivariant: phi'^2 + d^2 phi^2 / f^2, with the
/// pole value from the series limit (1 + d^2) phi'(0)^2 (phi(0) = 0 there).
pub fn gradient_norm_sq(field: &RadialField) -> Vec<f64> {
    let warp = field.warp();
    let dphi = quad::derivative(warp.grid(), field.phi());
    match field.ansatz() {
        Ansatz::Scalar { .. } => dphi.iter().map(|d| d * d).collect(),
        Ansatz::Equivariant { degree } => {
            let d2 = (*degree as f64) * (*degree as f64);
            (0..field.len())
                .map(|i| {
                    if i == 0 {
                        (1.0 + d2) * dphi[0] * dphi[0]
                    } else {
                        let ratio = field.phi()[i] / warp.f()[i];
                        dphi[i] * dphi[i] + d2 * ratio * ratio
                    }
                })
                .collect()
        }
    }
}

/// Nodal quadrature weights of the volume measure omega_m f^{m-1} dr:
/// trapezoid weights away from the pole, and the half-cell ball volume
/// omega_m (h/2)^m / m at the pole node (where the trapezoid weight
/// degenerates to zero because f(0) = 0).
pub fn volume_weights(warp: &WarpingTable) -> Vec<f64> {
    let n = warp.len();
    let h = warp.step();
    let m = warp.m();
    let omega = warp.omega_m();
    let mut w = vec![0.0; n];
    w[0] = omega * (0.5 * h).powi(m as i32) / m as f64;
    for i in 1..n - 1 {
        w[i] = h * omega * warp.f()[i].powi(m as i32 - 1);
    }
    w[n - 1] = 0.5 * h * omega * warp.f()[n - 1].powi(m as i32 - 1);
    w
}

/// Cumulative ball energy rho -> E(B_rho), split into kinetic and potential
/// parts. Both components are nonnegative and nondecreasing, and the value
/// at rho = 0 is zero; the pole half-cell is counted from the first
/// interval on.
#[derive(Debug, Clone)]
pub struct EnergyProfile {
    radii: Vec<f64>,
    kinetic: Vec<f64>,
    potential: Vec<f64>,
}

impl EnergyProfile {
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn kinetic(&self) -> &[f64] {
        &self.kinetic
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    pub fn total_at(&self, i: usize) -> f64 {
        self.kinetic[i] + self.potential[i]
    }

    pub fn total(&self) -> Vec<f64> {
        (0..self.radii.len()).map(|i| self.total_at(i)).collect()
    }

    /// Full-ball energy E(B_{r_max}); this is the solver's objective.
    pub fn total_energy(&self) -> f64 {
        self.total_at(self.radii.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn to_csv(&self) -> String {
        use std::fmt::Write;
        let mut s = String::from("rho,kinetic,potential,total\n");
        for i in 0..self.len() {
            writeln!(
                s,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                self.radii[i],
                self.kinetic[i],
                self.potential[i],
                self.total_at(i)
            )
            .unwrap();
        }
        s
    }
}

/// Kinetic and potential densities per node.
pub fn energy_densities(field: &RadialField, params: &GLParams) -> (Vec<f64>, Vec<f64>) {
    let w = gradient_norm_sq(field);
    let kin: Vec<f64> = w.iter().map(|&wi| params.kinetic_density(wi)).collect();
    let pot: Vec<f64> = field.phi().iter().map(|&phi| params.potential_density(phi)).collect();
    (kin, pot)
}

/// Cumulative ball-energy profile by trapezoid quadrature of the densities
/// against the volume measure.
pub fn energy_profile(field: &RadialField, params: &GLParams) -> EnergyProfile {
    let warp = field.warp();
    let (kin, pot) = energy_densities(field, params);
    let m = warp.m() as i32;
    let omega = warp.omega_m();
    let areas: Vec<f64> = warp.f().iter().map(|f| omega * f.powi(m - 1)).collect();

    let kin_weighted: Vec<f64> = kin.iter().zip(&areas).map(|(e, a)| e * a).collect();
    let pot_weighted: Vec<f64> = pot.iter().zip(&areas).map(|(e, a)| e * a).collect();
    let mut kin_cum = quad::cumulative_trapezoid(warp.grid(), &kin_weighted);
    let mut pot_cum = quad::cumulative_trapezoid(warp.grid(), &pot_weighted);

    // pole half-cell, attributed to every ball containing the first interval
    let pole_vol = omega * (0.5 * warp.step()).powi(m) / warp.m() as f64;
    for i in 1..kin_cum.len() {
        kin_cum[i] += pole_vol * kin[0];
        pot_cum[i] += pole_vol * pot[0];
    }

    EnergyProfile {
        radii: warp.grid().to_vec(),
        kinetic: kin_cum,
        potential: pot_cum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::field::BoundaryConditions;
    use crate::geometry::curvature::CurvatureProfile;
    use crate::geometry::warping::solve_warping;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn warp(m: usize, r_max: f64, n: usize) -> Arc<WarpingTable> {
        Arc::new(solve_warping(&CurvatureProfile::Euclidean, m, r_max, n).unwrap())
    }

    #[test]
    fn constant_profile_has_zero_gradient_norm() {
        let f = RadialField::constant(warp(3, 2.0, 64), 0.7, 3).unwrap();
        assert!(gradient_norm_sq(&f).iter().all(|&w| w == 0.0));
    }

    #[test]
    fn linear_profile_gradient_norm_is_one() {
        let f = RadialField::from_fn(warp(3, 2.0, 256), 3, BoundaryConditions::free(), |r| r)
            .unwrap();
        for (i, w) in gradient_norm_sq(&f).iter().enumerate() {
            assert!((w - 1.0).abs() < 1e-10, "node {i}: {w}");
        }
    }

    #[test]
    fn equivariant_linear_profile() {
        // d = 1, phi = r, f = r: w = phi'^2 + phi^2/f^2 = 2 away from the pole,
        // and the pole series gives (1 + 1) phi'(0)^2 = 2 as well.
        let w2 = warp(2, 2.0, 128);
        let f = RadialField::new(
            Ansatz::Equivariant { degree: 1 },
            w2,
            (0..=128).map(|i| 2.0 * i as f64 / 128.0).collect(),
            BoundaryConditions::vortex(),
        )
        .unwrap();
        // outer Dirichlet stamps phi(R) = 1; look away from that node
        let w = gradient_norm_sq(&f);
        for i in 0..100 {
            assert!((w[i] - 2.0).abs() < 1e-9, "node {i}: {}", w[i]);
        }
    }

    #[test]
    fn unimodular_constant_has_zero_energy() {
        let params = GLParams::new(2.0, 1.0, 3).unwrap();
        let f = RadialField::constant(warp(3, 2.0, 64), 1.0, 3).unwrap();
        let prof = energy_profile(&f, &params);
        assert!(prof.total().iter().all(|&t| t == 0.0));
    }

    #[test]
    fn zero_map_ball_energy_is_quarter_volume() {
        // E(B_1) = vol(B_1)/4 = pi/3 for m = 3, eps = 1
        let params = GLParams::new(2.0, 1.0, 3).unwrap();
        let f = RadialField::constant(warp(3, 10.0, 20_000), 0.0, 3).unwrap();
        let prof = energy_profile(&f, &params);
        let i = f.warp().node_at(1.0).unwrap();
        assert!(
            (prof.total_at(i) - PI / 3.0).abs() < 1e-6,
            "E(B_1) = {}",
            prof.total_at(i)
        );
        // any p gives the same potential-only profile
        let params_p3 = GLParams::new(3.0, 1.0, 3).unwrap();
        let prof3 = energy_profile(&f, &params_p3);
        assert!((prof3.total_at(i) - PI / 3.0).abs() < 1e-6);
    }

    #[test]
    fn profile_is_nondecreasing() {
        let params = GLParams::new(2.0, 0.5, 3).unwrap();
        let f = RadialField::from_fn(warp(3, 4.0, 400), 3, BoundaryConditions::free(), |r| {
            (-r).exp() * (3.0 * r).sin()
        })
        .unwrap();
        let prof = energy_profile(&f, &params);
        for arr in [prof.kinetic(), prof.potential()] {
            for i in 1..arr.len() {
                assert!(arr[i] >= arr[i - 1] - 1e-15);
            }
        }
        assert_eq!(prof.total_at(0), 0.0);
    }

    #[test]
    fn volume_weights_sum_to_ball_volume() {
        let w = warp(3, 2.0, 2000);
        let total: f64 = volume_weights(&w).iter().sum();
        let exact = 4.0 / 3.0 * PI * 8.0;
        assert!((total - exact).abs() < 1e-4 * exact, "{total} vs {exact}");
    }
}
