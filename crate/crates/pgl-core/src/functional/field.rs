//! Discretized maps u : M -> R^n under radial and equivariant ansatze.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::warping::WarpingTable;

/// How the profile phi(r) is promoted to a map into R^n.
#[derive(Debug, Clone, PartialEq)]
pub enum Ansatz {
    /// u(x) = phi(r) e for a fixed unit vector e, so |u| = |phi|.
    Scalar { direction: Vec<f64> },
    /// Degree-d vortex u(r, theta) = phi(r)(cos d theta, sin d theta);
    /// needs m = 2, n = 2.
    Equivariant { degree: i32 },
}

impl Ansatz {
    pub fn scalar_along(direction: Vec<f64>) -> Result<Self> {
        let norm2: f64 = direction.iter().map(|x| x * x).sum();
        if direction.is_empty() || !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::InvalidParams("scalar direction must be a nonzero finite vector".into()));
        }
        let norm = norm2.sqrt();
        Ok(Ansatz::Scalar {
            direction: direction.into_iter().map(|x| x / norm).collect(),
        })
    }

    /// Scalar ansatz along the first coordinate axis of R^n.
    pub fn scalar(n_target: usize) -> Self {
        let mut direction = vec![0.0; n_target.max(1)];
        direction[0] = 1.0;
        Ansatz::Scalar { direction }
    }
}

/// Boundary condition at the pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerBc {
    /// Natural (Neumann) condition; the pole node is a free unknown.
    Natural,
    /// Pinned value, used by vortices (phi(0) = 0).
    Dirichlet(f64),
}

/// Boundary condition at the outer radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OuterBc {
    Dirichlet(f64),
    /// Natural condition q phi'(R) = 0, realized through the discrete
    /// gradient rather than an explicit constraint.
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConditions {
    pub inner: InnerBc,
    pub outer: OuterBc,
}

impl BoundaryConditions {
    pub fn free() -> Self {
        BoundaryConditions { inner: InnerBc::Natural, outer: OuterBc::Free }
    }

    pub fn dirichlet_outer(value: f64) -> Self {
        BoundaryConditions { inner: InnerBc::Natural, outer: OuterBc::Dirichlet(value) }
    }

    pub fn vortex() -> Self {
        BoundaryConditions { inner: InnerBc::Dirichlet(0.0), outer: OuterBc::Dirichlet(1.0) }
    }
}

/// A radial profile phi on the grid of a warping table, together with the
/// ansatz that turns it into a map.
#[derive(Debug, Clone)]
pub struct RadialField {
    ansatz: Ansatz,
    warp: Arc<WarpingTable>,
    phi: Vec<f64>,
    bc: BoundaryConditions,
}

impl RadialField {
    /// Build a field. Dirichlet values are stamped onto the profile so the
    /// stored phi always satisfies its declared boundary conditions.
    pub fn new(
        ansatz: Ansatz,
        warp: Arc<WarpingTable>,
        mut phi: Vec<f64>,
        bc: BoundaryConditions,
    ) -> Result<Self> {
        if phi.len() != warp.len() {
            return Err(Error::InvalidParams(format!(
                "profile length {} does not match grid length {}",
                phi.len(),
                warp.len()
            )));
        }
        if phi.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("profile contains non-finite values".into()));
        }
        if let Ansatz::Equivariant { degree } = ansatz {
            if warp.m() != 2 {
                return Err(Error::UnsupportedAnsatz(format!(
                    "equivariant ansatz needs m = 2, got m = {}",
                    warp.m()
                )));
            }
            if degree != 0 && !matches!(bc.inner, InnerBc::Dirichlet(v) if v == 0.0) {
                return Err(Error::UnsupportedAnsatz(
                    "equivariant ansatz with d != 0 needs phi(0) = 0 pinned at the pole".into(),
                ));
            }
        }
        if let InnerBc::Dirichlet(v) = bc.inner {
            phi[0] = v;
        }
        if let OuterBc::Dirichlet(v) = bc.outer {
            *phi.last_mut().unwrap() = v;
        }
        Ok(RadialField { ansatz, warp, phi, bc })
    }

    /// Spatially constant field under the scalar ansatz with free boundary.
    pub fn constant(warp: Arc<WarpingTable>, value: f64, n_target: usize) -> Result<Self> {
        let phi = vec![value; warp.len()];
        Self::new(Ansatz::scalar(n_target), warp, phi, BoundaryConditions::free())
    }

    /// Scalar field sampled from a function of r.
    pub fn from_fn(
        warp: Arc<WarpingTable>,
        n_target: usize,
        bc: BoundaryConditions,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let phi: Vec<f64> = warp.grid().iter().map(|&r| f(r)).collect();
        Self::new(Ansatz::scalar(n_target), warp, phi, bc)
    }

    pub fn ansatz(&self) -> &Ansatz {
        &self.ansatz
    }

    pub fn warp(&self) -> &WarpingTable {
        &self.warp
    }

    pub fn warp_arc(&self) -> Arc<WarpingTable> {
        Arc::clone(&self.warp)
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn bc(&self) -> BoundaryConditions {
        self.bc
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// Replace the profile, re-stamping Dirichlet values.
    pub fn with_phi(&self, phi: Vec<f64>) -> Result<Self> {
        Self::new(self.ansatz.clone(), Arc::clone(&self.warp), phi, self.bc)
    }

    /// Nodes the solver may move (everything not pinned by Dirichlet data).
    pub fn free_mask(&self) -> Vec<bool> {
        let mut mask = vec![true; self.len()];
        if matches!(self.bc.inner, InnerBc::Dirichlet(_)) {
            mask[0] = false;
        }
        if matches!(self.bc.outer, OuterBc::Dirichlet(_)) {
            *mask.last_mut().unwrap() = false;
        }
        mask
    }

    /// Squared target distance |u - P0|^2 maximized over the sphere r = r_i.
    ///
    /// Scalar: |phi e - P0|^2, independent of the sphere point. Equivariant:
    /// the angular maximum (|phi| + |P0 projection|) form.
    pub fn sphere_distance_sq(&self, i: usize, p0: &[f64]) -> f64 {
        match &self.ansatz {
            Ansatz::Scalar { direction } => {
                let dot: f64 = direction
                    .iter()
                    .zip(p0.iter())
                    .map(|(a, b)| a * b)
                    .sum();
                let p0n2: f64 = p0.iter().map(|x| x * x).sum();
                self.phi[i] * self.phi[i] - 2.0 * self.phi[i] * dot + p0n2
            }
            Ansatz::Equivariant { .. } => {
                let p0n: f64 = p0.iter().map(|x| x * x).sum::<f64>().sqrt();
                let m = self.phi[i].abs() + p0n;
                m * m
            }
        }
    }

    /// CSV export with the stable column set.
    pub fn to_csv(&self) -> String {
        use std::fmt::Write;
        let mut s = String::from("r,phi\n");
        for (r, phi) in self.warp.grid().iter().zip(&self.phi) {
            writeln!(s, "{:.16e},{:.16e}", r, phi).unwrap();
        }
        s
    }

    /// Parse a field from `r,phi` CSV rows; the radii must match the grid.
    pub fn from_csv(
        warp: Arc<WarpingTable>,
        ansatz: Ansatz,
        bc: BoundaryConditions,
        text: &str,
    ) -> Result<Self> {
        let mut phi = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if lineno == 0 && line.trim().starts_with('r') {
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut cols = line.split(',');
            let r: f64 = cols
                .next()
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| Error::InvalidParams(format!("bad CSV row {lineno}")))?;
            let v: f64 = cols
                .next()
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| Error::InvalidParams(format!("bad CSV row {lineno}")))?;
            let idx = phi.len();
            if idx >= warp.len() || (warp.grid()[idx] - r).abs() > 1e-9 * (1.0 + r.abs()) {
                return Err(Error::InvalidParams(format!(
                    "CSV radius {r} at row {lineno} does not match the grid"
                )));
            }
            phi.push(v);
        }
        Self::new(ansatz, warp, phi, bc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::curvature::CurvatureProfile;
    use crate::geometry::warping::solve_warping;

    fn warp() -> Arc<WarpingTable> {
        Arc::new(solve_warping(&CurvatureProfile::Euclidean, 3, 2.0, 64).unwrap())
    }

    #[test]
    fn dirichlet_values_are_stamped() {
        let f = RadialField::new(
            Ansatz::scalar(3),
            warp(),
            vec![0.3; 65],
            BoundaryConditions::dirichlet_outer(1.0),
        )
        .unwrap();
        assert_eq!(*f.phi().last().unwrap(), 1.0);
        assert_eq!(f.free_mask()[64], false);
        assert_eq!(f.free_mask()[0], true);
    }

    #[test]
    fn equivariant_needs_m2_and_pinned_pole() {
        let w3 = warp();
        let r = RadialField::new(
            Ansatz::Equivariant { degree: 1 },
            w3,
            vec![0.0; 65],
            BoundaryConditions::vortex(),
        );
        assert!(r.is_err());
        let w2 = Arc::new(solve_warping(&CurvatureProfile::Euclidean, 2, 2.0, 64).unwrap());
        assert!(RadialField::new(
            Ansatz::Equivariant { degree: 1 },
            Arc::clone(&w2),
            vec![0.0; 65],
            BoundaryConditions::free(),
        )
        .is_err());
        assert!(RadialField::new(
            Ansatz::Equivariant { degree: 1 },
            w2,
            vec![0.0; 65],
            BoundaryConditions::vortex(),
        )
        .is_ok());
    }

    #[test]
    fn csv_round_trip() {
        let w = warp();
        let f = RadialField::from_fn(Arc::clone(&w), 3, BoundaryConditions::free(), |r| {
            (1.0 + r).recip()
        })
        .unwrap();
        let text = f.to_csv();
        let g = RadialField::from_csv(w, Ansatz::scalar(3), BoundaryConditions::free(), &text)
            .unwrap();
        assert_eq!(f.phi(), g.phi());
    }

    #[test]
    fn sphere_distance_scalar() {
        let f = RadialField::constant(warp(), 0.0, 3).unwrap();
        let p0 = [1.0, 0.0, 0.0];
        assert!((f.sphere_distance_sq(10, &p0) - 1.0).abs() < 1e-15);
    }
}
