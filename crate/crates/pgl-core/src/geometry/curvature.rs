//! Radial curvature profiles.
//!
//! Each profile denotes a band of admissible radial curvatures K_r together
//! with one concrete representative inside the band. The representative is
//! what the warping integrator sees; the band is what the comparison cases
//! constrain.

use crate::error::{Error, Result};

/// Which concrete K_r inside the band the integrator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BandSelection {
    /// Most negative admissible curvature. Maximizes the warping function,
    /// which stresses the upper Hessian bound.
    #[default]
    Lower,
    /// Least negative / most positive admissible curvature.
    Upper,
    /// Midpoint of the band.
    Mid,
}

/// A radial curvature profile K_r.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvatureProfile {
    /// K_r = 0.
    Euclidean,
    /// K_r = k (constant; k < 0 is hyperbolic-like, k > 0 closes up).
    Constant { k: f64 },
    /// -alpha^2 <= K_r <= -beta^2 with 0 < beta <= alpha.
    Pinched {
        alpha: f64,
        beta: f64,
        selection: BandSelection,
    },
    /// -A/(1+r^2)^{1+decay} <= K_r <= B/(1+r^2)^{1+decay}.
    PowerDecay {
        a_neg: f64,
        b_pos: f64,
        decay: f64,
        selection: BandSelection,
    },
    /// -a^2/(1+r^2) <= K_r <= b^2/(1+r^2) with b^2 in [0, 1/4].
    AsymptoticallyFlat {
        a: f64,
        b: f64,
        selection: BandSelection,
    },
    /// Sampled r -> K_r, linearly interpolated, clamped outside the sample range.
    Table { radii: Vec<f64>, kappa: Vec<f64> },
}

impl CurvatureProfile {
    pub fn pinched(alpha: f64, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= alpha) {
            return Err(Error::InvalidParams(format!(
                "pinched profile needs 0 < beta <= alpha, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self::Pinched {
            alpha,
            beta,
            selection: BandSelection::Lower,
        })
    }

    pub fn power_decay(a_neg: f64, b_pos: f64, decay: f64) -> Result<Self> {
        if a_neg < 0.0 || b_pos < 0.0 || decay <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "power-decay profile needs A >= 0, B >= 0, decay > 0, got A = {a_neg}, B = {b_pos}, decay = {decay}"
            )));
        }
        Ok(Self::PowerDecay {
            a_neg,
            b_pos,
            decay,
            selection: BandSelection::Lower,
        })
    }

    pub fn asymptotically_flat(a: f64, b: f64) -> Result<Self> {
        if a < 0.0 || !(0.0..=0.25).contains(&(b * b)) {
            return Err(Error::InvalidParams(format!(
                "asymptotically-flat profile needs a >= 0 and b^2 in [0, 1/4], got a = {a}, b = {b}"
            )));
        }
        Ok(Self::AsymptoticallyFlat {
            a,
            b,
            selection: BandSelection::Lower,
        })
    }

    pub fn table(radii: Vec<f64>, kappa: Vec<f64>) -> Result<Self> {
        if radii.len() != kappa.len() || radii.len() < 2 {
            return Err(Error::InvalidParams(
                "curvature table needs matching r / K columns with at least 2 rows".into(),
            ));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParams(
                "curvature table radii must be strictly increasing".into(),
            ));
        }
        Ok(Self::Table { radii, kappa })
    }

    pub fn with_selection(mut self, sel: BandSelection) -> Self {
        match &mut self {
            Self::Pinched { selection, .. }
            | Self::PowerDecay { selection, .. }
            | Self::AsymptoticallyFlat { selection, .. } => *selection = sel,
            _ => {}
        }
        self
    }

    /// Band of admissible curvatures at radius `r` (lower, upper).
    pub fn band(&self, r: f64) -> (f64, f64) {
        match self {
            Self::Euclidean => (0.0, 0.0),
            Self::Constant { k } => (*k, *k),
            Self::Pinched { alpha, beta, .. } => (-alpha * alpha, -beta * beta),
            Self::PowerDecay {
                a_neg,
                b_pos,
                decay,
                ..
            } => {
                let w = (1.0 + r * r).powf(1.0 + decay);
                (-a_neg / w, b_pos / w)
            }
            Self::AsymptoticallyFlat { a, b, .. } => {
                let w = 1.0 + r * r;
                (-a * a / w, b * b / w)
            }
            Self::Table { .. } => {
                let k = self.k_at(r);
                (k, k)
            }
        }
    }

    /// The concrete curvature the integrator uses at radius `r`.
    pub fn k_at(&self, r: f64) -> f64 {
        match self {
            Self::Euclidean => 0.0,
            Self::Constant { k } => *k,
            Self::Pinched { selection, .. }
            | Self::PowerDecay { selection, .. }
            | Self::AsymptoticallyFlat { selection, .. } => {
                let (lo, hi) = self.band(r);
                match selection {
                    BandSelection::Lower => lo,
                    BandSelection::Upper => hi,
                    BandSelection::Mid => 0.5 * (lo + hi),
                }
            }
            Self::Table { radii, kappa } => {
                if r <= radii[0] {
                    return kappa[0];
                }
                if r >= *radii.last().unwrap() {
                    return *kappa.last().unwrap();
                }
                let j = radii.partition_point(|&x| x <= r).min(radii.len() - 1);
                let (r0, r1) = (radii[j - 1], radii[j]);
                let t = (r - r0) / (r1 - r0);
                kappa[j - 1] * (1.0 - t) + kappa[j] * t
            }
        }
    }

    /// True when the concrete curvature is nonpositive everywhere on [0, r_max].
    /// Used to justify the linear-growth analytic tail.
    pub fn nonpositive(&self) -> bool {
        match self {
            Self::Euclidean | Self::Pinched { .. } => true,
            Self::Constant { k } => *k <= 0.0,
            Self::PowerDecay { selection, .. } | Self::AsymptoticallyFlat { selection, .. } => {
                matches!(selection, BandSelection::Lower)
            }
            Self::Table { kappa, .. } => kappa.iter().all(|&k| k <= 0.0),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Euclidean => "euclidean",
            Self::Constant { .. } => "constant",
            Self::Pinched { .. } => "pinched",
            Self::PowerDecay { .. } => "power_decay",
            Self::AsymptoticallyFlat { .. } => "asymptotically_flat",
            Self::Table { .. } => "table",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_selection_is_lower_envelope() {
        let p = CurvatureProfile::pinched(2.0, 1.0).unwrap();
        assert_eq!(p.k_at(3.0), -4.0);
        let p = CurvatureProfile::power_decay(1.0, 0.5, 1.0).unwrap();
        assert!((p.k_at(0.0) + 1.0).abs() < 1e-15);
        assert!((p.k_at(1.0) + 1.0 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn band_membership_under_all_selections() {
        let profiles = [
            CurvatureProfile::power_decay(2.0, 0.8, 0.7).unwrap(),
            CurvatureProfile::asymptotically_flat(1.5, 0.5).unwrap(),
            CurvatureProfile::pinched(2.0, 0.5).unwrap(),
        ];
        for base in profiles {
            for sel in [BandSelection::Lower, BandSelection::Upper, BandSelection::Mid] {
                let p = base.clone().with_selection(sel);
                for i in 0..=100 {
                    let r = 0.1 * i as f64;
                    let (lo, hi) = p.band(r);
                    let k = p.k_at(r);
                    assert!(k >= lo - 1e-15 && k <= hi + 1e-15);
                }
            }
        }
    }

    #[test]
    fn pinched_rejects_bad_ordering() {
        assert!(CurvatureProfile::pinched(1.0, 2.0).is_err());
        assert!(CurvatureProfile::pinched(1.0, 0.0).is_err());
    }

    #[test]
    fn table_interpolates_and_clamps() {
        let p = CurvatureProfile::table(vec![0.0, 1.0, 2.0], vec![-1.0, -0.5, 0.0]).unwrap();
        assert!((p.k_at(0.5) + 0.75).abs() < 1e-15);
        assert!((p.k_at(5.0) - 0.0).abs() < 1e-15);
        assert!((p.k_at(-1.0) + 1.0).abs() < 1e-15);
    }
}
