//! Eigenvalues of Hess(r^2) on the model metric and the (P1) constant.
//!
//! On g = dr^2 + f^2 g_{S^{m-1}} the Hessian of r^2 is diagonal: the radial
//! eigenvalue is 2 and the tangential eigenvalue 2 r f'/f carries
//! multiplicity m-1. Condition (P1) asks for a positive lower bound sigma
//! on (sum_i lambda_i - p lambda_max) / 2.

use crate::error::{Error, Result};
use crate::geometry::curvature::CurvatureProfile;
use crate::geometry::warping::WarpingTable;

/// Nodal spectrum of Hess(r^2).
#[derive(Debug, Clone)]
pub struct HessianSpectrum {
    grid: Vec<f64>,
    lambda_tan: Vec<f64>,
    m: usize,
}

/// The radial eigenvalue of Hess(r^2) is identically 2.
pub const LAMBDA_RADIAL: f64 = 2.0;

/// Tangential and radial eigenvalues from the warping table. The pole node
/// takes the continuity value 2 and nodes with r < 4h use the small-r
/// series of r f'/f.
pub fn hessian_spectrum(warp: &WarpingTable) -> HessianSpectrum {
    let lambda_tan = (0..warp.len())
        .map(|i| 2.0 * warp.r_log_derivative(i))
        .collect();
    HessianSpectrum {
        grid: warp.grid().to_vec(),
        lambda_tan,
        m: warp.m(),
    }
}

impl HessianSpectrum {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn lambda_tan(&self) -> &[f64] {
        &self.lambda_tan
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Largest eigenvalue at node `i`: max(2, lambda_tan).
    pub fn lambda_max(&self, i: usize) -> f64 {
        self.lambda_tan[i].max(LAMBDA_RADIAL)
    }

    /// Sum of all eigenvalues at node `i` (the Laplacian of r^2).
    pub fn lambda_sum(&self, i: usize) -> f64 {
        LAMBDA_RADIAL + (self.m as f64 - 1.0) * self.lambda_tan[i]
    }

    /// Eigenvalues sorted ascending, with multiplicities expanded.
    pub fn sorted_eigenvalues(&self, i: usize) -> Vec<f64> {
        let mut v = vec![self.lambda_tan[i]; self.m - 1];
        v.push(LAMBDA_RADIAL);
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    /// The (P1) integrand (sum lambda_i - p lambda_max) / 2 at node `i`.
    pub fn p1_quantity(&self, i: usize, p: f64) -> f64 {
        0.5 * (self.lambda_sum(i) - p * self.lambda_max(i))
    }
}

/// Which closed-form curvature case produced a sigma value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaCase {
    /// Pinched negative curvature: sigma = m - p alpha / beta.
    Pinched,
    /// Power-decay band: sigma = 1 + (m-1)(1 - B/2e) - p exp(A/2e).
    PowerDecay,
    /// Asymptotically flat band:
    /// sigma = (2 - p + (m-1)(1 + sqrt(1-4b^2)) - p sqrt(1+4a^2)) / 2.
    AsymptoticallyFlat,
}

impl SigmaCase {
    pub fn label(&self) -> &'static str {
        match self {
            SigmaCase::Pinched => "i",
            SigmaCase::PowerDecay => "ii",
            SigmaCase::AsymptoticallyFlat => "iii",
        }
    }
}

/// Numeric and closed-form lower bounds for the (P1) constant.
#[derive(Debug, Clone, Copy)]
pub struct SigmaBound {
    /// Grid infimum of the (P1) quantity over the window, when computed.
    pub sigma_numeric: Option<f64>,
    /// Case formula value, when a case applies.
    pub sigma_closed: Option<f64>,
    /// Which case supplied the closed form.
    pub case_id: Option<SigmaCase>,
    /// Whether condition (P1) holds with a positive sigma.
    pub holds_p1: bool,
}

impl SigmaBound {
    /// Best available sigma: the numeric infimum when present, otherwise
    /// the closed form.
    pub fn sigma(&self) -> f64 {
        self.sigma_numeric.or(self.sigma_closed).unwrap_or(f64::NAN)
    }

    /// Merge a numeric bound with a closed-form one.
    pub fn merged(numeric: SigmaBound, closed: SigmaBound) -> SigmaBound {
        SigmaBound {
            sigma_numeric: numeric.sigma_numeric,
            sigma_closed: closed.sigma_closed,
            case_id: closed.case_id,
            holds_p1: numeric.holds_p1,
        }
    }
}

/// Grid infimum of the (P1) quantity over the radius window [r_lo, r_hi].
pub fn sigma_numeric(spec: &HessianSpectrum, p: f64, r_window: (f64, f64)) -> Result<SigmaBound> {
    let (lo, hi) = r_window;
    let mut min_val = f64::INFINITY;
    let mut seen = false;
    for (i, &r) in spec.grid().iter().enumerate() {
        if r >= lo - 1e-12 && r <= hi + 1e-12 {
            seen = true;
            min_val = min_val.min(spec.p1_quantity(i, p));
        }
    }
    if !seen {
        return Err(Error::EmptyWindow { lo, hi });
    }
    Ok(SigmaBound {
        sigma_numeric: Some(min_val),
        sigma_closed: None,
        case_id: None,
        holds_p1: min_val > 0.0,
    })
}

/// Raw case formula values, without the positivity gate. Exposed so
/// diagnostics can quote the formula even when the hypothesis fails.
pub fn case_formula(case: SigmaCase, m: usize, p: f64, params: (f64, f64, f64)) -> f64 {
    let md = m as f64;
    match case {
        SigmaCase::Pinched => {
            let (alpha, beta, _) = params;
            md - p * alpha / beta
        }
        SigmaCase::PowerDecay => {
            let (a, b, decay) = params;
            1.0 + (md - 1.0) * (1.0 - b / (2.0 * decay)) - p * (a / (2.0 * decay)).exp()
        }
        SigmaCase::AsymptoticallyFlat => {
            let (a, b, _) = params;
            0.5 * (2.0 - p + (md - 1.0) * (1.0 + (1.0 - 4.0 * b * b).sqrt())
                - p * (1.0 + 4.0 * a * a).sqrt())
        }
    }
}

/// Closed-form sigma for a profile matching cases (i), (ii) or (iii).
///
/// The euclidean profile is treated as case (iii) with a = b = 0 and a
/// constant nonpositive curvature as case (i) with alpha = beta. The case
/// hypotheses are enforced and a violation reports the failing inequality.
pub fn sigma_closed_form(profile: &CurvatureProfile, m: usize, p: f64) -> Result<SigmaBound> {
    let md = m as f64;
    let (case, sigma) = match profile {
        CurvatureProfile::Pinched { alpha, beta, .. } => {
            let hyp = (md - 1.0) * beta - p * alpha;
            // The degenerate equality (m-1) beta = p alpha still yields the
            // bound (the comparison argument only needs (m-1) >= p alpha/beta),
            // so the gate is non-strict here.
            if hyp < 0.0 {
                return Err(Error::HypothesisFailed(format!(
                    "case (i) needs (m-1) beta - p alpha >= 0, got {hyp:.6e}"
                )));
            }
            (SigmaCase::Pinched, case_formula(SigmaCase::Pinched, m, p, (*alpha, *beta, 0.0)))
        }
        CurvatureProfile::Constant { k } if *k == 0.0 => {
            let sigma = case_formula(SigmaCase::AsymptoticallyFlat, m, p, (0.0, 0.0, 0.0));
            if sigma <= 0.0 {
                return Err(Error::HypothesisFailed(format!(
                    "case (iii) with a = b = 0 needs m - p > 0, got {sigma:.6e}"
                )));
            }
            (SigmaCase::AsymptoticallyFlat, sigma)
        }
        CurvatureProfile::Constant { k } if *k < 0.0 => {
            let ab = (-k).sqrt();
            let hyp = (md - 1.0) * ab - p * ab;
            if hyp < 0.0 {
                return Err(Error::HypothesisFailed(format!(
                    "case (i) needs (m-1) beta - p alpha >= 0, got {hyp:.6e}"
                )));
            }
            (SigmaCase::Pinched, case_formula(SigmaCase::Pinched, m, p, (ab, ab, 0.0)))
        }
        CurvatureProfile::PowerDecay { a_neg, b_pos, decay, .. } => {
            if *b_pos >= 2.0 * decay {
                return Err(Error::HypothesisFailed(format!(
                    "case (ii) needs B < 2 decay, got B = {b_pos}, decay = {decay}"
                )));
            }
            let sigma = case_formula(SigmaCase::PowerDecay, m, p, (*a_neg, *b_pos, *decay));
            if sigma <= 0.0 {
                return Err(Error::HypothesisFailed(format!(
                    "case (ii) needs 1 + (m-1)(1 - B/2e) - p exp(A/2e) > 0, got {sigma:.6e}"
                )));
            }
            (SigmaCase::PowerDecay, sigma)
        }
        CurvatureProfile::AsymptoticallyFlat { a, b, .. } => {
            let sigma = case_formula(SigmaCase::AsymptoticallyFlat, m, p, (*a, *b, 0.0));
            if 2.0 * sigma <= 0.0 {
                return Err(Error::HypothesisFailed(format!(
                    "case (iii) needs 2 + (m-1)(1 + sqrt(1-4b^2)) - p(1 + sqrt(1+4a^2)) > 0, got {:.6e}",
                    2.0 * sigma
                )));
            }
            (SigmaCase::AsymptoticallyFlat, sigma)
        }
        CurvatureProfile::Euclidean => {
            let sigma = case_formula(SigmaCase::AsymptoticallyFlat, m, p, (0.0, 0.0, 0.0));
            if sigma <= 0.0 {
                return Err(Error::HypothesisFailed(format!(
                    "case (iii) with a = b = 0 needs m - p > 0, got {sigma:.6e}"
                )));
            }
            (SigmaCase::AsymptoticallyFlat, sigma)
        }
        other => {
            return Err(Error::UnsupportedProfile(format!(
                "no closed-form case for a {} profile",
                other.kind_name()
            )))
        }
    };
    Ok(SigmaBound {
        sigma_numeric: None,
        sigma_closed: Some(sigma),
        case_id: Some(case),
        holds_p1: sigma > 0.0,
    })
}
