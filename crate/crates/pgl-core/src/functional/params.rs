//! Constants of the p-Ginzburg-Landau functional.

use crate::error::{Error, Result};

/// Parameters of E(u) = ∫ |du|^p / p + (1 - |u|^2)^2 / (4 eps^pot).
///
/// The penalty exponent `pot_exponent` equals the target dimension unless
/// explicitly overridden. The degenerate weight |du|^{p-2} is regularized
/// as (|du|^2 + delta^2)^{(p-2)/2}; delta = 0 is only accepted at p = 2
/// where the weight is constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GLParams {
    pub p: f64,
    pub eps: f64,
    pub n_target: usize,
    pub pot_exponent: usize,
    pub delta: f64,
}

pub const DEFAULT_DELTA: f64 = 1e-6;

impl GLParams {
    /// Parameters with the potential exponent coupled to the target
    /// dimension and the default regularization (delta = 0 at p = 2).
    pub fn new(p: f64, eps: f64, n_target: usize) -> Result<Self> {
        let delta = if p == 2.0 { 0.0 } else { DEFAULT_DELTA };
        Self::with_options(p, eps, n_target, n_target, delta)
    }

    pub fn with_options(
        p: f64,
        eps: f64,
        n_target: usize,
        pot_exponent: usize,
        delta: f64,
    ) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::InvalidParams(format!("p must be >= 1, got {p}")));
        }
        if !(eps > 0.0) {
            return Err(Error::InvalidParams(format!("eps must be positive, got {eps}")));
        }
        if n_target == 0 {
            return Err(Error::InvalidParams("n_target must be >= 1".into()));
        }
        if delta < 0.0 {
            return Err(Error::InvalidParams(format!("delta must be >= 0, got {delta}")));
        }
        if delta == 0.0 && p != 2.0 {
            return Err(Error::InvalidParams(format!(
                "delta = 0 is only permitted at p = 2 (got p = {p})"
            )));
        }
        Ok(GLParams { p, eps, n_target, pot_exponent, delta })
    }

    /// 1 / eps^{pot_exponent}.
    pub fn penalty(&self) -> f64 {
        self.eps.powi(-(self.pot_exponent as i32))
    }

    /// Regularized p-weight q(w) = (w + delta^2)^{(p-2)/2} of the squared
    /// gradient norm w.
    pub fn q_weight(&self, w: f64) -> f64 {
        if self.p == 2.0 {
            1.0
        } else {
            (w + self.delta * self.delta).powf(0.5 * (self.p - 2.0))
        }
    }

    /// Shifted kinetic density ((w + delta^2)^{p/2} - delta^p) / p.
    ///
    /// The shift keeps the density exactly zero at w = 0 and exactly
    /// w^{p/2}/p at p = 2, while its w-derivative stays q(w)/2.
    pub fn kinetic_density(&self, w: f64) -> f64 {
        if self.p == 2.0 {
            0.5 * w
        } else {
            let d2 = self.delta * self.delta;
            ((w + d2).powf(0.5 * self.p) - d2.powf(0.5 * self.p)) / self.p
        }
    }

    /// Potential density (1 - phi^2)^2 / (4 eps^pot).
    pub fn potential_density(&self, phi: f64) -> f64 {
        let s = 1.0 - phi * phi;
        0.25 * self.penalty() * s * s
    }

    /// Derivative of the potential density in phi: -(1 - phi^2) phi / eps^pot.
    pub fn potential_density_grad(&self, phi: f64) -> f64 {
        -(1.0 - phi * phi) * phi * self.penalty()
    }
}
