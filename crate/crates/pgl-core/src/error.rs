use thiserror::Error;

/// Errors produced by the geometry, functional, solver and verification layers.
#[derive(Debug, Error)]
pub enum Error {
    /// The warping function hit zero away from the pole (conjugate point);
    /// the metric is no longer in the pole regime.
    #[error("warping function vanishes at r = {r:.6e} (conjugate point); pole condition violated")]
    PoleViolation { r: f64 },

    /// No grid node falls inside the requested radius window.
    #[error("no grid node inside the window [{lo:.6e}, {hi:.6e}]")]
    EmptyWindow { lo: f64, hi: f64 },

    /// A closed-form sigma case was requested but its positivity hypothesis fails.
    #[error("closed-form hypothesis failed: {0}")]
    HypothesisFailed(String),

    /// A comparison-geometry bound was violated beyond tolerance.
    #[error("comparison bound `{bound}` violated at node {index} (r = {r:.6e}) by {magnitude:.3e}")]
    BoundViolated {
        bound: &'static str,
        index: usize,
        r: f64,
        magnitude: f64,
    },

    /// The inverse-area tail integral is infinite under the configured growth model.
    #[error("tail integral diverges (m = {m}, area growth exponent {exponent:.3})")]
    TailDiverges { m: usize, exponent: f64 },

    /// Requested operation is not defined for this ansatz / exponent combination.
    #[error("unsupported ansatz: {0}")]
    UnsupportedAnsatz(String),

    /// The curvature profile does not match any comparison case.
    #[error("unsupported curvature profile: {0}")]
    UnsupportedProfile(String),

    /// Invalid functional or field parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Condition (P1) is unavailable, so a sigma-based checker is inapplicable.
    #[error("sigma = {sigma:.6e} is not positive; condition (P1) unavailable")]
    SigmaNotPositive { sigma: f64 },

    /// The descent iteration produced NaN or blew up.
    #[error("solver diverged at iteration {iter}: {reason}")]
    Diverged { iter: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
