//! Special functions used by the spectral solvers.
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`gamma`] | Γ(x), Lanczos with reflection for x < 1/2 |
//! | [`ln_gamma`] | ln Γ(x) for x > 0 |
//! | [`bessel_j`] | J₀, J₁, J₂ for x ≥ 0 |
//! | [`mittag_leffler`] | E_α(z) for 0 < α ≤ 1 and z ≤ 0 |
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
mod kronrod;
mod mittag_leffler;

use thiserror::Error;

pub use bessel::{bessel_j, j0, j1, j2};
pub use gamma::{gamma, ln_gamma, sin_pi};
pub use mittag_leffler::{
    mittag_leffler, MlRegime, MlValue, ASYMPTOTIC_SWITCH, SERIES_GROWTH_LIMIT, SERIES_SWITCH,
};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("gamma has a pole at {0}")]
    Pole(f64),

    #[error("bessel_j: order {nu} is not supported (expected 0, 1 or 2)")]
    UnsupportedOrder { nu: u32 },

    #[error("{function}: argument {value} is outside the domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("fractional order must satisfy 0 < alpha < 1, got {0}")]
    InvalidOrder(f64),

    #[error("time horizon must be positive and finite, got {0}")]
    InvalidHorizon(f64),
}

/// Caputo order together with the final observation time.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "RawFracOrder")]
pub struct FracOrder {
    alpha: f64,
    horizon: f64,
}

#[derive(serde::Deserialize)]
struct RawFracOrder {
    alpha: f64,
    horizon: f64,
}

impl TryFrom<RawFracOrder> for FracOrder {
    type Error = SpecfunError;

    fn try_from(raw: RawFracOrder) -> Result<Self, Self::Error> {
        FracOrder::new(raw.alpha, raw.horizon)
    }
}

impl FracOrder {
    pub fn new(alpha: f64, horizon: f64) -> Result<Self, SpecfunError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(SpecfunError::InvalidOrder(alpha));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(SpecfunError::InvalidHorizon(horizon));
        }
        Ok(Self { alpha, horizon })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Final time `T` at which the overdetermination data is observed.
    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// The decay factor `E_α(-λ² t^α)` of an eigenmode with frequency `lambda`.
    pub fn propagator(&self, lambda: f64, t: f64) -> Result<f64, SpecfunError> {
        propagator(self.alpha, lambda, t)
    }
}

/// `E_α(-λ² t^α)` for `t ≥ 0`. Admits `α = 1` so classical heat checks can use it.
pub fn propagator(alpha: f64, lambda: f64, t: f64) -> Result<f64, SpecfunError> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(SpecfunError::Domain {
            function: "propagator",
            value: t,
            expected: "t >= 0",
        });
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    Ok(mittag_leffler(alpha, -(lambda * lambda) * t.powf(alpha))?.value)
}
