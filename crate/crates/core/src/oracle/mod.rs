//! Brute-force reference implementations used to check the production code.
//!
//! Nothing here calls into [`crate::specfun`], [`crate::basis`] or
//! [`crate::forward`]. Each oracle is built from primitive arithmetic,
//! `std` elementary functions and, where digits run out, big-integer
//! fixed-point arithmetic. They favour transparency over speed and are meant
//! for tests and verification runs.
//!
//! | Oracle | Checks |
//! |--------|--------|
//! | [`caputo_l1`], [`l1_time_stepper`] | Caputo derivative and mode evolution |
//! | [`adaptive_integral`] | Fourier-Bessel coefficient integrals |
//! | [`bisect_j0_zero`], [`j0_series`] | zeros of J₀ |
//! | [`j0_integral`], [`j1_integral`] | J₀, J₁ at large argument |
//! | [`gamma_stirling`] | Γ |
//! | [`mittag_leffler_series`], [`mittag_leffler_asymptotic`] | E_α(−x) |

mod bessel;
mod fixed;
mod gamma;
mod l1;
mod mittag_leffler;
mod simpson;

use thiserror::Error;

pub use bessel::{bisect_j0_zero, j0_integral, j0_series, j1_integral};
pub use gamma::{gamma_stirling, ln_gamma_stirling, rgamma_stirling};
pub use l1::{caputo_l1, l1_time_stepper, L1Scheme, SteppedMode};
pub use mittag_leffler::{mittag_leffler_asymptotic, mittag_leffler_series, ExtendedValue};
pub use simpson::{adaptive_integral, SIMPSON_MAX_DEPTH};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum OracleError {
    #[error("degenerate time grid: {0}")]
    DegenerateGrid(String),

    #[error("order {0} is outside the supported range")]
    InvalidOrder(f64),

    #[error("adaptive integration hit depth {depth}; best estimate {estimate:e}")]
    MaxDepth { estimate: f64, depth: usize },

    #[error("invalid integration request: {0}")]
    InvalidInterval(String),

    #[error("no sign change of J0 on [{a}, {b}]")]
    NoSignChange { a: f64, b: f64 },

    #[error("argument {0} is outside the oracle's domain")]
    Domain(f64),
}
