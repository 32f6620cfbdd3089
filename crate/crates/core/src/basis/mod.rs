//! Fourier-Bessel eigenbasis of the radial problem
//! `X'' + X'/x + λ²X = 0`, `lim x·X'(x) = 0` at the origin, `X(1) = 0`.
//!
//! The eigenfunctions are `J₀(λ_k x)` with `λ_k` the positive zeros of `J₀`.
//! A function on `[0, 1]` is represented by its coefficients `c_k` in
//! `f(x) = Σ c_k J₀(λ_k x)`, with
//! `c_k = 2/J₁(λ_k)² ∫₀¹ x f(x) J₀(λ_k x) dx`.

mod field;
mod quadrature;
mod spline;
mod transform;
mod zeros;

use thiserror::Error;

use crate::specfun::SpecfunError;

pub use field::{GridFunction, SpectralField};
pub use quadrature::Quadrature;
pub use spline::CubicSpline;
pub use transform::{
    analyze, analyze_grid, decay_exponent, partial_sum_differences, synthesize,
    synthesize_first_derivative, synthesize_second_derivative,
};
pub use zeros::{compute_zeros, BesselBasis, NEWTON_MAX_ITERATIONS, ZERO_TOLERANCE};

/// Truncation used when the caller does not pick one.
pub const DEFAULT_TRUNCATION: usize = 50;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum BasisError {
    #[error("a basis needs at least one mode")]
    EmptyBasis,

    #[error("coefficient list is empty")]
    EmptyField,

    #[error("Newton iteration for zero {k} of J0 did not converge (|J0| = {residual:e})")]
    ZeroNotConverged { k: usize, residual: f64 },

    #[error("quadrature order {order} is too coarse for {modes} modes (need at least {required})")]
    QuadratureTooCoarse {
        order: usize,
        modes: usize,
        required: usize,
    },

    #[error("field has {field} coefficients but the basis only has {basis} modes")]
    SizeMismatch { field: usize, basis: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("decay fit needs at least {required} nonzero coefficients, found {found}")]
    TooFewModes { required: usize, found: usize },

    #[error("machine-precision decay: every tail coefficient is below {threshold:e}")]
    MachinePrecisionDecay { threshold: f64 },

    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}
