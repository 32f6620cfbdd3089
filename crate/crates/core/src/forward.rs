//! Direct problem: given `u(x, 0) = g` and an optional time-independent source
//! `h`, evaluate the solution of
//!
//! `ᶜD^α u = u_xx + u_x / x + h`, `u(1, t) = 0`, `lim x·u_x = 0` at the origin.
//!
//! Each eigenmode obeys `ᶜD^α u_k + λ_k² u_k = h_k`, solved by
//! `u_k(t) = (g_k − h_k/λ_k²)·E_α(−λ_k² t^α) + h_k/λ_k²`.

use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::basis::{synthesize, BasisError, BesselBasis, GridFunction, SpectralField};
use crate::specfun::{propagator, FracOrder, SpecfunError};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ForwardError {
    #[error("time {t} is outside [0, {horizon}]")]
    TimeOutOfRange { t: f64, horizon: f64 },

    #[error(transparent)]
    Basis(#[from] BasisError),

    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

/// Time evolution of one eigenmode,
/// `u_k(t) = u_k(0)·E_α(−λ_k² t^α) + s_k·(1 − E_α(−λ_k² t^α))`,
/// where `s_k = h_k/λ_k²` is the steady state (zero without a source).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeTrajectory {
    mode: usize,
    lambda: f64,
    alpha: f64,
    initial: f64,
    steady: f64,
}

impl ModeTrajectory {
    pub fn homogeneous(mode: usize, lambda: f64, alpha: f64, initial: f64) -> Self {
        Self { mode, lambda, alpha, initial, steady: 0.0 }
    }

    pub fn with_source(mode: usize, lambda: f64, alpha: f64, initial: f64, source: f64) -> Self {
        Self::with_steady_state(mode, lambda, alpha, initial, source / (lambda * lambda))
    }

    pub(crate) fn with_steady_state(
        mode: usize,
        lambda: f64,
        alpha: f64,
        initial: f64,
        steady: f64,
    ) -> Self {
        Self { mode, lambda, alpha, initial, steady }
    }

    /// 1-based mode index.
    pub fn mode(&self) -> usize {
        self.mode
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `u_k(0)`.
    pub fn initial(&self) -> f64 {
        self.initial
    }

    /// `h_k / λ_k²`.
    pub fn steady_state(&self) -> f64 {
        self.steady
    }

    /// `C_k = u_k(0) − h_k/λ_k²`, the coefficient of the Mittag-Leffler term.
    pub fn transient(&self) -> f64 {
        self.initial - self.steady
    }

    /// `h_k`.
    pub fn source(&self) -> f64 {
        self.lambda * self.lambda * self.steady
    }

    pub fn at(&self, t: f64) -> Result<f64, SpecfunError> {
        let e = propagator(self.alpha, self.lambda, t)?;
        Ok(self.evolve(e))
    }

    fn evolve(&self, e: f64) -> f64 {
        self.initial * e + self.steady * (1.0 - e)
    }
}

/// Spectral forward solver over a fixed basis.
///
/// Propagators are recomputed on every call unless [`ForwardSolver::memoized`]
/// is used, which caches `E_α(−λ_k² t^α)` by `(k, t)`.
#[derive(Debug)]
pub struct ForwardSolver<'a> {
    basis: &'a BesselBasis,
    alpha: f64,
    horizon: f64,
    memo: Option<Mutex<HashMap<(usize, u64), f64>>>,
}

impl<'a> ForwardSolver<'a> {
    pub fn new(basis: &'a BesselBasis, frac: FracOrder) -> Self {
        Self::with_order(basis, frac.alpha(), frac.horizon())
    }

    /// Also admits `alpha = 1`, for classical-diffusion cross-checks.
    pub(crate) fn with_order(basis: &'a BesselBasis, alpha: f64, horizon: f64) -> Self {
        Self { basis, alpha, horizon, memo: None }
    }

    pub fn memoized(mut self) -> Self {
        self.memo = Some(Mutex::new(HashMap::new()));
        self
    }

    pub fn basis(&self) -> &BesselBasis {
        self.basis
    }

    fn check_time(&self, t: f64) -> Result<(), ForwardError> {
        if !(0.0..=self.horizon).contains(&t) {
            return Err(ForwardError::TimeOutOfRange { t, horizon: self.horizon });
        }
        Ok(())
    }

    fn check_field(&self, field: &SpectralField) -> Result<(), ForwardError> {
        if field.basis_size() > self.basis.size() {
            return Err(BasisError::SizeMismatch {
                field: field.basis_size(),
                basis: self.basis.size(),
            }
            .into());
        }
        Ok(())
    }

    fn propagator(&self, k: usize, t: f64) -> Result<f64, ForwardError> {
        let lambda = self.basis.lambda(k);
        match &self.memo {
            None => Ok(propagator(self.alpha, lambda, t)?),
            Some(cache) => {
                let key = (k, t.to_bits());
                if let Some(&v) = cache.lock().expect("propagator cache poisoned").get(&key) {
                    return Ok(v);
                }
                let v = propagator(self.alpha, lambda, t)?;
                cache.lock().expect("propagator cache poisoned").insert(key, v);
                Ok(v)
            }
        }
    }

    /// Mode trajectories for initial data `g` and optional source `h`.
    pub fn trajectories(
        &self,
        g: &SpectralField,
        h: Option<&SpectralField>,
    ) -> Result<Vec<ModeTrajectory>, ForwardError> {
        self.check_field(g)?;
        if let Some(h) = h {
            if h.basis_size() != g.basis_size() {
                return Err(BasisError::SizeMismatch {
                    field: h.basis_size(),
                    basis: g.basis_size(),
                }
                .into());
            }
        }
        Ok(g.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &gk)| {
                let k = i + 1;
                let lambda = self.basis.lambda(k);
                match h {
                    Some(h) if h.coeff(k) != 0.0 => {
                        ModeTrajectory::with_source(k, lambda, self.alpha, gk, h.coeff(k))
                    }
                    _ => ModeTrajectory::homogeneous(k, lambda, self.alpha, gk),
                }
            })
            .collect())
    }

    /// Coefficients `u_k(t)` of the solution at time `t`.
    pub fn coefficients_at(
        &self,
        trajectories: &[ModeTrajectory],
        t: f64,
    ) -> Result<SpectralField, ForwardError> {
        self.check_time(t)?;
        let coeffs = trajectories
            .iter()
            .map(|m| Ok(m.evolve(self.propagator(m.mode(), t)?)))
            .collect::<Result<Vec<_>, ForwardError>>()?;
        Ok(SpectralField::new(coeffs)?)
    }

    pub fn solve_homogeneous(
        &self,
        g: &SpectralField,
        t: f64,
        x: &[f64],
    ) -> Result<GridFunction, ForwardError> {
        let modes = self.trajectories(g, None)?;
        let u = self.coefficients_at(&modes, t)?;
        Ok(synthesize(&u, self.basis, x)?)
    }

    pub fn solve_with_source(
        &self,
        g: &SpectralField,
        h: &SpectralField,
        t: f64,
        x: &[f64],
    ) -> Result<GridFunction, ForwardError> {
        let modes = self.trajectories(g, Some(h))?;
        let u = self.coefficients_at(&modes, t)?;
        Ok(synthesize(&u, self.basis, x)?)
    }
}

/// `u(x, t) = Σ g_k E_α(−λ_k² t^α) J₀(λ_k x)`.
pub fn solve_forward_homogeneous(
    g: &SpectralField,
    frac: FracOrder,
    basis: &BesselBasis,
    t: f64,
    x: &[f64],
) -> Result<GridFunction, ForwardError> {
    ForwardSolver::new(basis, frac).solve_homogeneous(g, t, x)
}

/// `u(x, t) = Σ [(g_k − h_k/λ_k²) E_α(−λ_k² t^α) + h_k/λ_k²] J₀(λ_k x)`.
pub fn solve_forward_with_source(
    g: &SpectralField,
    h: &SpectralField,
    frac: FracOrder,
    basis: &BesselBasis,
    t: f64,
    x: &[f64],
) -> Result<GridFunction, ForwardError> {
    ForwardSolver::new(basis, frac).solve_with_source(g, h, t, x)
}
