//! Inverse problems.
//!
//! - **Initial**: recover `g = u(·, 0)` from `f = u(·, T)`. Per mode,
//!   `g_k = f_k / E_α(−λ_k² T^α)`.
//! - **Source**: recover a time-independent source `h` from `g = u(·, 0)` and
//!   `f = u(·, T)`. Per mode,
//!   `C_k = (g_k − f_k) / (1 − E_α(−λ_k² T^α))` and `h_k = λ_k² (g_k − C_k)`.
//!
//! The only regularisation is truncation at `K` modes, plus an optional
//! cutoff that drops modes whose amplification exceeds a threshold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::basis::{synthesize, BasisError, BesselBasis, GridFunction, SpectralField};
use crate::forward::{ForwardError, ForwardSolver, ModeTrajectory};
use crate::specfun::{FracOrder, SpecfunError};

/// Reconstructions whose coefficients would exceed this magnitude are refused.
pub const OVERFLOW_LIMIT: f64 = 1e308;
/// Node count of the uniform grid on which the data residual is measured.
pub const RESIDUAL_NODES: usize = 101;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum InverseError {
    #[error(
        "ill-posed at mode {mode}: |data| {magnitude:e} times amplification {factor:e} overflows"
    )]
    IllPosed { mode: usize, factor: f64, magnitude: f64 },

    #[error("noise level must be a finite non-negative number, got {0}")]
    InvalidNoiseLevel(f64),

    #[error(transparent)]
    Basis(#[from] BasisError),

    #[error(transparent)]
    Forward(#[from] ForwardError),

    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    /// Recover the initial state from final data.
    Initial,
    /// Recover the source from initial and final data.
    Source,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct InverseOptions {
    /// Modes whose amplification factor exceeds this value are set to zero.
    pub cutoff: Option<f64>,
}

/// Tolerances and limits in force for a reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub overflow_limit: f64,
    pub residual_nodes: usize,
    pub cutoff: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub problem: Problem,
    /// `g` for [`Problem::Initial`], `h` for [`Problem::Source`].
    pub recovered: SpectralField,
    pub trajectories: Vec<ModeTrajectory>,
    pub amplification: Vec<f64>,
    pub truncation: usize,
    /// `‖u(·,T) − f‖_∞` on [`RESIDUAL_NODES`] uniform nodes, from re-simulation.
    pub residual: f64,
    /// 1-based indices of modes removed by the cutoff.
    pub dropped_modes: Vec<usize>,
    pub tolerances: Tolerances,
}

impl ReconstructionReport {
    /// Coefficients of the reconstructed solution at time `t`.
    pub fn solution_at(&self, t: f64) -> Result<SpectralField, InverseError> {
        let coeffs = self
            .trajectories
            .iter()
            .map(|m| m.at(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpectralField::new(coeffs)?)
    }
}

fn final_propagators(frac: FracOrder, basis: &BesselBasis, k: usize) -> Result<Vec<f64>, InverseError> {
    if k > basis.size() {
        return Err(BasisError::SizeMismatch { field: k, basis: basis.size() }.into());
    }
    basis.zeros()[..k]
        .iter()
        .map(|&l| Ok(frac.propagator(l, frac.horizon())?))
        .collect()
}

fn guard(mode: usize, magnitude: f64, factor: f64) -> Result<(), InverseError> {
    if magnitude == 0.0 {
        return Ok(());
    }
    let product = magnitude * factor;
    if !product.is_finite() || product > OVERFLOW_LIMIT {
        return Err(InverseError::IllPosed { mode, factor, magnitude });
    }
    Ok(())
}

fn residual(
    solver: &ForwardSolver,
    trajectories: &[ModeTrajectory],
    f: &SpectralField,
    horizon: f64,
) -> Result<f64, InverseError> {
    let nodes = GridFunction::uniform_nodes(RESIDUAL_NODES);
    let resim = solver.coefficients_at(trajectories, horizon)?;
    let a = synthesize(&resim, solver.basis(), &nodes)?;
    let b = synthesize(f, solver.basis(), &nodes)?;
    Ok(a.max_abs_diff(&b)?)
}

/// Per-mode amplification factors: `1/E_α(−λ_k² T^α)` for the initial problem
/// and `λ_k² / (1 − E_α(−λ_k² T^α))` for the source problem.
pub fn amplification_profile(
    frac: FracOrder,
    basis: &BesselBasis,
    problem: Problem,
) -> Result<Vec<f64>, InverseError> {
    let e = final_propagators(frac, basis, basis.size())?;
    Ok(match problem {
        Problem::Initial => e.iter().map(|v| 1.0 / v).collect(),
        Problem::Source => e
            .iter()
            .zip(basis.zeros())
            .map(|(v, l)| l * l / (1.0 - v))
            .collect(),
    })
}

pub fn invert_initial(
    f: &SpectralField,
    frac: FracOrder,
    basis: &BesselBasis,
) -> Result<ReconstructionReport, InverseError> {
    invert_initial_with(f, frac, basis, &InverseOptions::default())
}

pub fn invert_initial_with(
    f: &SpectralField,
    frac: FracOrder,
    basis: &BesselBasis,
    options: &InverseOptions,
) -> Result<ReconstructionReport, InverseError> {
    let k = f.basis_size();
    let e = final_propagators(frac, basis, k)?;
    let mut dropped = Vec::new();
    let mut g = Vec::with_capacity(k);
    let mut amplification = Vec::with_capacity(k);
    for (i, (&fk, &ek)) in f.coeffs().iter().zip(&e).enumerate() {
        let factor = 1.0 / ek;
        amplification.push(factor);
        if options.cutoff.is_some_and(|c| factor > c) {
            dropped.push(i + 1);
            g.push(0.0);
            continue;
        }
        guard(i + 1, fk.abs(), factor)?;
        g.push(if fk == 0.0 { 0.0 } else { fk / ek });
    }
    let trajectories: Vec<_> = g
        .iter()
        .enumerate()
        .map(|(i, &gk)| ModeTrajectory::homogeneous(i + 1, basis.zeros()[i], frac.alpha(), gk))
        .collect();
    let solver = ForwardSolver::new(basis, frac);
    let residual = residual(&solver, &trajectories, f, frac.horizon())?;
    Ok(ReconstructionReport {
        problem: Problem::Initial,
        recovered: SpectralField::new(g)?,
        trajectories,
        amplification,
        truncation: k,
        residual,
        dropped_modes: dropped,
        tolerances: Tolerances {
            overflow_limit: OVERFLOW_LIMIT,
            residual_nodes: RESIDUAL_NODES,
            cutoff: options.cutoff,
        },
    })
}

pub fn invert_source(
    g: &SpectralField,
    f: &SpectralField,
    frac: FracOrder,
    basis: &BesselBasis,
) -> Result<ReconstructionReport, InverseError> {
    invert_source_with(g, f, frac, basis, &InverseOptions::default())
}

pub fn invert_source_with(
    g: &SpectralField,
    f: &SpectralField,
    frac: FracOrder,
    basis: &BesselBasis,
    options: &InverseOptions,
) -> Result<ReconstructionReport, InverseError> {
    if g.basis_size() != f.basis_size() {
        return Err(BasisError::SizeMismatch { field: f.basis_size(), basis: g.basis_size() }.into());
    }
    let k = g.basis_size();
    let e = final_propagators(frac, basis, k)?;
    let mut dropped = Vec::new();
    let mut h = Vec::with_capacity(k);
    let mut amplification = Vec::with_capacity(k);
    let mut trajectories = Vec::with_capacity(k);
    for i in 0..k {
        let lambda = basis.zeros()[i];
        let (gk, fk) = (g.coeffs()[i], f.coeffs()[i]);
        let denom = 1.0 - e[i];
        let factor = lambda * lambda / denom;
        amplification.push(factor);
        if options.cutoff.is_some_and(|c| factor > c) {
            dropped.push(i + 1);
            h.push(0.0);
            trajectories.push(ModeTrajectory::homogeneous(i + 1, lambda, frac.alpha(), gk));
            continue;
        }
        guard(i + 1, (gk - fk).abs(), factor)?;
        let transient = (gk - fk) / denom;
        let steady = gk - transient;
        h.push(lambda * lambda * steady);
        trajectories.push(ModeTrajectory::with_steady_state(
            i + 1,
            lambda,
            frac.alpha(),
            gk,
            steady,
        ));
    }
    let solver = ForwardSolver::new(basis, frac);
    let residual = residual(&solver, &trajectories, f, frac.horizon())?;
    Ok(ReconstructionReport {
        problem: Problem::Source,
        recovered: SpectralField::new(h)?,
        trajectories,
        amplification,
        truncation: k,
        residual,
        dropped_modes: dropped,
        tolerances: Tolerances {
            overflow_limit: OVERFLOW_LIMIT,
            residual_nodes: RESIDUAL_NODES,
            cutoff: options.cutoff,
        },
    })
}

/// Data that can be perturbed by [`add_noise`].
pub trait Perturb: Sized {
    fn sup_norm(&self) -> f64;
    fn perturbed(&self, offsets: &mut dyn FnMut() -> f64) -> Result<Self, InverseError>;
}

impl Perturb for SpectralField {
    fn sup_norm(&self) -> f64 {
        SpectralField::sup_norm(self)
    }

    fn perturbed(&self, offsets: &mut dyn FnMut() -> f64) -> Result<Self, InverseError> {
        Ok(SpectralField::new(self.coeffs().iter().map(|c| c + offsets()).collect())?)
    }
}

impl Perturb for GridFunction {
    fn sup_norm(&self) -> f64 {
        GridFunction::sup_norm(self)
    }

    fn perturbed(&self, offsets: &mut dyn FnMut() -> f64) -> Result<Self, InverseError> {
        Ok(self.with_values(self.values().iter().map(|v| v + offsets()).collect())?)
    }
}

/// Adds uniform noise in `[−level·‖f‖_∞, level·‖f‖_∞]` to every entry,
/// drawn from a ChaCha8 stream seeded by `seed`.
pub fn add_noise<T: Perturb + Clone>(f: &T, level: f64, seed: u64) -> Result<T, InverseError> {
    if !(level >= 0.0) || !level.is_finite() {
        return Err(InverseError::InvalidNoiseLevel(level));
    }
    if level == 0.0 {
        return Ok(f.clone());
    }
    let amplitude = level * f.sup_norm();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    f.perturbed(&mut || amplitude * rng.gen_range(-1.0..=1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{analyze, Quadrature};

    fn poly43(x: f64) -> f64 {
        x.powi(4) * (1.0 - x).powi(3)
    }

    fn setup(k: usize) -> (BesselBasis, SpectralField) {
        let b = BesselBasis::new(k).unwrap();
        let q = Quadrature::for_basis(&b);
        (b.clone(), analyze(poly43, &b, &q).unwrap())
    }

    #[test]
    fn zero_data_gives_zero_reconstruction() {
        let b = BesselBasis::new(10).unwrap();
        let frac = FracOrder::new(0.5, 1.0).unwrap();
        let r = invert_initial(&SpectralField::zeros(10).unwrap(), frac, &b).unwrap();
        assert!(r.recovered.coeffs().iter().all(|&v| v == 0.0));
        assert_eq!(r.residual, 0.0);
        assert!(r.solution_at(0.4).unwrap().coeffs().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_mode_is_divided_by_its_propagator() {
        let b = BesselBasis::new(4).unwrap();
        let frac = FracOrder::new(0.5, 1.0).unwrap();
        let r = invert_initial(&SpectralField::unit(1, 4).unwrap(), frac, &b).unwrap();
        let e = frac.propagator(b.lambda(1), 1.0).unwrap();
        assert_eq!(r.recovered.coeff(1), 1.0 / e);
        assert_eq!(r.amplification[0], 1.0 / e);
    }

    #[test]
    fn equal_data_is_a_steady_state() {
        let (b, g) = setup(20);
        let frac = FracOrder::new(0.6, 1.5).unwrap();
        let r = invert_source(&g, &g, frac, &b).unwrap();
        for (i, m) in r.trajectories.iter().enumerate() {
            assert_eq!(m.transient(), 0.0);
            let l = b.zeros()[i];
            assert!((r.recovered.coeffs()[i] - l * l * g.coeffs()[i]).abs() <= 1e-15 * l * l);
        }
        let u = r.solution_at(0.7).unwrap();
        assert!(u.difference(&g).unwrap().sup_norm() <= 1e-16);
    }

    #[test]
    fn source_from_pure_final_mode() {
        let b = BesselBasis::new(3).unwrap();
        let frac = FracOrder::new(0.5, 1.0).unwrap();
        let g = SpectralField::zeros(3).unwrap();
        let f = SpectralField::unit(1, 3).unwrap();
        let r = invert_source(&g, &f, frac, &b).unwrap();
        let e = frac.propagator(b.lambda(1), 1.0).unwrap();
        let c1 = -1.0 / (1.0 - e);
        let m = r.trajectories[0];
        assert!((m.transient() - c1).abs() <= 1e-15);
        assert!((r.recovered.coeff(1) + b.lambda(1).powi(2) * c1).abs() <= 1e-12);
        assert!((m.at(1.0).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn overflow_guard_names_the_mode() {
        let b = BesselBasis::new(3).unwrap();
        let frac = FracOrder::new(0.5, 1.0).unwrap();
        let f = SpectralField::new(vec![0.0, 1e307, 0.0]).unwrap();
        assert!(matches!(
            invert_initial(&f, frac, &b),
            Err(InverseError::IllPosed { mode: 2, .. })
        ));
        let g = SpectralField::zeros(3).unwrap();
        assert!(matches!(
            invert_source(&g, &f, frac, &b),
            Err(InverseError::IllPosed { mode: 2, .. })
        ));
    }

    #[test]
    fn cutoff_drops_strongly_amplified_modes() {
        let (b, g) = setup(20);
        let frac = FracOrder::new(0.5, 1.0).unwrap();
        let amp = amplification_profile(frac, &b, Problem::Initial).unwrap();
        let options = InverseOptions { cutoff: Some(amp[9]) };
        let r = invert_initial_with(&g, frac, &b, &options).unwrap();
        assert_eq!(r.dropped_modes, (11..=20).collect::<Vec<_>>());
        assert!(r.recovered.coeffs()[10..].iter().all(|&v| v == 0.0));
        assert_eq!(r.tolerances.cutoff, Some(amp[9]));
    }

    #[test]
    fn profile_orderings() {
        let b = BesselBasis::new(30).unwrap();
        for alpha in [0.2, 0.5, 0.9] {
            let frac = FracOrder::new(alpha, 1.0).unwrap();
            let init = amplification_profile(frac, &b, Problem::Initial).unwrap();
            assert!(init[0] >= 1.0);
            assert!(init.windows(2).all(|w| w[0] < w[1]));
            let src = amplification_profile(frac, &b, Problem::Source).unwrap();
            let e1 = frac.propagator(b.lambda(1), 1.0).unwrap();
            for (a, l) in src.iter().zip(b.zeros()) {
                let ratio = a / (l * l);
                assert!(ratio > 1.0 && ratio <= 1.0 / (1.0 - e1) * (1.0 + 1e-15));
            }
        }
    }

    #[test]
    fn noise_contract() {
        let (_, g) = setup(10);
        assert_eq!(add_noise(&g, 0.0, 7).unwrap(), g);
        let a = add_noise(&g, 1e-2, 7).unwrap();
        assert_eq!(a, add_noise(&g, 1e-2, 7).unwrap());
        assert_ne!(a, add_noise(&g, 1e-2, 8).unwrap());
        assert!(a.difference(&g).unwrap().sup_norm() <= 1e-2 * g.sup_norm());
        assert!(add_noise(&g, -1.0, 7).is_err());
        let grid = GridFunction::sample(GridFunction::uniform_nodes(11), poly43).unwrap();
        let noisy = add_noise(&grid, 0.1, 3).unwrap();
        assert_eq!(noisy.nodes(), grid.nodes());
        assert!(noisy.max_abs_diff(&grid).unwrap() <= 0.1 * grid.sup_norm());
    }

    #[test]
    fn mismatched_sizes_are_rejected() {
        let b = BesselBasis::new(5).unwrap();
        let frac = FracOrder::new(0.5, 1.0).unwrap();
        let g = SpectralField::zeros(5).unwrap();
        let f = SpectralField::zeros(4).unwrap();
        assert!(matches!(invert_source(&g, &f, frac, &b), Err(InverseError::Basis(_))));
        let big = SpectralField::zeros(6).unwrap();
        assert!(matches!(invert_initial(&big, frac, &b), Err(InverseError::Basis(_))));
    }
}
