use std::f64::consts::PI;

use super::BasisError;
use crate::specfun::{j0, j1};

/// Required `|J₀(λ_k)|` after Newton polishing.
pub const ZERO_TOLERANCE: f64 = 1e-12;
pub const NEWTON_MAX_ITERATIONS: usize = 50;

/// The first `K` positive zeros of `J₀` and the normalisation constants
/// `J₁(λ_k)²`. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselBasis {
    zeros: Vec<f64>,
    norms: Vec<f64>,
}

impl BesselBasis {
    pub fn new(size: usize) -> Result<Self, BasisError> {
        compute_zeros(size)
    }

    pub fn size(&self) -> usize {
        self.zeros.len()
    }

    /// `λ_1 < λ_2 < … < λ_K`.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// `J₁(λ_k)²`, the squared norm of mode `k` under weight `x` is half of this.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// `λ_k` for the 1-based mode index `k`.
    pub fn lambda(&self, k: usize) -> f64 {
        self.zeros[k - 1]
    }
}

fn newton_zero(k: usize) -> Result<f64, BasisError> {
    let mut lambda = k as f64 * PI - PI / 4.0;
    for _ in 0..NEWTON_MAX_ITERATIONS {
        // J0' = -J1
        let step = j0(lambda) / j1(lambda);
        lambda += step;
        if step.abs() <= 1e-15 * lambda {
            let residual = j0(lambda).abs();
            if residual <= ZERO_TOLERANCE {
                return Ok(lambda);
            }
            return Err(BasisError::ZeroNotConverged { k, residual });
        }
    }
    Err(BasisError::ZeroNotConverged { k, residual: j0(lambda).abs() })
}

/// First `count` positive zeros of `J₀`, Newton-polished from `kπ − π/4`.
///
/// Each zero is computed independently of `count`, so a smaller basis is a
/// bitwise prefix of a larger one.
pub fn compute_zeros(count: usize) -> Result<BesselBasis, BasisError> {
    if count == 0 {
        return Err(BasisError::EmptyBasis);
    }
    let zeros = (1..=count).map(newton_zero).collect::<Result<Vec<_>, _>>()?;
    assert!(zeros[0] >= 1.0, "first zero of J0 must exceed 1");
    let norms = zeros
        .iter()
        .map(|&l| {
            let v = j1(l);
            v * v
        })
        .collect();
    Ok(BesselBasis { zeros, norms })
}
