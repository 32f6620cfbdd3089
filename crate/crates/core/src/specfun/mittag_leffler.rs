//! One-parameter Mittag-Leffler function on the non-positive real axis.
//!
//! `E_α(z) = Σ_k z^k / Γ(αk + 1)`, evaluated for `0 < α ≤ 1`, `z = -x ≤ 0` by
//! one of three methods:
//!
//! - **series**: the Taylor series, when `x ≤ SERIES_SWITCH` and the largest
//!   term stays small (`x^{1/α} ≤ SERIES_GROWTH_LIMIT`); beyond that the
//!   alternating sum cancels catastrophically,
//! - **asymptotic**: `E_α(-x) ≈ Σ_{n≥1} (-1)^{n+1} x^{-n} / Γ(1 - αn)` for
//!   `x ≥ ASYMPTOTIC_SWITCH`, truncated at the smallest term,
//! - **crossover**: everything in between, from the Laplace-type integral
//!
//!   `E_α(-x) = sin(απ)/(απ) ∫₀^∞ exp(-v^{1/α}) · x / (v² + 2xv·cos(απ) + x²) dv`,
//!
//!   which holds for `0 < α < 1` and has a positive integrand.
//!
//! `α = 1` is evaluated as `exp(z)`, the closed form of the series.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::{gamma, ln_gamma, sin_pi};
use super::kronrod;
use super::SpecfunError;

/// Upper bound on `|z|` for the Taylor series.
pub const SERIES_SWITCH: f64 = 5.0;
/// Lower bound on `|z|` for the asymptotic expansion.
pub const ASYMPTOTIC_SWITCH: f64 = 50.0;
/// Largest admissible `|z|^{1/α}` for the Taylor series. The peak term of the
/// series is roughly `exp(|z|^{1/α})`.
pub const SERIES_GROWTH_LIMIT: f64 = 6.0;

const SERIES_MAX_TERMS: usize = 10_000;
const ASYMPTOTIC_MAX_TERMS: usize = 1_000;
const CROSSOVER_TOL: f64 = 1e-15;
// exp(-v^{1/α}) < 2e-22 past v = CUTOFF^α
const CROSSOVER_CUTOFF: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MlRegime {
    Series,
    Asymptotic,
    Crossover,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlValue {
    pub value: f64,
    pub regime: MlRegime,
}

/// `E_α(z)` for `0 < α ≤ 1` and `z ≤ 0`.
pub fn mittag_leffler(alpha: f64, z: f64) -> Result<MlValue, SpecfunError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(SpecfunError::Domain {
            function: "mittag_leffler",
            value: alpha,
            expected: "0 < alpha <= 1",
        });
    }
    if !(z <= 0.0) || z.is_infinite() {
        return Err(SpecfunError::Domain {
            function: "mittag_leffler",
            value: z,
            expected: "finite z <= 0",
        });
    }
    let x = -z;
    if alpha == 1.0 {
        return Ok(MlValue { value: z.exp(), regime: MlRegime::Series });
    }
    if x == 0.0 {
        return Ok(MlValue { value: 1.0, regime: MlRegime::Series });
    }
    if x >= ASYMPTOTIC_SWITCH {
        return Ok(MlValue { value: asymptotic(alpha, x), regime: MlRegime::Asymptotic });
    }
    if x <= SERIES_SWITCH && x.powf(1.0 / alpha) <= SERIES_GROWTH_LIMIT {
        if let Some(value) = series(alpha, x) {
            return Ok(MlValue { value, regime: MlRegime::Series });
        }
    }
    Ok(MlValue { value: crossover(alpha, x), regime: MlRegime::Crossover })
}

/// Neumaier-compensated Taylor sum of `E_α(-x)`; `None` if it fails to converge.
fn series(alpha: f64, x: f64) -> Option<f64> {
    let z = -x;
    let mut power = 1.0_f64;
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    let mut prev = f64::INFINITY;
    for k in 0..SERIES_MAX_TERMS {
        let arg = alpha * k as f64 + 1.0;
        let term = if arg < 170.0 {
            power / gamma(arg).ok()?
        } else {
            let mag = (k as f64 * x.ln() - ln_gamma(arg).ok()?).exp();
            if k % 2 == 0 {
                mag
            } else {
                -mag
            }
        };
        let t = sum + term;
        if sum.abs() >= term.abs() {
            carry += (sum - t) + term;
        } else {
            carry += (term - t) + sum;
        }
        sum = t;
        // past the peak and below resolution
        if term.abs() < 1e-17 * (sum + carry).abs().max(1e-300) && term.abs() <= prev {
            return Some(sum + carry);
        }
        prev = term.abs();
        power *= z;
    }
    None
}

fn asymptotic(alpha: f64, x: f64) -> f64 {
    let ln_x = x.ln();
    let mut sum = 0.0;
    let mut prev_envelope = f64::INFINITY;
    for n in 1..=ASYMPTOTIC_MAX_TERMS {
        let s = alpha * n as f64;
        // 1/Γ(1 - s) = Γ(s)·sin(πs)/π
        let envelope = match ln_gamma(s) {
            Ok(lg) => (lg - n as f64 * ln_x).exp(),
            Err(_) => break,
        };
        if envelope >= prev_envelope {
            break;
        }
        let term = envelope * sin_pi(s) / PI;
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if envelope < 1e-18 * sum.abs() {
            break;
        }
        prev_envelope = envelope;
    }
    sum
}

fn crossover(alpha: f64, x: f64) -> f64 {
    let (s, c) = (alpha * PI).sin_cos();
    let inv_alpha = 1.0 / alpha;
    let end = CROSSOVER_CUTOFF.powf(alpha);
    let mut breaks = vec![0.0, end];
    if end > 1.0 {
        breaks.push(1.0);
    }
    if c < 0.0 {
        // near-pole of the denominator at v0 = -x cos(απ), half-width x sin(απ)
        let v0 = -x * c;
        let w = x * s;
        for p in [v0 - w, v0, v0 + w] {
            if p > 0.0 && p < end {
                breaks.push(p);
            }
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let shift = x * c;
    let width = x * s;
    let integrand = |v: f64| {
        let d = v + shift;
        (-v.powf(inv_alpha)).exp() * x / (d * d + width * width)
    };
    s / (alpha * PI) * kronrod::integrate(integrand, &breaks, CROSSOVER_TOL)
}
