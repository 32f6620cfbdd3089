//! J₀ from its power series in exact fixed point, J₀ and J₁ from the
//! periodic trapezoidal rule on Bessel's integral.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fixed::{decompose, scale, to_f64};
use super::OracleError;

// Arguments beyond this make the series needlessly expensive.
const SERIES_LIMIT: f64 = 400.0;
const GUARD_DIGITS: usize = 30;

fn digits_for(x: f64) -> usize {
    // every term is bounded by I₀(x) ≤ e^x
    GUARD_DIGITS + (x * std::f64::consts::LOG10_E).ceil() as usize
}

/// Σ (−1)^k (x/2)^{2k} / (k!)² scaled by `10^digits`, with every term exact
/// up to one truncation.
fn series_fixed(x: f64, digits: usize) -> BigInt {
    let (m, e) = decompose(x);
    let q = &m * &m;
    let shift = 2 * e - 2;
    let s = scale(digits);
    let mut sum = s.clone();
    let mut power = BigInt::one();
    let mut factorial_sq = BigInt::one();
    let mut k: u64 = 0;
    loop {
        k += 1;
        power *= &q;
        factorial_sq *= BigInt::from(k) * BigInt::from(k);
        let total_shift = shift as i64 * k as i64;
        let term = if total_shift >= 0 {
            ((&s * &power) << total_shift as usize) / &factorial_sq
        } else {
            (&s * &power) / (&factorial_sq << (-total_shift) as usize)
        };
        if term.is_zero() && k as f64 > x {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    sum
}

/// J₀(x) summed from the power series with enough decimal digits that
/// cancellation cannot reach the returned double.
pub fn j0_series(x: f64) -> Result<f64, OracleError> {
    let x = x.abs();
    if !x.is_finite() || x > SERIES_LIMIT {
        return Err(OracleError::Domain(x));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    let digits = digits_for(x);
    Ok(to_f64(&series_fixed(x, digits), digits))
}

fn sign_j0(x: f64) -> Result<i8, OracleError> {
    if !x.is_finite() || x.abs() > SERIES_LIMIT {
        return Err(OracleError::Domain(x));
    }
    let v = series_fixed(x.abs(), digits_for(x.abs()));
    Ok(if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    })
}

/// Zero of J₀ inside `[a, b]` by bisection down to adjacent doubles.
pub fn bisect_j0_zero(a: f64, b: f64) -> Result<f64, OracleError> {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let s_lo = sign_j0(lo)?;
    let s_hi = sign_j0(hi)?;
    if s_lo == 0 {
        return Ok(lo);
    }
    if s_hi == 0 {
        return Ok(hi);
    }
    if s_lo == s_hi {
        return Err(OracleError::NoSignChange { a, b });
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match sign_j0(mid)? {
            0 => return Ok(mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(0.5 * (lo + hi))
}

fn bessel_integral(n: f64, x: f64) -> f64 {
    // J_n(x) = (1/2π) ∫₀^{2π} cos(nθ − x sin θ) dθ; the trapezoidal rule on a
    // full period is exact up to terms of order J_M(x)
    let points = 2 * (x.abs().ceil() as usize) + 80;
    let h = 2.0 * PI / points as f64;
    let sum: f64 = (0..points)
        .map(|j| {
            let theta = j as f64 * h;
            (n * theta - x * theta.sin()).cos()
        })
        .sum();
    sum / points as f64
}

/// J₀(x) via Bessel's integral.
pub fn j0_integral(x: f64) -> f64 {
    bessel_integral(0.0, x)
}

/// J₁(x) via Bessel's integral.
pub fn j1_integral(x: f64) -> f64 {
    bessel_integral(1.0, x)
}
