//! Γ from the Stirling series after an upward shift of the argument.

use std::f64::consts::PI;

use super::OracleError;

// Shift the argument up to this point before applying Stirling.
const STIRLING_FROM: f64 = 10.0;

// B_{2k} / (2k (2k − 1)), k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn stirling(y: f64) -> f64 {
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in STIRLING {
        corr += c * p;
        p *= inv2;
    }
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + corr
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma_stirling(x: f64) -> Result<f64, OracleError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(OracleError::Domain(x));
    }
    let mut y = x;
    let mut shift = 0.0;
    while y < STIRLING_FROM {
        shift += y.ln();
        y += 1.0;
    }
    Ok(stirling(y) - shift)
}

fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    (PI * r).sin()
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x) for x not a non-positive integer.
pub fn gamma_stirling(x: f64) -> Result<f64, OracleError> {
    if is_pole(x) || !x.is_finite() {
        return Err(OracleError::Domain(x));
    }
    if x < 0.5 {
        return Ok(PI / (sin_pi(x) * gamma_stirling(1.0 - x)?));
    }
    if x >= STIRLING_FROM {
        return Ok(stirling(x).exp());
    }
    let mut y = x;
    let mut product = 1.0;
    while y < STIRLING_FROM {
        product *= y;
        y += 1.0;
    }
    Ok(stirling(y).exp() / product)
}

/// 1/Γ(x), zero at the poles.
pub fn rgamma_stirling(x: f64) -> Result<f64, OracleError> {
    if is_pole(x) {
        return Ok(0.0);
    }
    Ok(1.0 / gamma_stirling(x)?)
}
