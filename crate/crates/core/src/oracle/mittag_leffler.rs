//! E_α(z) by exact fixed-point summation of the power series, for
//! α = p/10, and the plain asymptotic expansion for large negative z.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::fixed::{decompose, from_decimal, log10_abs, scale, to_f64};
use super::gamma::rgamma_stirling;
use super::OracleError;

const DIGITS: usize = 100;
// stop after this many consecutive terms below one unit in the last place
const ZERO_RUN: usize = 12;
const MAX_TERMS: usize = 200_000;

// 1/Γ(r/10), r = 1..10
const INV_GAMMA_TENTHS: [&str; 10] = [
    "0.105113700611177780745701599891198989562416834242924051156337227376239307055215459442856659273383089138127",
    "0.217824884211667261566119952189755927736336644815824754679857193737489991616384339900467567987485522910419",
    "0.334272752564190553977231029065291053045483974665825527836706125708471332710283877034589323511560358985742",
    "0.45082419919441106387556436797965949798038051748787224835047325445529882340785575848765670293306510567399",
    "0.564189583547756286948079451560772585844050629328998856844085721710642468441493414486743660202107363443028",
    "0.671504972442073358184877711686186105719374168892205119456196471114393957140506241595825999331620128683637",
    "0.770383183866565998843996863207972085091263419085140754457986109185099545783206518992151982845385072492542",
    "0.858937019224667462352614972957441005191955866378556126136833620595031875265070911977372014543010367992926",
    "0.935778720912872773179594507200074356204495282066506730966265807151594341881332516213046317629951560649042",
    "1.0",
];

/// Result of the extended-precision series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedValue {
    pub value: f64,
    /// Bound on the error of the fixed-point sum, before the final rounding
    /// to a double.
    pub error_bound: f64,
    /// Largest term magnitude met along the way.
    pub max_term: f64,
    pub terms: usize,
}

fn tenths(alpha: f64) -> Result<u64, OracleError> {
    let p = (alpha * 10.0).round();
    if !(1.0..=10.0).contains(&p) || (p / 10.0 - alpha).abs() > 1e-12 {
        return Err(OracleError::InvalidOrder(alpha));
    }
    Ok(p as u64)
}

/// Σ z^k / Γ(αk + 1) summed in 100-digit fixed point.
///
/// Supports `α ∈ {0.1, 0.2, …, 1.0}`, where every 1/Γ(αk + 1) reduces to one
/// of ten constants times a rational.
pub fn mittag_leffler_series(alpha: f64, z: f64) -> Result<ExtendedValue, OracleError> {
    let p = tenths(alpha)?;
    if !z.is_finite() {
        return Err(OracleError::Domain(z));
    }
    let inv: Vec<BigInt> = INV_GAMMA_TENTHS.iter().map(|s| from_decimal(s, DIGITS)).collect();
    let (m, e) = decompose(z);
    let s = scale(DIGITS);
    let mut sum = s.clone();
    let mut power = BigInt::from(1);
    let mut products: HashMap<u64, (u64, BigInt)> = HashMap::new();
    let mut max_term = BigInt::zero();
    let mut zero_run = 0;
    let mut k: u64 = 0;
    while zero_run < ZERO_RUN {
        k += 1;
        if k as usize > MAX_TERMS {
            return Err(OracleError::Domain(z));
        }
        power *= &m;
        // Γ(n/10) = Γ(r/10) · Π_{j<q} (r + 10j) / 10^q  with n = r + 10q
        let n = p * k + 10;
        let r = match n % 10 {
            0 => 10,
            v => v,
        };
        let q = (n - r) / 10;
        let entry = products.entry(r).or_insert((0, BigInt::from(1)));
        while entry.0 < q {
            entry.1 *= BigInt::from(r + 10 * entry.0);
            entry.0 += 1;
        }
        let numerator = &inv[(r - 1) as usize] * &power * BigInt::from(10u32).pow(q as u32);
        let shift = e as i64 * k as i64;
        let term = if shift >= 0 {
            (numerator << shift as usize) / &entry.1
        } else {
            numerator / (&entry.1 << (-shift) as usize)
        };
        if term.is_zero() {
            zero_run += 1;
        } else {
            zero_run = 0;
            if term.abs() > max_term {
                max_term = term.abs();
            }
        }
        sum += term;
    }
    let ulp = 10f64.powi(-(DIGITS as i32));
    let max_term_f = 10f64.powf(log10_abs(&max_term) - DIGITS as f64);
    // one truncation per term plus the relative error of the constants
    // amplified by the largest term
    let error_bound = (k as f64 + 1.0) * ulp + 10.0 * max_term_f * ulp;
    Ok(ExtendedValue {
        value: to_f64(&sum, DIGITS),
        error_bound,
        max_term: max_term_f,
        terms: k as usize,
    })
}

/// `E_α(z) ≈ −Σ_{n=1}^{N} z^{−n} / Γ(1 − αn)` for large negative `z`.
pub fn mittag_leffler_asymptotic(alpha: f64, z: f64, terms: usize) -> Result<f64, OracleError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(OracleError::InvalidOrder(alpha));
    }
    if !(z < 0.0) || !z.is_finite() {
        return Err(OracleError::Domain(z));
    }
    let mut sum = 0.0;
    for n in 1..=terms as i32 {
        sum -= z.powi(-n) * rgamma_stirling(1.0 - alpha * n as f64)?;
    }
    Ok(sum)
}
