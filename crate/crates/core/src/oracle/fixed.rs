//! Decimal fixed-point helpers on top of `BigInt`.

use num_bigint::BigInt;
use num_traits::{Float, Signed, Zero};

/// `10^digits`.
pub(super) fn scale(digits: usize) -> BigInt {
    BigInt::from(10u32).pow(digits as u32)
}

/// Exact binary decomposition `x = mantissa · 2^exponent`.
pub(super) fn decompose(x: f64) -> (BigInt, i32) {
    let (mantissa, exponent, sign) = x.integer_decode();
    (BigInt::from(sign) * BigInt::from(mantissa), exponent as i32)
}

/// Fixed-point integer from a decimal literal `"0.123…"` or `"1.0"`,
/// truncated to `digits` places.
pub(super) fn from_decimal(literal: &str, digits: usize) -> BigInt {
    let (int, frac) = literal.split_once('.').unwrap_or((literal, ""));
    let mut frac: String = frac.chars().take(digits).collect();
    while frac.len() < digits {
        frac.push('0');
    }
    format!("{int}{frac}").parse().expect("decimal literal")
}

/// Correctly rounded `value / 10^digits`.
pub(super) fn to_f64(value: &BigInt, digits: usize) -> f64 {
    let negative = value.is_negative();
    let mut s = value.abs().to_string();
    if s.len() <= digits {
        s = "0".repeat(digits + 1 - s.len()) + &s;
    }
    let split = s.len() - digits;
    let text = format!("{}{}.{}", if negative { "-" } else { "" }, &s[..split], &s[split..]);
    text.parse().expect("formatted decimal")
}

/// `10`-logarithm of `|value|`, or `-inf` at zero.
pub(super) fn log10_abs(value: &BigInt) -> f64 {
    if value.is_zero() {
        return f64::NEG_INFINITY;
    }
    let s = value.abs().to_string();
    let lead: f64 = format!("0.{}", &s[..s.len().min(17)]).parse().unwrap();
    lead.log10() + s.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrips() {
        for x in [0.1, -2.5, 1e-30, 3.0e20, 0.0] {
            let (m, e) = decompose(x);
            let fixed = if e >= 0 { (m << e as usize) * scale(40) } else { (m * scale(40)) >> (-e) as usize };
            assert!((to_f64(&fixed, 40) - x).abs() <= 1e-40 + 1e-16 * x.abs());
        }
        assert_eq!(to_f64(&from_decimal("0.5641895835", 5), 5), 0.56418);
        assert_eq!(to_f64(&from_decimal("1.0", 8), 8), 1.0);
        assert!((log10_abs(&BigInt::from(-2000)) - 2000f64.log10()).abs() < 1e-12);
    }
}
