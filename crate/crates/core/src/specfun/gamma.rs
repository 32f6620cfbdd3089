use std::f64::consts::PI;

use super::SpecfunError;

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

fn lanczos_sum(x: f64) -> f64 {
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// `sin(π s)` with argument reduction done before multiplying by π, so that
/// integer `s` gives an exact zero.
pub fn sin_pi(s: f64) -> f64 {
    if !s.is_finite() {
        return f64::NAN;
    }
    let mut r = s % 2.0;
    if r < 0.0 {
        r += 2.0;
    }
    // r in [0, 2)
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let v = if r == 0.0 || r == 1.0 {
        0.0
    } else if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

/// Gamma function Γ(x).
///
/// Uses the reflection formula for `x < 1/2`. Returns `+inf` once the result
/// overflows (x ≳ 171.6).
pub fn gamma(x: f64) -> Result<f64, SpecfunError> {
    if x.is_nan() {
        return Err(SpecfunError::Domain {
            function: "gamma",
            value: x,
            expected: "finite argument",
        });
    }
    if x <= 0.0 && x == x.floor() {
        return Err(SpecfunError::Pole(x));
    }
    if x < 0.5 {
        let g = gamma(1.0 - x)?;
        return Ok(PI / (sin_pi(x) * g));
    }
    if x > 171.7 {
        return Ok(f64::INFINITY);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // split the power to keep t^(z+1/2) from overflowing before e^-t is applied
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * ((-t).exp() * half) * lanczos_sum(z))
}

/// Natural log of Γ(x) for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64, SpecfunError> {
    if !(x > 0.0) {
        return Err(SpecfunError::Domain {
            function: "ln_gamma",
            value: x,
            expected: "x > 0",
        });
    }
    if x < 0.5 {
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}
