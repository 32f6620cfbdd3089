//! Bessel functions of the first kind, orders 0, 1 and 2.
//!
//! Three evaluation ranges:
//! - `x ≤ 4`: power series,
//! - `4 < x < 25`: Miller backward recurrence normalised by `J₀ + 2ΣJ₂ₖ = 1`,
//! - `x ≥ 25`: Hankel expansion `√(2/πx)·(P cos χ − Q sin χ)`, `χ = x − νπ/2 − π/4`,
//!   whose leading term is `√(2/πx)·sin(x − νπ/2 + π/4)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::SpecfunError;

const SERIES_MAX: f64 = 4.0;
const HANKEL_MIN: f64 = 25.0;

/// `J_ν(x)` for `ν ∈ {0, 1, 2}` and `x ≥ 0`.
pub fn bessel_j(nu: u32, x: f64) -> Result<f64, SpecfunError> {
    if nu > 2 {
        return Err(SpecfunError::UnsupportedOrder { nu });
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(SpecfunError::Domain {
            function: "bessel_j",
            value: x,
            expected: "finite x >= 0",
        });
    }
    Ok(j012(x)[nu as usize])
}

/// J₀ extended to the whole real line (even function).
pub fn j0(x: f64) -> f64 {
    j_single(0, x.abs())
}

/// J₁ extended to the whole real line (odd function).
pub fn j1(x: f64) -> f64 {
    let v = j_single(1, x.abs());
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// J₂ extended to the whole real line (even function).
pub fn j2(x: f64) -> f64 {
    j_single(2, x.abs())
}

fn j_single(nu: u32, x: f64) -> f64 {
    if x <= SERIES_MAX {
        power_series(nu, x)
    } else if x >= HANKEL_MIN {
        hankel(nu, x)
    } else {
        miller(x)[nu as usize]
    }
}

fn j012(x: f64) -> [f64; 3] {
    if x <= SERIES_MAX {
        [power_series(0, x), power_series(1, x), power_series(2, x)]
    } else if x >= HANKEL_MIN {
        [hankel(0, x), hankel(1, x), hankel(2, x)]
    } else {
        miller(x)
    }
}

fn power_series(nu: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = match nu {
        0 => 1.0,
        1 => half,
        _ => 0.5 * q,
    };
    let mut sum = term;
    let nu = nu as f64;
    for m in 1..60 {
        let m = m as f64;
        term *= -q / (m * (m + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller(x: f64) -> [f64; 3] {
    let start = 2 * (((x + 30.0 + 4.0 * x.sqrt()) as usize) / 2 + 1);
    let mut above = 0.0_f64; // f_{n+1}
    let mut current = 1e-30_f64; // f_n
    let mut norm = 0.0_f64;
    let mut low = [0.0_f64; 3];
    for n in (1..=start).rev() {
        let next = (2.0 * n as f64 / x) * current - above;
        above = current;
        current = next;
        let idx = n - 1;
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * current;
        }
        if idx <= 2 {
            low[idx] = current;
        }
        if current.abs() > 1e250 {
            above *= 1e-250;
            current *= 1e-250;
            norm *= 1e-250;
            for v in &mut low {
                *v *= 1e-250;
            }
        }
    }
    norm += current;
    [low[0] / norm, low[1] / norm, low[2] / norm]
}

fn hankel(nu: u32, x: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= prev || next.abs() < 1e-18 {
            break;
        }
        prev = next.abs();
        term = next;
        // a_k / x^k enters P (even k) or Q (odd k) with alternating signs
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
    }
    let (s, c) = x.sin_cos();
    // cos χ and sin χ for χ = x − (2ν+1)π/4, expanded to avoid rounding in χ
    let (cos_chi, sin_chi) = match nu {
        0 => ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2),
        1 => ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2),
        _ => (-(c + s) * FRAC_1_SQRT_2, (c - s) * FRAC_1_SQRT_2),
    };
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath reference values: (x, J0, J1, J2)
    #[allow(clippy::excessive_precision)]
    const REFERENCE: [(f64, f64, f64, f64); 12] = [
        (0.5, 0.93846980724081290423, 0.24226845767487388638, 0.030604023458682641307),
        (1.0, 0.76519768655796655145, 0.44005058574493351596, 0.11490348493190048047),
        (2.5, -0.048383776468197996327, 0.49709410246427403801, 0.44605905843961722674),
        (3.9, -0.40182601488763990745, -0.027244039620779891184, 0.38785471251800919371),
        (4.1, -0.38866967983585371972, -0.10327325774733857266, 0.33829248093471294821),
        (7.9, 0.19436184484127823969, 0.21917939992175120327, -0.1388733891648855325),
        (12.0, 0.047689310796833536624, -0.22344710449062761237, -0.084930494878604805352),
        (24.9, 0.083245968353015490053, -0.13485569953140886933, -0.094077751447907769332),
        (25.1, 0.10827567149994945198, -0.11463478413442256746, -0.11740991724771220584),
        (50.0, 0.055812327669251815005, -0.097511828125175137661, -0.059712800794258820511),
        (100.0, 0.019985850304223122424, -0.077145352014112158033, -0.021528757344505365585),
        (199.5, -0.039613637334785146078, -0.040371312360519674413, 0.039208912398840086685),
    ];

    #[test]
    fn matches_reference_values() {
        for (x, r0, r1, r2) in REFERENCE {
            for (nu, expected) in [(0, r0), (1, r1), (2, r2)] {
                let got = bessel_j(nu, x).unwrap();
                let rel = ((got - expected) / expected).abs();
                assert!(rel <= 1e-12, "J{nu}({x}) = {got:e}, expected {expected:e}, rel {rel:e}");
            }
        }
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn first_zero_of_j0() {
        // located independently by bisection on the compensated power series
        assert!(bessel_j(0, 2.404_825_557_695_773).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_j(3, 1.0), Err(SpecfunError::UnsupportedOrder { nu: 3 })));
        assert!(matches!(bessel_j(0, -1.0), Err(SpecfunError::Domain { .. })));
        assert!(bessel_j(0, f64::NAN).is_err());
    }

    #[test]
    fn ranges_agree_at_switch_points() {
        for x in [SERIES_MAX, HANKEL_MIN] {
            let m = miller(x);
            for nu in 0..3u32 {
                let other = if x == SERIES_MAX { power_series(nu, x) } else { hankel(nu, x) };
                assert!((m[nu as usize] - other).abs() < 1e-15, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn parity_extensions() {
        assert_eq!(j0(-3.0), j0(3.0));
        assert_eq!(j1(-3.0), -j1(3.0));
        assert_eq!(j2(-3.0), j2(3.0));
    }
}
