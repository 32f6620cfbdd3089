use super::OracleError;

pub const SIMPSON_MAX_DEPTH: usize = 50;

// Initial uniform split; keeps oscillatory integrands from fooling the first
// error estimate.
const INITIAL_PANELS: usize = 16;

struct Walk<'f, F> {
    f: &'f F,
    hit_depth: bool,
}

impl<F: Fn(f64) -> f64> Walk<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: usize) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        if depth >= SIMPSON_MAX_DEPTH {
            self.hit_depth = true;
            return left + right + delta / 15.0;
        }
        self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
            + self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with Richardson
/// correction, aiming for absolute error `tol`.
pub fn adaptive_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, OracleError> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(OracleError::InvalidInterval(format!("need finite a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(OracleError::InvalidInterval(format!("tolerance must be positive, got {tol}")));
    }
    let mut walk = Walk { f: &f, hit_depth: false };
    let h = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = tol / INITIAL_PANELS as f64;
    let mut total = 0.0;
    for i in 0..INITIAL_PANELS {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == INITIAL_PANELS { b } else { a + (i + 1) as f64 * h };
        let (flo, fmid, fhi) = (f(lo), f(0.5 * (lo + hi)), f(hi));
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += walk.refine(lo, hi, flo, fmid, fhi, whole, panel_tol, 0);
    }
    if walk.hit_depth {
        return Err(OracleError::MaxDepth { estimate: total, depth: SIMPSON_MAX_DEPTH });
    }
    Ok(total)
}
