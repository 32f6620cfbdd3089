use super::{BasisError, BesselBasis, CubicSpline, GridFunction, Quadrature, SpectralField};
use crate::specfun::{j0, j1, j2};

/// Fourier-Bessel coefficients of `f` by quadrature:
/// `c_k = 2/J₁(λ_k)² Σ_i w_i x_i f(x_i) J₀(λ_k x_i)`.
pub fn analyze<F: Fn(f64) -> f64>(
    f: F,
    basis: &BesselBasis,
    quad: &Quadrature,
) -> Result<SpectralField, BasisError> {
    let required = Quadrature::required_order(basis.size());
    if quad.order() < required {
        return Err(BasisError::QuadratureTooCoarse {
            order: quad.order(),
            modes: basis.size(),
            required,
        });
    }
    let weighted: Vec<f64> = quad
        .nodes()
        .iter()
        .zip(quad.weights())
        .enumerate()
        .map(|(i, (&x, &w))| {
            let v = f(x);
            if v.is_finite() {
                Ok(w * x * v)
            } else {
                Err(BasisError::NonFinite { index: i, value: v })
            }
        })
        .collect::<Result<_, _>>()?;
    let coeffs = basis
        .zeros()
        .iter()
        .zip(basis.norms())
        .map(|(&lambda, &norm)| {
            let s: f64 = quad
                .nodes()
                .iter()
                .zip(&weighted)
                .map(|(&x, &wf)| wf * j0(lambda * x))
                .sum();
            2.0 * s / norm
        })
        .collect();
    SpectralField::new(coeffs)
}

/// Analysis of sampled data: the samples are interpolated to the quadrature
/// nodes by a natural cubic spline. The grid must cover `[0, 1]`.
pub fn analyze_grid(
    grid: &GridFunction,
    basis: &BesselBasis,
    quad: &Quadrature,
) -> Result<SpectralField, BasisError> {
    let first = grid.nodes()[0];
    let last = grid.nodes()[grid.len() - 1];
    if first > 1e-9 || last < 1.0 - 1e-9 {
        return Err(BasisError::InvalidGrid(format!(
            "samples span [{first}, {last}] instead of [0, 1]"
        )));
    }
    let spline = CubicSpline::natural(grid)?;
    analyze(|x| spline.eval(x), basis, quad)
}

fn check_size(field: &SpectralField, basis: &BesselBasis) -> Result<(), BasisError> {
    if field.basis_size() > basis.size() {
        return Err(BasisError::SizeMismatch {
            field: field.basis_size(),
            basis: basis.size(),
        });
    }
    Ok(())
}

fn series<G: Fn(f64, f64) -> f64>(
    field: &SpectralField,
    basis: &BesselBasis,
    x: &[f64],
    mode: G,
) -> Result<GridFunction, BasisError> {
    check_size(field, basis)?;
    let values = x
        .iter()
        .map(|&xi| {
            field
                .coeffs()
                .iter()
                .zip(basis.zeros())
                .fold(0.0, |acc, (&c, &lambda)| acc + c * mode(lambda, xi))
        })
        .collect();
    GridFunction::new(x.to_vec(), values)
}

/// Partial sum `Σ_k c_k J₀(λ_k x)` at each node, modes summed in ascending order.
pub fn synthesize(
    field: &SpectralField,
    basis: &BesselBasis,
    x: &[f64],
) -> Result<GridFunction, BasisError> {
    series(field, basis, x, |lambda, xi| j0(lambda * xi))
}

/// `Σ_k c_k · (−λ_k J₁(λ_k x))`, using `J₀' = −J₁`.
pub fn synthesize_first_derivative(
    field: &SpectralField,
    basis: &BesselBasis,
    x: &[f64],
) -> Result<GridFunction, BasisError> {
    series(field, basis, x, |lambda, xi| -lambda * j1(lambda * xi))
}

/// `Σ_k c_k · (λ_k²/2)·[J₂(λ_k x) − J₀(λ_k x)]`, the second derivative series
/// rewritten through `2J₁' = J₀ − J₂`. Regular at `x = 0`.
pub fn synthesize_second_derivative(
    field: &SpectralField,
    basis: &BesselBasis,
    x: &[f64],
) -> Result<GridFunction, BasisError> {
    series(field, basis, x, |lambda, xi| {
        let y = lambda * xi;
        0.5 * lambda * lambda * (j2(y) - j0(y))
    })
}

const DECAY_MIN_MODES: usize = 10;
const DECAY_FLOOR: f64 = 1e-15;

/// Least-squares slope of `log|c_k|` against `log λ_k` over the upper half
/// of the modes. Coefficients below `1e-15` are left out of the fit.
pub fn decay_exponent(field: &SpectralField, basis: &BesselBasis) -> Result<f64, BasisError> {
    check_size(field, basis)?;
    let nonzero = field.coeffs().iter().filter(|c| **c != 0.0).count();
    if nonzero < DECAY_MIN_MODES {
        return Err(BasisError::TooFewModes { required: DECAY_MIN_MODES, found: nonzero });
    }
    let k = field.basis_size();
    let points: Vec<(f64, f64)> = (k / 2..k)
        .map(|i| (basis.zeros()[i], field.coeffs()[i].abs()))
        .filter(|&(_, c)| c >= DECAY_FLOOR)
        .map(|(l, c)| (l.ln(), c.ln()))
        .collect();
    if points.len() < 2 {
        return Err(BasisError::MachinePrecisionDecay { threshold: DECAY_FLOOR });
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

/// `‖S_{K_{i+1}} − S_{K_i}‖_∞` on `x` for consecutive truncations in `ks`,
/// where `S_K` is the partial sum produced by `synth` from the first `K`
/// coefficients.
pub fn partial_sum_differences<S>(
    field: &SpectralField,
    basis: &BesselBasis,
    ks: &[usize],
    x: &[f64],
    synth: S,
) -> Result<Vec<f64>, BasisError>
where
    S: Fn(&SpectralField, &BesselBasis, &[f64]) -> Result<GridFunction, BasisError>,
{
    let sums = ks
        .iter()
        .map(|&k| synth(&field.truncated(k)?, basis, x))
        .collect::<Result<Vec<_>, _>>()?;
    sums.windows(2).map(|w| w[1].max_abs_diff(&w[0])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly43(x: f64) -> f64 {
        x.powi(4) * (1.0 - x).powi(3)
    }

    #[test]
    fn zero_function_has_zero_coefficients() {
        let b = BesselBasis::new(20).unwrap();
        let q = Quadrature::for_basis(&b);
        let c = analyze(|_| 0.0, &b, &q).unwrap();
        assert!(c.coeffs().iter().all(|&v| v == 0.0));
        let s = synthesize(&c, &b, &GridFunction::uniform_nodes(11)).unwrap();
        assert!(s.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_eigenmode_is_a_kronecker_delta() {
        let b = BesselBasis::new(20).unwrap();
        let q = Quadrature::for_basis(&b);
        let l2 = b.lambda(2);
        let c = analyze(|x| j0(l2 * x), &b, &q).unwrap();
        for (i, &v) in c.coeffs().iter().enumerate() {
            let expected = if i == 1 { 1.0 } else { 0.0 };
            assert!((v - expected).abs() <= 1e-9, "c_{} = {v:e}", i + 1);
        }
    }

    #[test]
    fn coarse_quadrature_is_rejected() {
        let b = BesselBasis::new(20).unwrap();
        let q = Quadrature::gauss_legendre(79).unwrap();
        assert!(matches!(
            analyze(poly43, &b, &q),
            Err(BasisError::QuadratureTooCoarse { required: 80, .. })
        ));
    }

    #[test]
    fn unit_mode_synthesizes_to_one_at_origin() {
        let b = BesselBasis::new(5).unwrap();
        let e1 = SpectralField::unit(1, 5).unwrap();
        let s = synthesize(&e1, &b, &[0.0]).unwrap();
        assert_eq!(s.values()[0], 1.0);
    }

    #[test]
    fn oversized_field_is_rejected() {
        let b = BesselBasis::new(3).unwrap();
        let f = SpectralField::zeros(4).unwrap();
        assert!(matches!(synthesize(&f, &b, &[0.5]), Err(BasisError::SizeMismatch { .. })));
    }

    #[test]
    fn reconstruction_of_smooth_polynomial() {
        let b = BesselBasis::new(40).unwrap();
        let q = Quadrature::for_basis(&b);
        let c = analyze(poly43, &b, &q).unwrap();
        let nodes = GridFunction::uniform_nodes(101);
        let s = synthesize(&c, &b, &nodes).unwrap();
        let err = nodes.iter().zip(s.values()).fold(0.0_f64, |m, (&x, &v)| m.max((v - poly43(x)).abs()));
        assert!(err < 1e-4, "{err:e}");
    }

    #[test]
    fn second_derivative_of_zero_field() {
        let b = BesselBasis::new(5).unwrap();
        let z = SpectralField::zeros(5).unwrap();
        let d = synthesize_second_derivative(&z, &b, &[0.0, 0.5, 1.0]).unwrap();
        assert!(d.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        let b = BesselBasis::new(3).unwrap();
        let e1 = SpectralField::unit(1, 3).unwrap();
        let h = 1e-4;
        let s = synthesize(&e1, &b, &[0.5 - h, 0.5, 0.5 + h]).unwrap();
        let v = s.values();
        let fd = (v[0] - 2.0 * v[1] + v[2]) / (h * h);
        let d = synthesize_second_derivative(&e1, &b, &[0.5]).unwrap();
        assert!((d.values()[0] - fd).abs() <= 1e-6, "{} vs {fd}", d.values()[0]);
    }

    #[test]
    fn eigenfunction_identity_of_the_bessel_operator() {
        let b = BesselBasis::new(6).unwrap();
        let x = [0.25, 0.5, 0.75];
        for k in 1..=6 {
            let e = SpectralField::unit(k, 6).unwrap();
            let u = synthesize(&e, &b, &x).unwrap();
            let d1 = synthesize_first_derivative(&e, &b, &x).unwrap();
            let d2 = synthesize_second_derivative(&e, &b, &x).unwrap();
            let l2 = b.lambda(k).powi(2);
            for i in 0..3 {
                let lhs = d2.values()[i] + d1.values()[i] / x[i];
                assert!((lhs + l2 * u.values()[i]).abs() <= 1e-8, "k={k} x={}", x[i]);
            }
        }
    }

    #[test]
    fn constructed_decay_is_recovered() {
        let b = BesselBasis::new(40).unwrap();
        let f = SpectralField::new(b.zeros().iter().map(|l| 1.0 / (l * l)).collect()).unwrap();
        let slope = decay_exponent(&f, &b).unwrap();
        assert!((slope + 2.0).abs() <= 0.05, "{slope}");
    }

    #[test]
    fn decay_fit_error_paths() {
        let b = BesselBasis::new(20).unwrap();
        let mut c = vec![0.0; 20];
        c[..9].fill(1.0);
        let few = SpectralField::new(c.clone()).unwrap();
        assert!(matches!(decay_exponent(&few, &b), Err(BasisError::TooFewModes { found: 9, .. })));
        c[..10].fill(1.0);
        let flat = SpectralField::new(c).unwrap();
        assert!(matches!(decay_exponent(&flat, &b), Err(BasisError::MachinePrecisionDecay { .. })));
    }

    #[test]
    fn grid_analysis_requires_full_coverage() {
        let b = BesselBasis::new(4).unwrap();
        let q = Quadrature::for_basis(&b);
        let g = GridFunction::sample(vec![0.1, 0.5, 1.0], poly43).unwrap();
        assert!(matches!(analyze_grid(&g, &b, &q), Err(BasisError::InvalidGrid(_))));
    }

    #[test]
    fn grid_analysis_approximates_callable_analysis() {
        let b = BesselBasis::new(10).unwrap();
        let q = Quadrature::for_basis(&b);
        let g = GridFunction::sample(GridFunction::uniform_nodes(401), poly43).unwrap();
        let from_grid = analyze_grid(&g, &b, &q).unwrap();
        let exact = analyze(poly43, &b, &q).unwrap();
        assert!(from_grid.difference(&exact).unwrap().sup_norm() < 1e-8);
    }
}
