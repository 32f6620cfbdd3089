use std::f64::consts::PI;

use super::{BasisError, BesselBasis};

/// Gauss-Legendre rule mapped to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Floor on the quadrature order used by [`Quadrature::for_basis`].
pub const MIN_ORDER: usize = 64;

impl Quadrature {
    /// `order`-point Gauss-Legendre rule on `[0, 1]`, exact for polynomials of
    /// degree `2·order − 1`.
    pub fn gauss_legendre(order: usize) -> Result<Self, BasisError> {
        if order == 0 {
            return Err(BasisError::InvalidGrid("quadrature order must be positive".into()));
        }
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // x is in descending order on [-1, 1]; map to ascending on [0, 1]
            nodes[i] = 0.5 * (1.0 - x);
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[n - 1 - i] = 0.5 * w;
        }
        Ok(Self { nodes, weights })
    }

    /// The default rule for a basis: order `max(64, 4K)`.
    pub fn for_basis(basis: &BesselBasis) -> Self {
        Self::gauss_legendre(Self::default_order(basis.size()))
            .expect("order is positive")
    }

    /// `max(64, 4K)`.
    pub fn default_order(modes: usize) -> usize {
        Self::required_order(modes).max(MIN_ORDER)
    }

    /// Smallest order accepted for a basis of `modes` modes.
    pub fn required_order(modes: usize) -> usize {
        4 * modes
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        for order in [1, 2, 5, 64, 160, 320, 400] {
            let q = Quadrature::gauss_legendre(order).unwrap();
            let s: f64 = q.weights().iter().sum();
            assert!((s - 1.0).abs() <= 1e-13, "order {order}: sum {s}");
            assert!(q.weights().iter().all(|&w| w > 0.0));
            assert!(q.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(q.nodes()[0] > 0.0 && q.nodes()[order - 1] < 1.0);
        }
    }

    #[test]
    fn exact_for_polynomials() {
        // degree d ≤ 2·order − 1 integrates exactly: ∫₀¹ x^d = 1/(d+1)
        let q = Quadrature::gauss_legendre(11).unwrap();
        for d in 0..=20 {
            let v = q.integrate(|x| x.powi(d));
            assert!((v - 1.0 / (d as f64 + 1.0)).abs() < 1e-14, "degree {d}");
        }
    }

    #[test]
    fn zero_order_is_rejected() {
        assert!(Quadrature::gauss_legendre(0).is_err());
    }

    #[test]
    fn basis_default_order() {
        let b = BesselBasis::new(10).unwrap();
        assert_eq!(Quadrature::for_basis(&b).order(), 64);
        let b = BesselBasis::new(40).unwrap();
        assert_eq!(Quadrature::for_basis(&b).order(), 160);
    }
}
