use super::BasisError;

/// A function on `[0, 1]` given by its Fourier-Bessel coefficients `c_1..c_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    coeffs: Vec<f64>,
}

impl SpectralField {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, BasisError> {
        if coeffs.is_empty() {
            return Err(BasisError::EmptyField);
        }
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(BasisError::NonFinite { index, value });
        }
        Ok(Self { coeffs })
    }

    pub fn zeros(size: usize) -> Result<Self, BasisError> {
        Self::new(vec![0.0; size])
    }

    /// Single eigenmode: `c_k = 1` for the 1-based index `k`, zero elsewhere.
    pub fn unit(k: usize, size: usize) -> Result<Self, BasisError> {
        if k == 0 || k > size {
            return Err(BasisError::SizeMismatch { field: k, basis: size });
        }
        let mut c = vec![0.0; size];
        c[k - 1] = 1.0;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn basis_size(&self) -> usize {
        self.coeffs.len()
    }

    /// 1-based coefficient access.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k - 1]
    }

    /// First `k` coefficients, zero-padded when the field is shorter.
    pub fn truncated(&self, k: usize) -> Result<Self, BasisError> {
        let mut c: Vec<f64> = self.coeffs.iter().copied().take(k).collect();
        c.resize(k, 0.0);
        Self::new(c)
    }

    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self, BasisError> {
        Self::new(self.coeffs.iter().map(|v| v * factor).collect())
    }

    /// `self - other`, coefficient-wise, over the common prefix padded with zeros.
    pub fn difference(&self, other: &Self) -> Result<Self, BasisError> {
        let n = self.basis_size().max(other.basis_size());
        let a = self.truncated(n)?;
        let b = other.truncated(n)?;
        Self::new(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect())
    }

    /// Relative L² distance `‖self − reference‖ / ‖reference‖`.
    pub fn relative_error(&self, reference: &Self) -> f64 {
        let diff = self.difference(reference).map(|d| d.l2_norm()).unwrap_or(f64::NAN);
        let denom = reference.l2_norm();
        if denom == 0.0 {
            diff
        } else {
            diff / denom
        }
    }
}

/// Samples of a function on strictly increasing nodes in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self, BasisError> {
        if nodes.len() != values.len() {
            return Err(BasisError::InvalidGrid(format!(
                "{} nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        if nodes.is_empty() {
            return Err(BasisError::InvalidGrid("no nodes".into()));
        }
        if let Some(x) = nodes.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(BasisError::InvalidGrid(format!("node {x} outside [0, 1]")));
        }
        if let Some(w) = nodes.windows(2).find(|w| w[0] >= w[1]) {
            return Err(BasisError::InvalidGrid(format!(
                "nodes not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(BasisError::NonFinite { index, value });
        }
        Ok(Self { nodes, values })
    }

    /// `n` uniformly spaced nodes `i/(n−1)` covering `[0, 1]`.
    pub fn uniform_nodes(n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![0.0],
            _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
        }
    }

    pub fn sample<F: Fn(f64) -> f64>(nodes: Vec<f64>, f: F) -> Result<Self, BasisError> {
        let values = nodes.iter().map(|&x| f(x)).collect();
        Self::new(nodes, values)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest absolute pointwise difference; grids must share nodes.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, BasisError> {
        if self.nodes != other.nodes {
            return Err(BasisError::InvalidGrid("grids have different nodes".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    pub(crate) fn with_values(&self, values: Vec<f64>) -> Result<Self, BasisError> {
        Self::new(self.nodes.clone(), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_validation() {
        assert_eq!(SpectralField::new(vec![]), Err(BasisError::EmptyField));
        assert!(matches!(
            SpectralField::new(vec![1.0, f64::NAN]),
            Err(BasisError::NonFinite { index: 1, .. })
        ));
        assert!(SpectralField::unit(0, 3).is_err());
        assert!(SpectralField::unit(4, 3).is_err());
        assert_eq!(SpectralField::unit(2, 3).unwrap().coeffs(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn truncation_pads_with_zeros() {
        let f = SpectralField::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(f.truncated(4).unwrap().coeffs(), &[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(f.truncated(1).unwrap().coeffs(), &[1.0]);
    }

    #[test]
    fn grid_validation() {
        assert!(GridFunction::new(vec![0.0, 0.5], vec![1.0]).is_err());
        assert!(GridFunction::new(vec![0.0, 1.5], vec![1.0, 2.0]).is_err());
        assert!(GridFunction::new(vec![0.5, 0.5], vec![1.0, 2.0]).is_err());
        assert!(GridFunction::new(vec![0.0, 1.0], vec![1.0, f64::INFINITY]).is_err());
        let g = GridFunction::new(GridFunction::uniform_nodes(5), vec![0.0; 5]).unwrap();
        assert_eq!(g.nodes(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
