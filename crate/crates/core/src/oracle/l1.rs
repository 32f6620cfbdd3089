//! L1 discretisation of the Caputo derivative on a uniform grid.
//!
//! On `t_n = nΔt`,
//! `ᶜD^α u(t_n) ≈ μ Σ_{j=0}^{n−1} b_j (u_{n−j} − u_{n−j−1})` with
//! `b_j = (j+1)^{1−α} − j^{1−α}` and `μ = Δt^{−α} / Γ(2−α)`.

use super::gamma::gamma_stirling;
use super::OracleError;

#[derive(Debug, Clone, PartialEq)]
pub struct L1Scheme {
    alpha: f64,
    dt: f64,
    steps: usize,
    weights: Vec<f64>,
    mu: f64,
}

impl L1Scheme {
    pub fn new(alpha: f64, dt: f64, steps: usize) -> Result<Self, OracleError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(OracleError::InvalidOrder(alpha));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(OracleError::DegenerateGrid(format!("time step {dt}")));
        }
        if steps < 2 {
            return Err(OracleError::DegenerateGrid(format!("{steps} steps, need at least 2")));
        }
        let e = 1.0 - alpha;
        let weights = (0..=steps)
            .map(|j| ((j + 1) as f64).powf(e) - (j as f64).powf(e))
            .collect();
        let mu = dt.powf(-alpha) / gamma_stirling(2.0 - alpha)?;
        Ok(Self { alpha, dt, steps, weights, mu })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn horizon(&self) -> f64 {
        self.steps as f64 * self.dt
    }

    /// `b_0, …, b_N`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Δt^{−α} / Γ(2−α)`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    fn history(&self, diffs: &[f64], n: usize) -> f64 {
        // Σ_{j=1}^{n−1} b_j d_{n−j}, where d_i = u_i − u_{i−1}
        (1..n).map(|j| self.weights[j] * diffs[n - j]).sum()
    }

    /// Caputo derivative at every grid point. The value at `t = 0` is 0.
    pub fn derivative(&self, samples: &[f64]) -> Result<Vec<f64>, OracleError> {
        if samples.len() != self.steps + 1 {
            return Err(OracleError::DegenerateGrid(format!(
                "{} samples for {} steps",
                samples.len(),
                self.steps
            )));
        }
        let mut diffs = vec![0.0; samples.len()];
        for i in 1..samples.len() {
            diffs[i] = samples[i] - samples[i - 1];
        }
        Ok((0..samples.len())
            .map(|n| {
                if n == 0 {
                    0.0
                } else {
                    self.mu * (self.weights[0] * diffs[n] + self.history(&diffs, n))
                }
            })
            .collect())
    }
}

/// L1 Caputo derivative of samples `f(0), f(Δt), …, f(NΔt)`.
pub fn caputo_l1(samples: &[f64], alpha: f64, dt: f64) -> Result<Vec<f64>, OracleError> {
    if samples.len() < 3 {
        return Err(OracleError::DegenerateGrid(format!(
            "{} samples, need at least 3",
            samples.len()
        )));
    }
    L1Scheme::new(alpha, dt, samples.len() - 1)?.derivative(samples)
}

/// Samples of one mode marched by the implicit L1 scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct SteppedMode {
    pub dt: f64,
    /// `u(0), u(Δt), …, u(NΔt)`.
    pub samples: Vec<f64>,
    /// Set when some step more than doubled the magnitude.
    pub unstable: bool,
}

impl SteppedMode {
    pub fn last(&self) -> f64 {
        *self.samples.last().expect("at least one sample")
    }
}

/// Marches `ᶜD^α u + λ² u = h`, `u(0) = g` with the implicit L1 scheme.
pub fn l1_time_stepper(
    g: f64,
    h: Option<f64>,
    alpha: f64,
    lambda: f64,
    dt: f64,
    steps: usize,
) -> Result<SteppedMode, OracleError> {
    let scheme = L1Scheme::new(alpha, dt, steps)?;
    let h = h.unwrap_or(0.0);
    let mu = scheme.mu();
    let denom = mu + lambda * lambda;
    let floor = h.abs() / denom;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut diffs = vec![0.0; steps + 1];
    samples.push(g);
    let mut unstable = false;
    for n in 1..=steps {
        let prev = samples[n - 1];
        let u = (mu * prev - mu * scheme.history(&diffs, n) + h) / denom;
        if u.abs() > 2.0 * prev.abs().max(floor) {
            unstable = true;
        }
        diffs[n] = u - prev;
        samples.push(u);
    }
    Ok(SteppedMode { dt, samples, unstable })
}
