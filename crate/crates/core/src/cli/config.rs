use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::basis::Quadrature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    /// u(·, T) from g
    Forward,
    /// u(·, T) from g and a source h
    ForwardSource,
    /// g from f = u(·, T)
    InvertInitial,
    /// h from g and f = u(·, T)
    InvertSource,
    /// amplification factors and, with --sweep-k, a convergence table
    Diagnostics,
}

impl ProblemKind {
    /// Role filled by `--func`.
    pub fn primary_role(self) -> Role {
        match self {
            Self::InvertInitial | Self::InvertSource => Role::F,
            _ => Role::G,
        }
    }

    pub fn required_roles(self) -> &'static [Role] {
        match self {
            Self::Forward => &[Role::G],
            Self::ForwardSource => &[Role::G, Role::H],
            Self::InvertInitial => &[Role::F],
            Self::InvertSource => &[Role::G, Role::F],
            Self::Diagnostics => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    G,
    F,
    H,
}

impl Role {
    pub fn flag(self) -> &'static str {
        match self {
            Role::G => "--in-g",
            Role::F => "--in-f",
            Role::H => "--in-h",
        }
    }
}

/// Input sources as given on the command line: a file path (`.json`
/// coefficients or `.csv` samples) or `func:<name>`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub g: Option<String>,
    pub f: Option<String>,
    pub h: Option<String>,
}

impl Inputs {
    pub fn get(&self, role: Role) -> Option<&str> {
        match role {
            Role::G => self.g.as_deref(),
            Role::F => self.f.as_deref(),
            Role::H => self.h.as_deref(),
        }
    }

    fn slot(&mut self, role: Role) -> &mut Option<String> {
        match role {
            Role::G => &mut self.g,
            Role::F => &mut self.f,
            Role::H => &mut self.h,
        }
    }
}

/// Everything that determines a run's outputs. Echoed into every report;
/// the output directory is deliberately not part of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub alpha: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    #[serde(rename = "K")]
    pub modes: usize,
    #[serde(rename = "Q")]
    pub quad_order: usize,
    pub grid: usize,
    pub noise: f64,
    pub seed: u64,
    pub inputs: Inputs,
    pub cutoff: Option<f64>,
    pub sweep_k: Option<Vec<usize>>,
}

pub const DEFAULT_GRID: usize = 101;

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |field: &str, msg: String| Err(CliError::Config(format!("{field}: {msg}")));
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("--alpha", format!("must satisfy 0 < alpha < 1, got {}", self.alpha));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return bad("--T", format!("must be positive and finite, got {}", self.horizon));
        }
        if self.modes < 1 {
            return bad("--K", "must be at least 1".into());
        }
        let largest = self.largest_k();
        let required = Quadrature::required_order(largest);
        if self.quad_order < required {
            return bad(
                "--quad-order",
                format!("{} is below 4K = {required}", self.quad_order),
            );
        }
        if self.grid < 2 {
            return bad("--grid", format!("need at least 2 nodes, got {}", self.grid));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return bad("--noise", format!("must be finite and non-negative, got {}", self.noise));
        }
        if let Some(c) = self.cutoff {
            if !(c > 0.0) {
                return bad("--cutoff", format!("must be positive, got {c}"));
            }
        }
        if let Some(ks) = &self.sweep_k {
            if ks.len() < 2 || ks[0] == 0 || ks.windows(2).any(|w| w[0] >= w[1]) {
                return bad("--sweep-k", "need at least two strictly increasing positive values".into());
            }
            if self.problem == ProblemKind::Diagnostics && self.inputs.g.is_none() {
                return bad("--in-g", "diagnostics sweep needs an input (--in-g or --func)".into());
            }
        }
        for &role in self.problem.required_roles() {
            if self.inputs.get(role).is_none() {
                return bad(role.flag(), format!("required by {:?} problem", self.problem));
            }
        }
        Ok(())
    }

    /// Basis size large enough for both the run and any sweep.
    pub fn largest_k(&self) -> usize {
        self.sweep_k
            .as_ref()
            .and_then(|ks| ks.last().copied())
            .map_or(self.modes, |k| k.max(self.modes))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fracbessel",
    version,
    about = "Forward and inverse solves for the time-fractional diffusion equation with Bessel operator"
)]
pub struct Args {
    #[arg(long, value_enum, conflicts_with = "config")]
    pub problem: Option<ProblemKind>,

    /// Caputo order, 0 < alpha < 1
    #[arg(long, allow_negative_numbers = true, conflicts_with = "config")]
    pub alpha: Option<f64>,

    /// Final time
    #[arg(long = "T", allow_negative_numbers = true, conflicts_with = "config")]
    pub horizon: Option<f64>,

    /// Number of Fourier-Bessel modes
    #[arg(long = "K", conflicts_with = "config")]
    pub modes: Option<usize>,

    /// Gauss-Legendre order, at least 4K (default max(64, 4K))
    #[arg(long, conflicts_with = "config")]
    pub quad_order: Option<usize>,

    /// Number of uniform output nodes on [0, 1]
    #[arg(long, conflicts_with = "config")]
    pub grid: Option<usize>,

    /// Relative noise level added to the data
    #[arg(long, allow_negative_numbers = true, conflicts_with = "config")]
    pub noise: Option<f64>,

    #[arg(long, conflicts_with = "config")]
    pub seed: Option<u64>,

    /// Initial state: path to .json coefficients, .csv samples, or func:<name>
    #[arg(long, conflicts_with = "config")]
    pub in_g: Option<String>,

    /// Final observation u(·, T)
    #[arg(long, conflicts_with = "config")]
    pub in_f: Option<String>,

    /// Source term
    #[arg(long, conflicts_with = "config")]
    pub in_h: Option<String>,

    /// Built-in function for the problem's primary input
    /// (poly43, poly44, poly21, mode:<k>, zero)
    #[arg(long, conflicts_with = "config")]
    pub func: Option<String>,

    /// Drop modes whose amplification exceeds this value
    #[arg(long, conflicts_with = "config")]
    pub cutoff: Option<f64>,

    /// Strictly increasing truncations for a convergence table
    #[arg(long, value_delimiter = ',', conflicts_with = "config")]
    pub sweep_k: Option<Vec<usize>>,

    /// Rerun the config echoed in a report file
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

impl Args {
    /// Builds the run configuration from flags. File inputs are recorded as
    /// absolute paths so a report's echo works from any directory.
    pub fn to_config(&self) -> Result<RunConfig, CliError> {
        let missing = |flag: &str| CliError::Config(format!("{flag}: required"));
        let problem = self.problem.ok_or_else(|| missing("--problem"))?;
        let alpha = self.alpha.ok_or_else(|| missing("--alpha"))?;
        let horizon = self.horizon.ok_or_else(|| missing("--T"))?;
        let modes = self.modes.ok_or_else(|| missing("--K"))?;
        let mut inputs = Inputs {
            g: self.in_g.clone(),
            f: self.in_f.clone(),
            h: self.in_h.clone(),
        };
        if let Some(name) = &self.func {
            let slot = inputs.slot(problem.primary_role());
            if slot.is_some() {
                return Err(CliError::Config(format!(
                    "--func: conflicts with {}",
                    problem.primary_role().flag()
                )));
            }
            *slot = Some(format!("func:{name}"));
        }
        for role in [Role::G, Role::F, Role::H] {
            if let Some(given) = inputs.slot(role).as_mut() {
                if !given.starts_with("func:") {
                    *given = absolute(given);
                }
            }
        }
        let largest = self
            .sweep_k
            .as_ref()
            .and_then(|ks| ks.iter().copied().max())
            .map_or(modes, |k| k.max(modes));
        let config = RunConfig {
            problem,
            alpha,
            horizon,
            modes,
            quad_order: self
                .quad_order
                .unwrap_or_else(|| Quadrature::default_order(largest)),
            grid: self.grid.unwrap_or(DEFAULT_GRID),
            noise: self.noise.unwrap_or(0.0),
            seed: self.seed.unwrap_or(0),
            inputs,
            cutoff: self.cutoff,
            sweep_k: self.sweep_k.clone(),
        };
        config.validate()?;
        Ok(config)
    }
}

fn absolute(path: &str) -> String {
    std::path::absolute(path)
        .map(|p| p.to_string_lossy().into_owned())
        .unwrap_or_else(|_| path.to_string())
}
