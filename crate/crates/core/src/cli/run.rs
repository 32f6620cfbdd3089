use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use super::config::{ProblemKind, Role, RunConfig};
use super::input::{load, CoefficientRecord};
use super::CliError;
use crate::basis::{
    partial_sum_differences, synthesize, synthesize_second_derivative, BesselBasis, GridFunction,
    Quadrature, SpectralField,
};
use crate::forward::{ForwardSolver, ModeTrajectory};
use crate::inverse::{
    add_noise, amplification_profile, invert_initial_with, invert_source_with, InverseError,
    InverseOptions, Problem, OVERFLOW_LIMIT, RESIDUAL_NODES,
};
use crate::specfun::FracOrder;

pub const VALUES_FILE: &str = "values.csv";
pub const COEFFICIENTS_FILE: &str = "coefficients.json";
pub const REPORT_FILE: &str = "report.json";
pub const AMPLIFICATION_FILE: &str = "amplification.csv";
pub const CONVERGENCE_FILE: &str = "convergence.csv";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Amplification {
    pub initial: Vec<f64>,
    pub source: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportTolerances {
    pub overflow_limit: f64,
    pub residual_nodes: usize,
    pub min_quad_order: usize,
    pub cutoff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    #[serde(rename = "K")]
    pub modes: usize,
    #[serde(rename = "Q")]
    pub quad_order: usize,
    /// `‖u(·,T) − f‖_∞` after re-simulating an inversion.
    pub residual: Option<f64>,
    /// Relative L² coefficient error against a supplied true solution.
    pub reference_error: Option<f64>,
    pub dropped_modes: Vec<usize>,
    pub amplification: Amplification,
    pub tolerances: ReportTolerances,
    pub outputs: Vec<String>,
}

/// One row of a convergence table: sup-norm changes between the partial
/// sums at the previous and the current truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub k: usize,
    pub delta_u: f64,
    pub delta_unknown: f64,
    pub delta_uxx: f64,
}

/// Files produced by a run, held in memory until everything has succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub report: Report,
    pub files: Vec<(String, String)>,
}

impl RunOutput {
    pub fn write(&self, out_dir: &Path) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", out_dir.display()));
        fs::create_dir_all(out_dir).map_err(io)?;
        for (name, contents) in &self.files {
            fs::write(out_dir.join(name), contents).map_err(io)?;
        }
        Ok(())
    }
}

fn numerical(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

fn from_inverse(e: InverseError) -> CliError {
    match e {
        InverseError::IllPosed { .. } => CliError::IllPosed(e.to_string()),
        other => numerical(other),
    }
}

pub fn values_csv(grid: &GridFunction) -> String {
    let mut s = String::from("x,value\n");
    for (x, v) in grid.nodes().iter().zip(grid.values()) {
        writeln!(s, "{x:.16e},{v:.16e}").expect("write to string");
    }
    s
}

pub fn coefficients_json(field: &SpectralField, basis: &BesselBasis) -> Result<String, CliError> {
    let records: Vec<CoefficientRecord> = field
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| CoefficientRecord { k: i + 1, lambda_k: basis.zeros()[i], coeff: c })
        .collect();
    serde_json::to_string_pretty(&records).map_err(numerical)
}

fn amplification_csv(basis: &BesselBasis, amp: &Amplification) -> String {
    let mut s = String::from("k,lambda_k,initial,source\n");
    for (i, l) in basis.zeros().iter().enumerate() {
        writeln!(s, "{},{l:.16e},{:.16e},{:.16e}", i + 1, amp.initial[i], amp.source[i])
            .expect("write to string");
    }
    s
}

fn convergence_csv(unknown: &str, rows: &[SweepRow]) -> String {
    let mut s = format!("K,delta_u,delta_{unknown},delta_uxx\n");
    for r in rows {
        writeln!(s, "{},{:.16e},{:.16e},{:.16e}", r.k, r.delta_u, r.delta_unknown, r.delta_uxx)
            .expect("write to string");
    }
    s
}

struct Setup {
    frac: FracOrder,
    basis: BesselBasis,
    quad: Quadrature,
}

impl Setup {
    fn new(config: &RunConfig, modes: usize) -> Result<Self, CliError> {
        let frac = FracOrder::new(config.alpha, config.horizon).map_err(|e| CliError::Config(e.to_string()))?;
        let basis = BesselBasis::new(modes).map_err(numerical)?;
        let quad = Quadrature::gauss_legendre(config.quad_order).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Self { frac, basis, quad })
    }

    fn input(&self, config: &RunConfig, role: Role) -> Result<Option<SpectralField>, CliError> {
        config
            .inputs
            .get(role)
            .map(|given| load(given, role.flag(), &self.basis, &self.quad))
            .transpose()
    }

    fn required(&self, config: &RunConfig, role: Role) -> Result<SpectralField, CliError> {
        self.input(config, role)?
            .ok_or_else(|| CliError::Config(format!("{}: required", role.flag())))
    }

    fn noisy(&self, config: &RunConfig, field: SpectralField) -> Result<SpectralField, CliError> {
        add_noise(&field, config.noise, config.seed).map_err(numerical)
    }
}

/// What a problem solves for, as mode trajectories plus the recovered field.
struct Solved {
    trajectories: Vec<ModeTrajectory>,
    /// Field written to the output files.
    primary: SpectralField,
    /// Name of the recovered quantity in the convergence table.
    unknown: &'static str,
    unknown_field: SpectralField,
    residual: Option<f64>,
    reference_error: Option<f64>,
    dropped: Vec<usize>,
}

fn solve(config: &RunConfig, setup: &Setup) -> Result<Solved, CliError> {
    let solver = ForwardSolver::new(&setup.basis, setup.frac);
    let options = InverseOptions { cutoff: config.cutoff };
    let horizon = config.horizon;
    Ok(match config.problem {
        ProblemKind::Forward | ProblemKind::ForwardSource | ProblemKind::Diagnostics => {
            let g = setup.noisy(config, setup.required(config, Role::G)?)?;
            let h = match config.problem {
                ProblemKind::ForwardSource => Some(setup.required(config, Role::H)?),
                _ => None,
            };
            let trajectories = solver.trajectories(&g, h.as_ref()).map_err(numerical)?;
            let u = solver.coefficients_at(&trajectories, horizon).map_err(numerical)?;
            Solved {
                trajectories,
                primary: u,
                unknown: "g",
                unknown_field: g,
                residual: None,
                reference_error: None,
                dropped: Vec::new(),
            }
        }
        ProblemKind::InvertInitial => {
            let f = setup.noisy(config, setup.required(config, Role::F)?)?;
            let report = invert_initial_with(&f, setup.frac, &setup.basis, &options).map_err(from_inverse)?;
            let reference_error = setup
                .input(config, Role::G)?
                .map(|g| report.recovered.relative_error(&g));
            Solved {
                primary: report.recovered.clone(),
                unknown: "g",
                unknown_field: report.recovered,
                trajectories: report.trajectories,
                residual: Some(report.residual),
                reference_error,
                dropped: report.dropped_modes,
            }
        }
        ProblemKind::InvertSource => {
            let g = setup.required(config, Role::G)?;
            let f = setup.noisy(config, setup.required(config, Role::F)?)?;
            let report = invert_source_with(&g, &f, setup.frac, &setup.basis, &options).map_err(from_inverse)?;
            let reference_error = setup
                .input(config, Role::H)?
                .map(|h| report.recovered.relative_error(&h));
            Solved {
                primary: report.recovered.clone(),
                unknown: "h",
                unknown_field: report.recovered,
                trajectories: report.trajectories,
                residual: Some(report.residual),
                reference_error,
                dropped: report.dropped_modes,
            }
        }
    })
}

/// Sup-norm differences between consecutive partial sums for the solution at
/// `T/2`, the recovered (or given) field, and the second derivative of the
/// solution at `T/2`.
pub fn convergence_sweep(config: &RunConfig, ks: &[usize]) -> Result<(String, Vec<SweepRow>), CliError> {
    let mut config = config.clone();
    config.sweep_k = Some(ks.to_vec());
    config.validate()?;
    let setup = Setup::new(&config, config.largest_k())?;
    let solved = solve(&config, &setup)?;
    sweep_rows(&config, &setup, &solved, ks).map(|rows| (solved.unknown.to_string(), rows))
}

fn sweep_rows(config: &RunConfig, setup: &Setup, solved: &Solved, ks: &[usize]) -> Result<Vec<SweepRow>, CliError> {
    let solver = ForwardSolver::new(&setup.basis, setup.frac);
    let mid = solver
        .coefficients_at(&solved.trajectories, 0.5 * config.horizon)
        .map_err(numerical)?;
    let x = GridFunction::uniform_nodes(config.grid);
    let du = partial_sum_differences(&mid, &setup.basis, ks, &x, synthesize).map_err(numerical)?;
    let dk = partial_sum_differences(&solved.unknown_field, &setup.basis, ks, &x, synthesize)
        .map_err(numerical)?;
    let dxx = partial_sum_differences(&mid, &setup.basis, ks, &x, synthesize_second_derivative)
        .map_err(numerical)?;
    Ok(ks[1..]
        .iter()
        .enumerate()
        .map(|(i, &k)| SweepRow { k, delta_u: du[i], delta_unknown: dk[i], delta_uxx: dxx[i] })
        .collect())
}

/// Runs a validated configuration and renders every output file in memory.
pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    config.validate()?;
    // diagnostics without an input only reports amplification factors
    let has_input = config.problem != ProblemKind::Diagnostics || config.inputs.g.is_some();
    let sweep = match &config.sweep_k {
        Some(ks) => {
            let setup = Setup::new(config, config.largest_k())?;
            let solved = solve(config, &setup)?;
            Some((solved.unknown, sweep_rows(config, &setup, &solved, ks)?))
        }
        None => None,
    };

    let setup = Setup::new(config, config.modes)?;
    let solved = if has_input { Some(solve(config, &setup)?) } else { None };
    let basis = &setup.basis;
    let amplification = Amplification {
        initial: amplification_profile(setup.frac, basis, Problem::Initial).map_err(from_inverse)?,
        source: amplification_profile(setup.frac, basis, Problem::Source).map_err(from_inverse)?,
    };

    let mut files = Vec::new();
    match (&solved, config.problem) {
        (_, ProblemKind::Diagnostics) => {
            files.push((AMPLIFICATION_FILE.to_string(), amplification_csv(basis, &amplification)));
        }
        (Some(solved), _) => {
            let grid = synthesize(&solved.primary, basis, &GridFunction::uniform_nodes(config.grid))
                .map_err(numerical)?;
            files.push((VALUES_FILE.to_string(), values_csv(&grid)));
            files.push((COEFFICIENTS_FILE.to_string(), coefficients_json(&solved.primary, basis)?));
        }
        (None, _) => unreachable!("only diagnostics runs without input"),
    }
    if let Some((unknown, rows)) = &sweep {
        files.push((CONVERGENCE_FILE.to_string(), convergence_csv(unknown, rows)));
    }
    let mut outputs: Vec<String> = files.iter().map(|(n, _)| n.clone()).collect();
    outputs.push(REPORT_FILE.to_string());
    let (residual, reference_error, dropped_modes) = match solved {
        Some(s) => (s.residual, s.reference_error, s.dropped),
        None => (None, None, Vec::new()),
    };
    let report = Report {
        config: config.clone(),
        modes: config.modes,
        quad_order: config.quad_order,
        residual,
        reference_error,
        dropped_modes,
        amplification,
        tolerances: ReportTolerances {
            overflow_limit: OVERFLOW_LIMIT,
            residual_nodes: RESIDUAL_NODES,
            min_quad_order: Quadrature::required_order(config.largest_k()),
            cutoff: config.cutoff,
        },
        outputs,
    };
    let mut text = serde_json::to_string_pretty(&report).map_err(numerical)?;
    text.push('\n');
    files.push((REPORT_FILE.to_string(), text));
    Ok(RunOutput { report, files })
}

/// Reads the config echoed in a report file.
pub fn load_report_config(path: &Path) -> Result<RunConfig, CliError> {
    #[derive(serde::Deserialize)]
    struct Echo {
        config: RunConfig,
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let echo: Echo =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    echo.config.validate()?;
    Ok(echo.config)
}
