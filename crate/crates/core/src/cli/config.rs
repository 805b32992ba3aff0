//! Command-line flags, the optional TOML config file, and their merge into a
//! validated [`RunConfig`]. Flags override file values.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::conformal::ConformalMap;
use crate::eigensolver::{BasisSpec, GridSpec};
use crate::error::{Error, Result};
use crate::schwarz::DEFAULT_FD_STEP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Sweep,
    DerivativeCheck,
    PayneRayner,
    BesselDisk,
    Eigenmetric,
    Selftest,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Sweep => "sweep",
            CommandKind::DerivativeCheck => "derivative-check",
            CommandKind::PayneRayner => "payne-rayner",
            CommandKind::BesselDisk => "bessel-disk",
            CommandKind::Eigenmetric => "eigenmetric",
            CommandKind::Selftest => "selftest",
        }
    }

    fn default_radii(self) -> Vec<f64> {
        match self {
            CommandKind::DerivativeCheck => vec![0.2, 0.5, 0.8],
            _ => vec![0.8],
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "schwarz-eigen",
    version,
    about = "First Dirichlet eigenvalues of polynomial images of disks"
)]
pub(super) struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub(super) enum Command {
    /// Φ(r) = r²λ/j₀² over a radius grid, with monotonicity verdict
    Sweep(Flags),
    /// Boundary-integral dλ/dr against a Richardson central difference
    DerivativeCheck(Flags),
    /// Isoperimetric report L² − 4πA and the identity-chain residuals
    PayneRayner(Flags),
    /// Length, area and total curvature of the Bessel disk; figure data
    BesselDisk(Flags),
    /// Total curvature of the metric |∇ψ|²|dz|² (experimental)
    Eigenmetric(Flags),
    /// Run the acceptance checks
    Selftest(Flags),
}

#[derive(Args, Debug, Default, Clone)]
pub(super) struct Flags {
    /// Polynomial coefficients a0,a1,... (complex entries as re:im)
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long)]
    pub r_start: Option<f64>,
    #[arg(long)]
    pub r_end: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Radii for point checks, comma separated
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<f64>>,
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub n_rad: Option<usize>,
    #[arg(long)]
    pub n_ang: Option<usize>,
    /// Finite-difference step
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write SVG plots
    #[arg(long)]
    pub plot: bool,
    #[arg(long)]
    pub plot_dir: Option<PathBuf>,
    /// Samples per figure curve
    #[arg(long)]
    pub n_samples: Option<usize>,
    /// Excision radius for the Bessel-disk total curvature
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// TOML file with the same keys as the flags
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileConfig {
    coeffs: Option<String>,
    r_start: Option<f64>,
    r_end: Option<f64>,
    steps: Option<usize>,
    r: Option<Vec<f64>>,
    m_max: Option<usize>,
    k_max: Option<usize>,
    n_rad: Option<usize>,
    n_ang: Option<usize>,
    h: Option<f64>,
    format: Option<Format>,
    output: Option<PathBuf>,
    plot: Option<bool>,
    plot_dir: Option<PathBuf>,
    n_samples: Option<usize>,
    epsilon: Option<f64>,
}

fn read_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("bad config {}: {e}", path.display())))
}

/// A fully resolved run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub map: ConformalMap,
    pub r_start: f64,
    pub r_end: f64,
    pub steps: usize,
    pub radii: Vec<f64>,
    pub basis: BasisSpec,
    pub grid: GridSpec,
    pub h: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub plot: bool,
    pub plot_dir: PathBuf,
    pub n_samples: usize,
    pub epsilon: f64,
}

impl RunConfig {
    /// Defaults for `command`: identity map, 19-point sweep on `[0.05, 0.95]`,
    /// default basis and grid, CSV to stdout.
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            map: ConformalMap::identity(),
            r_start: 0.05,
            r_end: 0.95,
            steps: 19,
            radii: command.default_radii(),
            basis: BasisSpec::default(),
            grid: GridSpec::default(),
            h: DEFAULT_FD_STEP,
            format: Format::Csv,
            output: None,
            plot: false,
            plot_dir: PathBuf::from("."),
            n_samples: 200,
            epsilon: 1e-3,
        }
    }

    pub(super) fn resolve(command: CommandKind, flags: Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(p) => read_config(p)?,
            None => FileConfig::default(),
        };
        let mut cfg = RunConfig::new(command);
        if let Some(c) = flags.coeffs.or(file.coeffs) {
            cfg.map = c.parse()?;
        }
        cfg.r_start = flags.r_start.or(file.r_start).unwrap_or(cfg.r_start);
        cfg.r_end = flags.r_end.or(file.r_end).unwrap_or(cfg.r_end);
        cfg.steps = flags.steps.or(file.steps).unwrap_or(cfg.steps);
        cfg.radii = flags.r.or(file.r).unwrap_or(cfg.radii);
        cfg.basis = BasisSpec::new(
            flags.m_max.or(file.m_max).unwrap_or(cfg.basis.m_max),
            flags.k_max.or(file.k_max).unwrap_or(cfg.basis.k_max),
        )?;
        cfg.grid = GridSpec::new(
            flags.n_rad.or(file.n_rad).unwrap_or(cfg.grid.n_rad),
            flags.n_ang.or(file.n_ang).unwrap_or(cfg.grid.n_ang),
        );
        cfg.h = flags.h.or(file.h).unwrap_or(cfg.h);
        cfg.format = flags.format.or(file.format).unwrap_or(cfg.format);
        cfg.output = flags.output.or(file.output);
        cfg.plot = flags.plot || file.plot.unwrap_or(false);
        cfg.plot_dir = flags.plot_dir.or(file.plot_dir).unwrap_or(cfg.plot_dir);
        cfg.n_samples = flags.n_samples.or(file.n_samples).unwrap_or(cfg.n_samples);
        cfg.epsilon = flags.epsilon.or(file.epsilon).unwrap_or(cfg.epsilon);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if !(0.0 < self.r_start && self.r_start < self.r_end && self.r_end < 1.0) {
            return bad(format!(
                "need 0 < r-start < r-end < 1, got {} and {}",
                self.r_start, self.r_end
            ));
        }
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if self.radii.is_empty() || self.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return bad(format!("radii must lie in (0, 1), got {:?}", self.radii));
        }
        if !(self.h > 0.0 && self.h < 0.5) {
            return bad(format!("h must lie in (0, 0.5), got {}", self.h));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.1) {
            return bad(format!(
                "epsilon must lie in (0, 0.1), got {}",
                self.epsilon
            ));
        }
        if self.n_samples < 16 {
            return bad(format!(
                "n-samples must be at least 16, got {}",
                self.n_samples
            ));
        }
        self.basis.validate()?;
        self.grid.disk(1.0)?;
        self.grid.check_resolves(&self.basis)
    }
}
