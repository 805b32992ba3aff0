//! Command-line front end. [`execute`] renders a [`RunConfig`] into output
//! text and plot files without touching the filesystem; [`run`] adds argument
//! parsing, I/O and exit codes.

mod config;
pub mod svg;
pub mod table;

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use config::{Cli, Command};
pub use config::{CommandKind, Format, RunConfig};
use svg::{line_plot, Series};
use table::{Cell, Table};

use crate::bessel_disk::{figure_profiles, length_area, total_curvature};
use crate::eigenmetric::total_curvature_eigenmetric;
use crate::error::{Error, Result};
use crate::payne_rayner::{identity_residuals, isoperimetric_report};
use crate::schwarz::{
    fd_derivative, fd_derivative_richardson, fitted_step, hadamard_derivative, lambda_of_r,
    sweep_with_step, Verdict,
};
use crate::selftest;
use crate::special_functions::{j1, j1_prime, BesselConstants};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Relative gap between the boundary-integral and difference derivatives
/// accepted by `derivative-check`.
pub const DERIVATIVE_TOL: f64 = 1e-4;

/// Rendered result of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: String,
    /// Extra files (plots, figure data) relative to the plot directory.
    pub files: Vec<(String, String)>,
    /// A check or verdict failed (exit code 1).
    pub failed: bool,
}

fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn base_table(cfg: &RunConfig, columns: &[&str]) -> Table {
    let mut t = Table::new(cfg.command.name(), columns);
    t.meta("map", cfg.map.to_string())
        .meta("m_max", cfg.basis.m_max)
        .meta("k_max", cfg.basis.k_max)
        .meta("n_rad", cfg.grid.n_rad)
        .meta("n_ang", cfg.grid.n_ang);
    t
}

fn run_sweep(cfg: &RunConfig) -> Result<Outcome> {
    let report = sweep_with_step(
        &cfg.map,
        cfg.r_start,
        cfg.r_end,
        cfg.steps,
        cfg.h,
        &cfg.basis,
        &cfg.grid,
    )?;
    let mut t = base_table(
        cfg,
        &[
            "r",
            "lambda",
            "phi",
            "dlambda_hadamard",
            "dlambda_fd",
            "pr_margin",
            "pr_alt_margin",
            "univalent_certified",
        ],
    );
    t.meta("verdict", report.verdict.to_string())
        .meta("skipped", Cell::List(report.skipped.clone()));
    for p in &report.points {
        t.push(vec![
            p.r.into(),
            p.lambda.into(),
            p.phi.into(),
            p.dlambda_hadamard.into(),
            p.dlambda_fd.into(),
            p.payne_rayner_margin.into(),
            p.payne_rayner_alt_margin.into(),
            p.univalent_certified.into(),
        ]);
    }
    let mut files = Vec::new();
    if cfg.plot {
        let r: Vec<f64> = report.points.iter().map(|p| p.r).collect();
        let phi: Vec<f64> = report.points.iter().map(|p| p.phi).collect();
        let title = format!("Φ(r) = r²λ/j₀² for f = {}", cfg.map);
        files.push((
            "phi.svg".to_owned(),
            line_plot(
                &title,
                "r",
                "Φ",
                &[Series {
                    label: "Φ",
                    x: &r,
                    y: &phi,
                }],
            ),
        ));
    }
    Ok(Outcome {
        output: render(&t, cfg.format),
        files,
        failed: report.verdict == Verdict::Violation,
    })
}

fn run_derivative_check(cfg: &RunConfig) -> Result<Outcome> {
    let mut t = base_table(
        cfg,
        &[
            "r",
            "lambda",
            "dlambda_hadamard",
            "dlambda_fd",
            "dlambda_fd_plain",
            "fd_step",
            "relative_difference",
            "passed",
        ],
    );
    t.meta("tolerance", DERIVATIVE_TOL);
    let mut failed = false;
    for &r in &cfg.radii {
        let sol = lambda_of_r(&cfg.map, r, &cfg.basis, &cfg.grid)?;
        let had = hadamard_derivative(&sol, cfg.grid.n_ang)?;
        let step = fitted_step(&cfg.map, r, cfg.h);
        let fd = fd_derivative_richardson(&cfg.map, r, step, &cfg.basis, &cfg.grid)?;
        let plain = fd_derivative(&cfg.map, r, step, &cfg.basis, &cfg.grid)?;
        let rel = (had - fd).abs() / fd.abs();
        let passed = rel < DERIVATIVE_TOL;
        failed |= !passed;
        t.push(vec![
            r.into(),
            sol.lambda.into(),
            had.into(),
            fd.into(),
            plain.into(),
            step.into(),
            rel.into(),
            passed.into(),
        ]);
    }
    Ok(Outcome {
        output: render(&t, cfg.format),
        files: Vec::new(),
        failed,
    })
}

fn run_payne_rayner(cfg: &RunConfig) -> Result<Outcome> {
    let mut t = base_table(
        cfg,
        &[
            "r",
            "lambda",
            "L",
            "A",
            "margin",
            "alt_margin",
            "relative_margin",
            "residual1",
            "residual2",
            "holds",
        ],
    );
    let mut failed = false;
    for &r in &cfg.radii {
        let sol = lambda_of_r(&cfg.map, r, &cfg.basis, &cfg.grid)?;
        let rep = isoperimetric_report(&sol, &cfg.grid)?;
        let res = identity_residuals(&rep);
        failed |= !rep.holds();
        t.push(vec![
            r.into(),
            rep.lambda.into(),
            rep.length.into(),
            rep.area.into(),
            rep.margin.into(),
            rep.alt_margin.into(),
            rep.relative_margin().into(),
            res.green.into(),
            res.rayleigh.into(),
            rep.holds().into(),
        ]);
    }
    Ok(Outcome {
        output: render(&t, cfg.format),
        files: Vec::new(),
        failed,
    })
}

fn run_bessel_disk(cfg: &RunConfig) -> Result<Outcome> {
    let c = BesselConstants::get();
    let la = length_area()?;
    let tc = total_curvature(cfg.epsilon)?;
    let identity = (c.j0 * j1_prime(c.j0) + j1(c.j0)).abs();
    let mut t = Table::new(
        cfg.command.name(),
        &[
            "L",
            "A",
            "isoperimetric_ratio",
            "total_curvature",
            "boundary_term",
            "origin_term",
            "annulus",
            "epsilon",
            "bessel_identity_residual",
        ],
    );
    t.meta("normalization", "rho(s)=J1(j0*s)");
    t.push(vec![
        la.length.into(),
        la.area.into(),
        la.isoperimetric_ratio().into(),
        tc.extrapolated.into(),
        tc.boundary_term.into(),
        tc.origin_limit.into(),
        tc.annulus.into(),
        tc.epsilon.into(),
        identity.into(),
    ]);
    let failed =
        (la.isoperimetric_ratio() - 1.0).abs() > 1e-10 || (tc.extrapolated - 4.0 * PI).abs() > 1e-8;

    let mut files = Vec::new();
    if cfg.plot {
        let p = figure_profiles(cfg.n_samples)?;
        let mut prof = Table::new(
            "bessel-disk-profiles",
            &[
                "s",
                "rho_definition",
                "rho_figure",
                "curvature_definition",
                "curvature_figure",
                "gauss_bonnet_density",
            ],
        );
        for i in 0..p.s.len() {
            prof.push(vec![
                p.s[i].into(),
                p.rho_definition[i].into(),
                p.rho_figure[i].into(),
                p.curvature_definition[i].into(),
                p.curvature_figure[i].into(),
                p.density[i].into(),
            ]);
        }
        // the curvature grows like 2/s² at the origin; plot it away from there
        let from = p.s.iter().position(|&s| s >= 0.1).unwrap_or(0);
        files.push((
            "rho.svg".to_owned(),
            line_plot(
                "Conformal factor ρ(s)",
                "s",
                "ρ",
                &[
                    Series {
                        label: "j₀J₁(j₀s)",
                        x: &p.s,
                        y: &p.rho_figure,
                    },
                    Series {
                        label: "J₁(j₀s)",
                        x: &p.s,
                        y: &p.rho_definition,
                    },
                ],
            ),
        ));
        files.push((
            "curvature.svg".to_owned(),
            line_plot(
                "Curvature K = −ρ⁻²Δlog ρ, ρ = j₀J₁(j₀s)",
                "s",
                "K",
                &[Series {
                    label: "K",
                    x: &p.s[from..],
                    y: &p.curvature_figure[from..],
                }],
            ),
        ));
        files.push((
            "gauss_bonnet.svg".to_owned(),
            line_plot(
                "Gauss–Bonnet integrand −Δlog ρ",
                "s",
                "K dA / |dz|²",
                &[Series {
                    label: "−Δlog ρ",
                    x: &p.s,
                    y: &p.density,
                }],
            ),
        ));
        files.push(("profiles.csv".to_owned(), prof.to_csv()));
        files.push(("summary.json".to_owned(), t.to_json()));
    }
    Ok(Outcome {
        output: render(&t, cfg.format),
        files,
        failed,
    })
}

fn run_eigenmetric(cfg: &RunConfig) -> Result<Outcome> {
    let mut t = base_table(
        cfg,
        &[
            "r",
            "critical_points",
            "critical_point_radii",
            "boundary_term",
            "interior_term",
            "total",
            "deviation_from_4pi",
            "experimental",
        ],
    );
    for &r in &cfg.radii {
        let sol = lambda_of_r(&cfg.map, r, &cfg.basis, &cfg.grid)?;
        let s = total_curvature_eigenmetric(&sol, &cfg.grid)?;
        t.push(vec![
            r.into(),
            s.critical_points.len().into(),
            Cell::List(s.critical_points.iter().map(|p| p.z.norm()).collect()),
            s.boundary_term.into(),
            s.interior_term.into(),
            s.total.into(),
            s.deviation_from_4pi().into(),
            s.experimental.into(),
        ]);
    }
    // conjecture survey: reported, never a failed check
    Ok(Outcome {
        output: render(&t, cfg.format),
        files: Vec::new(),
        failed: false,
    })
}

fn run_selftest(cfg: &RunConfig) -> Result<Outcome> {
    let results = selftest::run_all();
    let mut t = Table::new(
        cfg.command.name(),
        &["id", "name", "passed", "soft", "detail"],
    );
    for c in &results {
        t.push(vec![
            (c.id as usize).into(),
            c.name.into(),
            c.passed.into(),
            c.soft.into(),
            c.detail.clone().into(),
        ]);
    }
    Ok(Outcome {
        output: render(&t, cfg.format),
        files: Vec::new(),
        failed: results.iter().any(|c| !c.passed && !c.soft),
    })
}

/// Runs `cfg` and renders its output; deterministic for a given config.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        CommandKind::Sweep => run_sweep(cfg),
        CommandKind::DerivativeCheck => run_derivative_check(cfg),
        CommandKind::PayneRayner => run_payne_rayner(cfg),
        CommandKind::BesselDisk => run_bessel_disk(cfg),
        CommandKind::Eigenmetric => run_eigenmetric(cfg),
        CommandKind::Selftest => run_selftest(cfg),
    }
}

/// Parses `argv` (program name first) into a validated config.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ParseFailure::Clap)?;
    let (kind, flags) = match cli.command {
        Command::Sweep(f) => (CommandKind::Sweep, f),
        Command::DerivativeCheck(f) => (CommandKind::DerivativeCheck, f),
        Command::PayneRayner(f) => (CommandKind::PayneRayner, f),
        Command::BesselDisk(f) => (CommandKind::BesselDisk, f),
        Command::Eigenmetric(f) => (CommandKind::Eigenmetric, f),
        Command::Selftest(f) => (CommandKind::Selftest, f),
    };
    RunConfig::resolve(kind, flags).map_err(ParseFailure::Config)
}

#[derive(Debug)]
pub enum ParseFailure {
    /// Includes `--help` and `--version`, which are not errors.
    Clap(clap::Error),
    Config(Error),
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::Coefficients(_) | Error::SizeMismatch { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_NUMERICAL,
    }
}

fn write_outputs(cfg: &RunConfig, outcome: &Outcome) -> std::io::Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, &outcome.output)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.output.as_bytes())?;
            out.flush()?;
        }
    }
    if !outcome.files.is_empty() {
        std::fs::create_dir_all(&cfg.plot_dir)?;
        for (name, body) in &outcome.files {
            std::fs::write(cfg.plot_dir.join(name), body)?;
        }
    }
    Ok(())
}

/// Entry point: returns the process exit code (0 ok, 1 failed check or
/// VIOLATION verdict, 2 usage error, 3 numerical failure).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(cfg) => cfg,
        Err(ParseFailure::Clap(e)) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
        Err(ParseFailure::Config(e)) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    if let Err(e) = write_outputs(&cfg, &outcome) {
        let target = cfg
            .output
            .clone()
            .unwrap_or_else(|| PathBuf::from("<stdout>"));
        eprintln!("error: cannot write {}: {e}", target.display());
        return EXIT_USAGE;
    }
    if outcome.failed {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<RunConfig, ParseFailure> {
        parse_args(std::iter::once("schwarz-eigen").chain(args.iter().copied()))
    }

    #[test]
    fn flags_and_defaults() {
        let cfg = parse(&[
            "sweep", "--coeffs", "0,1,0.3", "--steps", "5", "--format", "json",
        ])
        .unwrap();
        assert_eq!(cfg.command, CommandKind::Sweep);
        assert_eq!(cfg.steps, 5);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.map.degree(), 2);
        let cfg = parse(&["derivative-check", "--r", "0.3,0.4"]).unwrap();
        assert_eq!(cfg.radii, vec![0.3, 0.4]);
        assert_eq!(parse(&["payne-rayner"]).unwrap().radii, vec![0.8]);
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            parse(&["sweep", "--bogus"]),
            Err(ParseFailure::Clap(_))
        ));
        assert!(matches!(parse(&["nope"]), Err(ParseFailure::Clap(_))));
        assert!(matches!(
            parse(&["sweep", "--coeffs", "0,x"]),
            Err(ParseFailure::Config(Error::Coefficients(_)))
        ));
        assert!(matches!(
            parse(&["sweep", "--r-start", "0.9", "--r-end", "0.5"]),
            Err(ParseFailure::Config(Error::InvalidArgument(_)))
        ));
        assert!(matches!(
            parse(&["sweep", "--m-max", "8", "--k-max", "16", "--n-rad", "20"]),
            Err(ParseFailure::Config(Error::InvalidArgument(_)))
        ));
        assert_eq!(run(["schwarz-eigen", "sweep", "--steps", "1"]), EXIT_USAGE);
        assert_eq!(run(["schwarz-eigen", "frobnicate"]), EXIT_USAGE);
    }

    #[test]
    fn negative_coefficients_parse() {
        let cfg = parse(&["sweep", "--coeffs", "-0.5,1,-0.2"]).unwrap();
        assert_eq!(cfg.map.coeffs()[0].re, -0.5);
    }

    #[test]
    fn bessel_disk_summary() {
        let mut cfg = RunConfig::new(CommandKind::BesselDisk);
        cfg.plot = true;
        let out = execute(&cfg).unwrap();
        assert!(!out.failed);
        let names: Vec<&str> = out.files.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(
            names,
            [
                "rho.svg",
                "curvature.svg",
                "gauss_bonnet.svg",
                "profiles.csv",
                "summary.json"
            ]
        );
        let v: serde_json::Value = serde_json::from_str(&out.files[4].1).unwrap();
        let total = v["rows"][0]["total_curvature"].as_f64().unwrap();
        assert!((total - 4.0 * PI).abs() < 1e-8);
    }
}
