//! The acceptance checks, runnable from the library and the `selftest`
//! subcommand. Each check reports its worst observed quantity.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::bessel_disk::{length_area, total_curvature};
use crate::cli::{execute, CommandKind, Format, RunConfig};
use crate::conformal::ConformalMap;
use crate::eigenmetric::total_curvature_eigenmetric;
use crate::eigensolver::{solve, BasisSpec, GridSpec};
use crate::error::Result;
use crate::payne_rayner::{identity_chain_check, isoperimetric_report};
use crate::schwarz::{
    fd_derivative_richardson, hadamard_derivative, phi, phi_limit_zero, sweep, SweepReport,
    Verdict, DEFAULT_FD_STEP, TOL_STRICT,
};
use crate::special_functions::{j1, j1_prime, BesselConstants};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// Soft checks are reported but never fail the suite.
    pub soft: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = match (self.passed, self.soft) {
            (true, _) => "PASS",
            (false, true) => "SOFT-FAIL",
            (false, false) => "FAIL",
        };
        format!("[{status}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn map(c: &[f64]) -> ConformalMap {
    ConformalMap::from_real(c).expect("literal coefficients are valid")
}

fn ctx() -> (BasisSpec, GridSpec) {
    (BasisSpec::default(), GridSpec::default())
}

fn lambda(m: &ConformalMap, r: f64) -> Result<f64> {
    let (b, g) = ctx();
    Ok(solve(m, r, &b, &g)?.lambda)
}

/// Sample sweep of `z + 0.3z²` on `[0.05, 0.95]` with 19 points.
pub fn quadratic_sweep() -> Result<SweepReport> {
    let (b, g) = ctx();
    sweep(&map(&[0.0, 1.0, 0.3]), 0.05, 0.95, 19, &b, &g)
}

fn disk_eigenvalue() -> Result<(bool, String)> {
    let j2 = BesselConstants::get().j0_squared;
    let mut worst: f64 = 0.0;
    for r in [0.25, 0.5, 1.0] {
        worst = worst.max(rel(lambda(&ConformalMap::identity(), r)?, j2 / (r * r)));
    }
    Ok((worst < 1e-8, format!("max rel err {worst:.2e} (tol 1e-8)")))
}

fn linear_constant() -> Result<(bool, String)> {
    let (b, g) = ctx();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for a in [0.7, 1.0, 2.0] {
        let rep = sweep(&map(&[0.0, a]), 0.05, 0.95, 10, &b, &g)?;
        ok &= rep.verdict == Verdict::Constant;
        for p in &rep.points {
            worst = worst.max(rel(p.phi, 1.0 / (a * a)));
        }
    }
    Ok((
        ok && worst < 1e-7,
        format!("verdicts CONSTANT: {ok}; max rel |Φ − 1/a²| {worst:.2e} (tol 1e-7)"),
    ))
}

fn univalent_decreasing(rep: &SweepReport) -> (bool, String) {
    let max_step = rep
        .phi_steps()
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    (
        rep.verdict == Verdict::Decreasing && rep.points.len() == 19 && max_step < -TOL_STRICT,
        format!("verdict {}; max ΔΦ {max_step:.3e} (< -1e-9)", rep.verdict),
    )
}

fn riemann_surface() -> Result<(bool, String)> {
    let j2 = BesselConstants::get().j0_squared;
    let (mut wl, mut wp): (f64, f64) = (0.0, 0.0);
    for r in [0.3, 0.6, 0.9] {
        let l = lambda(&map(&[0.0, 0.0, 1.0]), r)?;
        wl = wl.max(rel(l, j2 / r.powi(4)));
        wp = wp.max(rel(phi(r, l), r.powi(-2)));
    }
    Ok((
        wl < 1e-6 && wp < 1e-5,
        format!("max rel err λ {wl:.2e} (1e-6), Φ {wp:.2e} (1e-5)"),
    ))
}

fn hadamard() -> Result<(bool, String)> {
    let (b, g) = ctx();
    let mut worst: f64 = 0.0;
    for c in [&[0.0, 1.0][..], &[0.0, 1.0, 0.3], &[0.0, 0.0, 1.0]] {
        let m = map(c);
        for r in [0.2, 0.5, 0.8] {
            let sol = solve(&m, r, &b, &g)?;
            let had = hadamard_derivative(&sol, g.n_ang)?;
            let fd = fd_derivative_richardson(&m, r, DEFAULT_FD_STEP, &b, &g)?;
            worst = worst.max(rel(had, fd));
        }
    }
    Ok((worst < 1e-4, format!("max rel gap {worst:.2e} (tol 1e-4)")))
}

fn pr_equality() -> Result<(bool, String)> {
    let (b, g) = ctx();
    let mut worst: f64 = 0.0;
    for a in [0.7, 1.0, 2.0] {
        for r in [0.5, 1.0] {
            let sol = solve(&map(&[0.0, a]), r, &b, &g)?;
            worst = worst.max(isoperimetric_report(&sol, &g)?.relative_margin().abs());
        }
    }
    Ok((
        worst < 1e-9,
        format!("max |L²−4πA|/L² {worst:.2e} (tol 1e-9)"),
    ))
}

fn pr_strict() -> Result<(bool, String)> {
    let (b, g) = ctx();
    let sol = solve(&map(&[0.0, 1.0, 0.3]), 0.8, &b, &g)?;
    let m = isoperimetric_report(&sol, &g)?.relative_margin();
    Ok((m > 1e-4, format!("margin/L² {m:.3e} (> 1e-4)")))
}

fn proof_chain(rep: &SweepReport) -> (bool, String) {
    let worst = rep
        .points
        .iter()
        .flat_map(|p| [p.chain_slack.0, p.chain_slack.1])
        .fold(f64::INFINITY, f64::min);
    (worst >= -1e-10, format!("min slack {worst:.3e} (≥ -1e-10)"))
}

fn identity_chain() -> Result<(bool, String)> {
    let (b, g) = ctx();
    let mut worst: f64 = 0.0;
    for c in [
        &[0.0, 1.0][..],
        &[0.0, 0.7],
        &[0.0, 2.0],
        &[0.0, 1.0, 0.3],
        &[0.0, 0.0, 1.0],
    ] {
        for r in [0.5, 0.8] {
            let sol = solve(&map(c), r, &b, &g)?;
            let res = identity_chain_check(&sol, &g)?;
            worst = worst.max(res.green).max(res.rayleigh);
        }
    }
    Ok((worst < 1e-6, format!("max residual {worst:.2e} (tol 1e-6)")))
}

fn bessel_isoperimetry() -> Result<(bool, String)> {
    let d = (length_area()?.isoperimetric_ratio() - 1.0).abs();
    Ok((d < 1e-10, format!("|L²/(4πA) − 1| {d:.2e} (tol 1e-10)")))
}

fn bessel_total_curvature() -> Result<(bool, String)> {
    let c = BesselConstants::get();
    let t = total_curvature(1e-3)?;
    let dt = (t.extrapolated - 4.0 * PI).abs();
    let db = (t.boundary_term - 2.0 * PI).abs();
    let dorg = (t.origin_limit - 2.0 * PI).abs();
    let di = (c.j0 * j1_prime(c.j0) + j1(c.j0)).abs();
    Ok((
        dt < 1e-8 && db < 1e-8 && dorg < 1e-8 && di < 1e-12,
        format!(
            "|total−4π| {dt:.1e}, |boundary−2π| {db:.1e}, |origin−2π| {dorg:.1e}, |j₀J₁′(j₀)+J₁(j₀)| {di:.1e}"
        ),
    ))
}

fn small_radius() -> Result<(bool, String)> {
    let (b, g) = ctx();
    let mut worst: f64 = 0.0;
    for a in [1.0, 2.0] {
        let p = phi_limit_zero(&map(&[0.0, a, 0.3]), &b, &g)?;
        worst = worst.max((p - 1.0 / (a * a)).abs());
    }
    Ok((
        worst < 2e-2,
        format!("max |Φ(0.05) − 1/|f′(0)|²| {worst:.2e} (tol 2e-2)"),
    ))
}

fn eigenmetric() -> Result<(bool, String)> {
    let (b, g) = ctx();
    let sol = solve(&map(&[0.0, 1.0, 0.2]), 0.8, &b, &g)?;
    let s = total_curvature_eigenmetric(&sol, &g)?;
    let d = s.deviation_from_4pi();
    let n = s.critical_points.len();
    Ok((
        d < 1e-2 && n == 1,
        format!("EXPERIMENTAL: |total − 4π| {d:.2e} (tol 1e-2), {n} critical point(s)"),
    ))
}

fn properties() -> Result<(bool, String)> {
    let (b, g) = ctx();
    let f = map(&[0.0, 1.0, 0.3]);
    // nested bases: Rayleigh–Ritz values decrease
    let ls = [(4, 8), (6, 12), (8, 16)]
        .iter()
        .map(|&(m, k)| Ok(solve(&f, 0.8, &BasisSpec::new(m, k)?, &g)?.lambda))
        .collect::<Result<Vec<f64>>>()?;
    let monotone = ls.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-13));
    let base = lambda(&f, 0.8)?;
    let mut scaling: f64 = 0.0;
    for c in [
        Complex64::new(0.7, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.6, 0.8),
    ] {
        let l = solve(&f.scaled(c)?, 0.8, &b, &g)?.lambda;
        scaling = scaling.max(rel(l * c.norm_sqr(), base));
    }
    let mut cfg = RunConfig::new(CommandKind::Sweep);
    cfg.map = f;
    cfg.steps = 4;
    let mut identical = true;
    for format in [Format::Csv, Format::Json] {
        cfg.format = format;
        identical &= execute(&cfg)?.output == execute(&cfg)?.output;
    }
    Ok((
        monotone && scaling < 1e-13 && identical,
        format!(
            "basis monotone: {monotone}; max scaling err {scaling:.1e} (1e-13); byte-identical reruns: {identical}"
        ),
    ))
}

fn wrap(id: u32, name: &'static str, soft: bool, check: Result<(bool, String)>) -> CriterionResult {
    let (passed, detail) = check.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        name,
        passed,
        soft,
        detail,
    }
}

/// Runs every acceptance check in order.
pub fn run_all() -> Vec<CriterionResult> {
    let sweep = quadratic_sweep();
    let from_sweep = |f: fn(&SweepReport) -> (bool, String)| match &sweep {
        Ok(rep) => Ok(f(rep)),
        Err(e) => Err(e.clone()),
    };
    vec![
        wrap(1, "disk eigenvalue", false, disk_eigenvalue()),
        wrap(2, "linear maps are constant", false, linear_constant()),
        wrap(
            3,
            "monotone decrease (univalent)",
            false,
            from_sweep(univalent_decreasing),
        ),
        wrap(4, "Riemann surface z²", false, riemann_surface()),
        wrap(5, "boundary-integral derivative", false, hadamard()),
        wrap(6, "isoperimetric equality on disks", false, pr_equality()),
        wrap(7, "isoperimetric strictness off disks", false, pr_strict()),
        wrap(
            8,
            "proof-chain inequalities",
            false,
            from_sweep(proof_chain),
        ),
        wrap(9, "identity chain", false, identity_chain()),
        wrap(10, "Bessel disk isoperimetry", false, bessel_isoperimetry()),
        wrap(
            11,
            "Bessel disk total curvature",
            false,
            bessel_total_curvature(),
        ),
        wrap(12, "small-radius limit", false, small_radius()),
        wrap(13, "eigenmetric total curvature", true, eigenmetric()),
        wrap(14, "property suites", false, properties()),
    ]
}
