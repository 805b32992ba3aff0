//! The eigenvalue quotient `Φ(r) = r²λ(f(rD))/j₀²`, its shape derivative and
//! monotonicity sweeps.
//!
//! With `ψ_r = φ_r ∘ f` normalized by `∫_{rD} ψ²|f'|² = 1`, growing the radius
//! moves the boundary of `f(rD)` with normal speed `|f'|`, and the boundary
//! integral collapses to `dλ/dr = −r∫₀^{2π} |∇ψ_r(re^{iθ})|² dθ`. `Φ` is
//! non-increasing exactly when `2λ/r + dλ/dr ≤ 0`.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::conformal::{ConformalMap, RiemannSurfaceSpec};
use crate::eigensolver::{solve, BasisSpec, EigenSolution, GridSpec};
use crate::error::{Error, Result};
use crate::payne_rayner::{isoperimetric_report, proof_chain_slacks, IsoperimetricReport};
use crate::quadrature::integrate_circle;
use crate::special_functions::BesselConstants;

/// Relative tolerance on `|ΔΦ|` for the constant verdict.
pub const TOL_CONST: f64 = 1e-7;
/// Absolute margin every step must clear for the strictly decreasing verdict.
pub const TOL_STRICT: f64 = 1e-9;
/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-3;
/// Sweep points this close to a critical radius are skipped.
pub const CRITICAL_SKIP_WINDOW: f64 = 1e-6;
/// Single solves this close to a critical radius are refused.
pub const CRITICAL_SOLVE_WINDOW: f64 = 1e-9;
/// Radius used to approximate `Φ(0⁺)`.
pub const SMALL_RADIUS: f64 = 0.05;

/// Radial deformation `ζ(t, f(z)) = f((1 + t/r) z)` of `f(rD)` onto
/// `f((r+t)D)`, parametrized by the preimage `z` so `f⁻¹` is never formed.
#[derive(Clone, Debug)]
pub struct FlowSpec {
    pub map: ConformalMap,
    pub radius: f64,
}

impl FlowSpec {
    pub fn new(map: ConformalMap, radius: f64) -> Self {
        Self { map, radius }
    }

    /// Position at time `t` of the point that starts at `f(z)`.
    pub fn flow(&self, t: f64, z: Complex64) -> Complex64 {
        self.map.eval(z * (1.0 + t / self.radius))
    }

    /// Variation field `χ = z' f'(z') / (r + t)` at the image of
    /// `z' = (1 + t/r) z`.
    pub fn variation_field(&self, t: f64, z: Complex64) -> Complex64 {
        let zt = z * (1.0 + t / self.radius);
        zt * self.map.eval_deriv(zt) / (self.radius + t)
    }

    /// Outward unit normal `η = (z/r) f'(z)/|f'(z)|` of `f(rD)` at `f(z)`,
    /// `|z| = r`.
    pub fn normal(&self, z: Complex64) -> Complex64 {
        let d = self.map.eval_deriv(z);
        z / self.radius * d / d.norm()
    }

    /// `⟨χ, η⟩` at `t = 0`; equals `|f'(z)|` on the boundary.
    pub fn normal_speed(&self, z: Complex64) -> f64 {
        let chi = self.variation_field(0.0, z);
        let eta = self.normal(z);
        chi.re * eta.re + chi.im * eta.im
    }
}

/// `Φ(r) = r²λ/j₀²`.
pub fn phi(r: f64, lambda: f64) -> f64 {
    r * r * lambda / BesselConstants::get().j0_squared
}

/// `dΦ/dr = (2rλ + r²dλ/dr)/j₀²`.
pub fn phi_derivative(r: f64, lambda: f64, dlambda: f64) -> f64 {
    (2.0 * r * lambda + r * r * dlambda) / BesselConstants::get().j0_squared
}

/// `λ(r)`: the first eigenvalue of `f(rD)`, with multiplicity when `f` is
/// not injective on `rD`.
pub fn lambda_of_r(
    map: &ConformalMap,
    r: f64,
    basis: &BasisSpec,
    grid: &GridSpec,
) -> Result<EigenSolution> {
    RiemannSurfaceSpec::new(map.clone(), r)?.check_regular(CRITICAL_SOLVE_WINDOW)?;
    solve(map, r, basis, grid)
}

/// `dλ/dr = −r∫₀^{2π}|∇ψ(re^{iθ})|²dθ` on the solved eigenfunction.
pub fn hadamard_derivative(sol: &EigenSolution, n_ang: usize) -> Result<f64> {
    let (circle, grad) = sol.boundary_gradient(n_ang)?;
    let squares: Vec<f64> = grad.iter().map(|g| g * g).collect();
    // arc-length weights already carry the factor r
    Ok(-integrate_circle(&circle, &squares)?)
}

/// Central difference `(λ(r+h) − λ(r−h)) / 2h`.
pub fn fd_derivative(
    map: &ConformalMap,
    r: f64,
    h: f64,
    basis: &BasisSpec,
    grid: &GridSpec,
) -> Result<f64> {
    if !(h > 0.0 && r - h > 0.0 && r + h < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "difference stencil [{}, {}] must lie in (0, 1)",
            r - h,
            r + h
        )));
    }
    if let Some(c) = map
        .critical_radii(1.0)
        .into_iter()
        .find(|&c| c >= r - h && c <= r + h)
    {
        return Err(Error::NearCriticalRadius {
            radius: r,
            critical: c,
            window: h,
        });
    }
    let (lo, hi) = rayon::join(
        || lambda_of_r(map, r - h, basis, grid),
        || lambda_of_r(map, r + h, basis, grid),
    );
    Ok((hi?.lambda - lo?.lambda) / (2.0 * h))
}

/// Richardson-extrapolated central difference `(4D(h/2) − D(h))/3`, with
/// `O(h⁴)` truncation error.
pub fn fd_derivative_richardson(
    map: &ConformalMap,
    r: f64,
    h: f64,
    basis: &BasisSpec,
    grid: &GridSpec,
) -> Result<f64> {
    let (coarse, fine) = rayon::join(
        || fd_derivative(map, r, h, basis, grid),
        || fd_derivative(map, r, 0.5 * h, basis, grid),
    );
    Ok((4.0 * fine? - coarse?) / 3.0)
}

/// Largest step `≤ h` whose stencil stays inside `(0, 1)` and clear of every
/// critical radius.
pub fn fitted_step(map: &ConformalMap, r: f64, h: f64) -> f64 {
    let mut step = h.min(0.5 * r).min(0.5 * (1.0 - r));
    for c in map.critical_radii(1.0) {
        let d = (c - r).abs();
        if d <= step {
            step = 0.5 * d;
        }
    }
    step
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Every `|ΔΦ|` within `TOL_CONST·Φ`, for a linear map.
    Constant,
    /// Constant within tolerance although the map is not linear: the decrease
    /// is below the resolution of the solver.
    ConstantWithinTolerance,
    /// Every `ΔΦ < −TOL_STRICT`.
    Decreasing,
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constant => "CONSTANT",
            Verdict::ConstantWithinTolerance => "CONSTANT-WITHIN-TOLERANCE",
            Verdict::Decreasing => "DECREASING",
            Verdict::Violation => "VIOLATION",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub r: f64,
    pub lambda: f64,
    pub phi: f64,
    pub dlambda_hadamard: f64,
    /// Richardson-extrapolated central difference of `λ`.
    pub dlambda_fd: f64,
    /// Base step actually used by the central difference.
    pub fd_step: f64,
    pub univalent_certified: bool,
    /// `L² − 4πA`.
    pub payne_rayner_margin: f64,
    /// `(∫φ)² − (4π/λ)∫φ²`.
    pub payne_rayner_alt_margin: f64,
    /// `2λ/r + dλ/dr` by the boundary integral; `≤ 0` when `Φ` decreases.
    pub decrease_criterion: f64,
    /// Slacks of `(2/r)A ≤ L²/(2πr) ≤ r∫|∇ψ|²dθ`.
    pub chain_slack: (f64, f64),
    pub report: IsoperimetricReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub points: Vec<SweepPoint>,
    /// Grid radii within `CRITICAL_SKIP_WINDOW` of a critical radius.
    pub skipped: Vec<f64>,
    pub verdict: Verdict,
    pub map_is_linear: bool,
}

impl SweepReport {
    /// `Φ(r_{i+1}) − Φ(r_i)` over consecutive evaluated points.
    pub fn phi_steps(&self) -> Vec<f64> {
        self.points
            .windows(2)
            .map(|p| p[1].phi - p[0].phi)
            .collect()
    }
}

/// Evaluates one sweep point: solve, boundary-integral derivative, central
/// difference and the isoperimetric report.
pub fn sweep_point(
    map: &ConformalMap,
    r: f64,
    h: f64,
    basis: &BasisSpec,
    grid: &GridSpec,
) -> Result<SweepPoint> {
    let sol = lambda_of_r(map, r, basis, grid)?;
    let dlambda_hadamard = hadamard_derivative(&sol, grid.n_ang)?;
    let fd_step = fitted_step(map, r, h);
    let dlambda_fd = fd_derivative_richardson(map, r, fd_step, basis, grid)?;
    let report = isoperimetric_report(&sol, grid)?;
    Ok(SweepPoint {
        r,
        lambda: sol.lambda,
        phi: phi(r, sol.lambda),
        dlambda_hadamard,
        dlambda_fd,
        fd_step,
        univalent_certified: map.univalence_bound(r),
        payne_rayner_margin: report.margin,
        payne_rayner_alt_margin: report.alt_margin,
        decrease_criterion: 2.0 * sol.lambda / r + dlambda_hadamard,
        chain_slack: proof_chain_slacks(&report, r),
        report,
    })
}

/// Classifies consecutive `Φ` values.
pub fn classify(phis: &[f64], map_is_linear: bool) -> Verdict {
    let steps: Vec<f64> = phis.windows(2).map(|p| p[1] - p[0]).collect();
    let constant = phis
        .windows(2)
        .all(|p| (p[1] - p[0]).abs() <= TOL_CONST * p[0].abs());
    if constant {
        if map_is_linear {
            Verdict::Constant
        } else {
            Verdict::ConstantWithinTolerance
        }
    } else if steps.iter().all(|&d| d < -TOL_STRICT) {
        Verdict::Decreasing
    } else {
        Verdict::Violation
    }
}

/// `steps` equispaced radii on `[r_start, r_end]`, evaluated in parallel and
/// reported in grid order.
pub fn sweep(
    map: &ConformalMap,
    r_start: f64,
    r_end: f64,
    steps: usize,
    basis: &BasisSpec,
    grid: &GridSpec,
) -> Result<SweepReport> {
    sweep_with_step(map, r_start, r_end, steps, DEFAULT_FD_STEP, basis, grid)
}

pub fn sweep_with_step(
    map: &ConformalMap,
    r_start: f64,
    r_end: f64,
    steps: usize,
    h: f64,
    basis: &BasisSpec,
    grid: &GridSpec,
) -> Result<SweepReport> {
    if !(0.0 < r_start && r_start < r_end && r_end < 1.0) || steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs 0 < r_start < r_end < 1 and steps >= 2, got [{r_start}, {r_end}] with {steps}"
        )));
    }
    let critical = map.critical_radii(1.0);
    let radii: Vec<f64> = (0..steps)
        .map(|i| r_start + (r_end - r_start) * i as f64 / (steps - 1) as f64)
        .collect();
    let (kept, skipped): (Vec<f64>, Vec<f64>) = radii.into_iter().partition(|r| {
        critical
            .iter()
            .all(|c| (c - r).abs() > CRITICAL_SKIP_WINDOW)
    });
    let points = kept
        .par_iter()
        .map(|&r| sweep_point(map, r, h, basis, grid))
        .collect::<Result<Vec<_>>>()?;
    let phis: Vec<f64> = points.iter().map(|p| p.phi).collect();
    let map_is_linear = map.is_linear();
    Ok(SweepReport {
        verdict: classify(&phis, map_is_linear),
        points,
        skipped,
        map_is_linear,
    })
}

/// `Φ(0.05)`, an approximation of `Φ(0⁺) = 1/|f'(0)|²`.
pub fn phi_limit_zero(map: &ConformalMap, basis: &BasisSpec, grid: &GridSpec) -> Result<f64> {
    if map.a1().norm() == 0.0 {
        return Err(Error::InvalidArgument(
            "Φ(0⁺) is infinite when f'(0) = 0".into(),
        ));
    }
    let sol = lambda_of_r(map, SMALL_RADIUS, basis, grid)?;
    Ok(phi(SMALL_RADIUS, sol.lambda))
}
