//! Total curvature of the eigenfunction metric `|∇ψ|²|dz|²` on `rD`.
//!
//! By conformal invariance this is the metric `|∇φ|²|dw|²` on the image
//! domain. With `g = log|∇ψ|`, `K dA = −Δg`, and every nondegenerate zero of
//! `∇ψ` is a logarithmic singularity of `g` carrying an atom of `2π`:
//!
//! ```text
//! ∫ K dA = −∮_{|z|=r} ∂_n log|∇ψ| ds + 2π·#{∇ψ = 0}
//! ```
//!
//! For convex images the total is conjectured to be `4π`; results for
//! nonlinear maps are flagged experimental.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::conformal::ConformalMap;
use crate::eigensolver::{EigenSolution, GridSpec};
use crate::error::{Error, Result};
use crate::quadrature::CircleQuadrature;

/// `|∇ψ(z*)| / max|∇ψ|` accepted as a zero.
pub const GRADIENT_TOL: f64 = 1e-8;
/// Minimum `|det Hess ψ|` at a critical point.
pub const DEGENERACY_TOL: f64 = 1e-6;
/// Critical points closer than this to `|z| = r` are refused.
pub const BOUNDARY_EXCLUSION: f64 = 1e-3;
/// Newton limits from coarse-grid seeds that agree within this are merged.
pub const DEDUP_TOL: f64 = 1e-6;

const NEWTON_MAX_ITER: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub z: Complex64,
    pub grad_norm: f64,
    pub hessian_det: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPointSearch {
    pub points: Vec<CriticalPoint>,
    /// Seeds whose Newton iteration left the disk or stalled.
    pub failed_seeds: usize,
    /// Largest `|∇ψ|` seen on the seed grid and the boundary.
    pub grad_scale: f64,
}

fn det(h: &[[f64; 2]; 2]) -> f64 {
    h[0][0] * h[1][1] - h[0][1] * h[1][0]
}

fn newton(sol: &EigenSolution, seed: Complex64, target: f64) -> Option<CriticalPoint> {
    let r = sol.radius;
    let mut z = seed;
    for _ in 0..NEWTON_MAX_ITER {
        let (g, h) = sol.grad_and_hessian(z).ok()?;
        let d = det(&h);
        if d == 0.0 {
            return None;
        }
        let step = Complex64::new(
            (h[1][1] * g[0] - h[0][1] * g[1]) / d,
            (h[0][0] * g[1] - h[1][0] * g[0]) / d,
        );
        // keep the iterate inside the disk
        let mut next = z - step;
        if next.norm() > r {
            next = z - step * 0.5;
            if next.norm() > r {
                return None;
            }
        }
        z = next;
        if step.norm() <= 1e-15 * r.max(z.norm()) {
            break;
        }
    }
    let (g, h) = sol.grad_and_hessian(z).ok()?;
    let grad_norm = g[0].hypot(g[1]);
    (grad_norm <= target).then_some(CriticalPoint {
        z,
        grad_norm,
        hessian_det: det(&h),
    })
}

/// Zeros of `∇ψ` in `rD`: seeds are cells of an `n_rad × n_rad` Cartesian
/// grid over the inscribed disk in which both gradient components change
/// sign; each seed is refined by Newton's method with the analytic Hessian.
pub fn locate_critical_points(sol: &EigenSolution, grid: &GridSpec) -> Result<CriticalPointSearch> {
    let r = sol.radius;
    let n = grid.n_rad.max(8);
    let h = 2.0 * r / n as f64;
    let node = |i: usize, j: usize| Complex64::new(-r + i as f64 * h, -r + j as f64 * h);
    let inside = |z: Complex64| z.norm() < r;
    let mut values: Vec<Option<[f64; 2]>> = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            let z = node(i, j);
            values.push(if inside(z) {
                Some(sol.grad_psi(z)?)
            } else {
                None
            });
        }
    }
    let (_, boundary) = sol.boundary_gradient(grid.n_ang)?;
    let grad_scale = values
        .iter()
        .flatten()
        .map(|g| g[0].hypot(g[1]))
        .chain(boundary)
        .fold(0.0, f64::max);
    let target = GRADIENT_TOL * grad_scale;

    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut failed_seeds = 0;
    for i in 0..n {
        for j in 0..n {
            let corners = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)];
            let Some(g): Option<Vec<[f64; 2]>> = corners
                .iter()
                .map(|&(a, b)| values[a * (n + 1) + b])
                .collect()
            else {
                continue;
            };
            let straddles = |c: usize| {
                let lo = g.iter().map(|v| v[c]).fold(f64::INFINITY, f64::min);
                let hi = g.iter().map(|v| v[c]).fold(f64::NEG_INFINITY, f64::max);
                lo <= 0.0 && hi >= 0.0
            };
            if !(straddles(0) && straddles(1)) {
                continue;
            }
            let seed = node(i, j) + Complex64::new(0.5 * h, 0.5 * h);
            match newton(sol, seed, target) {
                Some(p) => {
                    if points.iter().all(|q| (q.z - p.z).norm() > DEDUP_TOL) {
                        points.push(p);
                    }
                }
                None => failed_seeds += 1,
            }
        }
    }
    points.sort_by(|a, b| a.z.norm().total_cmp(&b.z.norm()));
    Ok(CriticalPointSearch {
        points,
        failed_seeds,
        grad_scale,
    })
}

/// `−∮_{|z|=r} ∂_n log|∇ψ| ds` with `∂_n log|∇ψ| = ∇ψᵀ H n / |∇ψ|²`.
pub fn boundary_curvature_term(sol: &EigenSolution, n_ang: usize) -> Result<f64> {
    let circle = CircleQuadrature::new(sol.radius, n_ang)?;
    let mut acc = 0.0;
    for &z in circle.points() {
        let (g, h) = sol.grad_and_hessian(z)?;
        let n = z / z.norm();
        let hn = [
            h[0][0] * n.re + h[0][1] * n.im,
            h[1][0] * n.re + h[1][1] * n.im,
        ];
        let norm_sq = g[0] * g[0] + g[1] * g[1];
        if norm_sq == 0.0 {
            return Err(Error::Refused(format!(
                "∇ψ vanishes on the boundary at {z}"
            )));
        }
        acc += (g[0] * hn[0] + g[1] * hn[1]) / norm_sq;
    }
    Ok(-acc * circle.weight())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureSurvey {
    pub map: ConformalMap,
    pub r: f64,
    pub critical_points: Vec<CriticalPoint>,
    pub failed_seeds: usize,
    pub boundary_term: f64,
    pub interior_term: f64,
    pub total: f64,
    /// Nonlinear maps test a conjecture rather than a theorem.
    pub experimental: bool,
}

impl CurvatureSurvey {
    pub fn deviation_from_4pi(&self) -> f64 {
        (self.total - 4.0 * PI).abs()
    }
}

/// Total curvature of `(rD, |∇ψ|²|dz|²)`. Refuses when a critical point sits
/// within [`BOUNDARY_EXCLUSION`] of the boundary or is degenerate.
pub fn total_curvature_eigenmetric(
    sol: &EigenSolution,
    grid: &GridSpec,
) -> Result<CurvatureSurvey> {
    let search = locate_critical_points(sol, grid)?;
    for p in &search.points {
        if sol.radius - p.z.norm() < BOUNDARY_EXCLUSION {
            return Err(Error::Refused(format!(
                "critical point {} within {BOUNDARY_EXCLUSION} of the boundary",
                p.z
            )));
        }
        if p.hessian_det.abs() <= DEGENERACY_TOL {
            return Err(Error::Refused(format!(
                "degenerate critical point {} (det Hess = {:e})",
                p.z, p.hessian_det
            )));
        }
    }
    let boundary_term = boundary_curvature_term(sol, grid.n_ang)?;
    let interior_term = 2.0 * PI * search.points.len() as f64;
    Ok(CurvatureSurvey {
        map: sol.map.clone(),
        r: sol.radius,
        critical_points: search.points,
        failed_seeds: search.failed_seeds,
        boundary_term,
        interior_term,
        total: boundary_term + interior_term,
        experimental: !sol.map.is_linear(),
    })
}
