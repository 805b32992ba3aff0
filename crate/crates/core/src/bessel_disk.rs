//! Geometry of the Bessel disk: the unit disk with conformal metric
//! `ds = ρ|dz|`, `ρ(z) = J₁(j₀|z|)`, i.e. `|∇φ|/j₀` for the first disk
//! eigenfunction `φ = J₀(j₀|z|)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_circle, integrate_disk, CircleQuadrature, DiskQuadrature};
use crate::special_functions::{j0, j1, j1_prime, BesselConstants};

/// `ρ(s) = J₁(j₀s)`.
pub fn conformal_factor(s: f64) -> f64 {
    j1(BesselConstants::get().j0 * s)
}

/// `(log ρ)'(s)` and `(log ρ)''(s)` from Bessel's equation,
/// `J₁'' = −J₁'/x − (1 − 1/x²)J₁`.
fn log_derivatives(s: f64) -> (f64, f64) {
    let c = BesselConstants::get();
    let x = c.j0 * s;
    let ratio = j1_prime(x) / j1(x);
    let second = -ratio / x - (1.0 - 1.0 / (x * x));
    (c.j0 * ratio, c.j0_squared * (second - ratio * ratio))
}

fn check_radius(s: f64) -> Result<()> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "Bessel-disk radius must lie in (0, 1], got {s}"
        )));
    }
    Ok(())
}

/// Gauss–Bonnet density `−Δ log ρ = −((log ρ)'' + (log ρ)'/s)`; unchanged by
/// constant rescaling of `ρ`.
pub fn gauss_bonnet_density(s: f64) -> Result<f64> {
    check_radius(s)?;
    let (d1, d2) = log_derivatives(s);
    Ok(-(d2 + d1 / s))
}

/// Gauss curvature `K = −ρ⁻² Δ log ρ` of `J₁(j₀|z|)|dz|` at `|z| = s`.
pub fn curvature(s: f64) -> Result<f64> {
    let density = gauss_bonnet_density(s)?;
    Ok(density / conformal_factor(s).powi(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LengthArea {
    pub length: f64,
    pub area: f64,
}

impl LengthArea {
    /// `L² / (4πA)`.
    pub fn isoperimetric_ratio(&self) -> f64 {
        self.length * self.length / (4.0 * PI * self.area)
    }
}

/// Boundary length and area of the metric `scale·ρ|dz|` by quadrature.
pub fn length_area_scaled(scale: f64, n_rad: usize, n_ang: usize) -> Result<LengthArea> {
    let circle = CircleQuadrature::new(1.0, n_ang)?;
    let rho_b: Vec<f64> = vec![scale * conformal_factor(1.0); circle.len()];
    let disk = DiskQuadrature::new(1.0, n_rad, n_ang)?;
    let rho_sq: Vec<f64> = disk
        .points()
        .iter()
        .map(|z| (scale * conformal_factor(z.norm())).powi(2))
        .collect();
    Ok(LengthArea {
        length: integrate_circle(&circle, &rho_b)?,
        area: integrate_disk(&disk, &rho_sq)?,
    })
}

/// `L = 2πJ₁(j₀)` and `A = ∫_D ρ²` for the definition normalization.
pub fn length_area() -> Result<LengthArea> {
    length_area_scaled(1.0, 64, 128)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TotalCurvature {
    pub epsilon: f64,
    /// `∫_{ε<|z|<1} K dA = 2π[s(log ρ)']_{s=ε}^{s=1}` with the sign of
    /// `−∫(d/ds)(s(log ρ)')ds`.
    pub annulus: f64,
    /// `−2π·(log ρ)'(1) = −2π j₀J₁'(j₀)/J₁(j₀)`.
    pub boundary_term: f64,
    /// `2π·ε(log ρ)'(ε)`.
    pub origin_term: f64,
    /// `ε → 0` limit of the origin term by Richardson extrapolation in `ε²`.
    pub origin_limit: f64,
    /// `boundary_term + origin_limit`.
    pub extrapolated: f64,
}

/// `2π·s(log ρ)'(s)`.
pub fn origin_contribution(s: f64) -> f64 {
    2.0 * PI * s * log_derivatives(s).0
}

/// Total curvature of the Bessel disk via the exact-derivative form of the
/// Gauss–Bonnet integrand, excising `|z| < ε`.
pub fn total_curvature(epsilon: f64) -> Result<TotalCurvature> {
    if !(epsilon > 0.0 && epsilon < 0.1) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie in (0, 0.1), got {epsilon}"
        )));
    }
    let boundary_term = -2.0 * PI * log_derivatives(1.0).0;
    let origin_term = origin_contribution(epsilon);
    // s(log ρ)' = 1 − (j₀s)²/4 + O(s⁴)
    let origin_limit = (4.0 * origin_contribution(0.5 * epsilon) - origin_term) / 3.0;
    Ok(TotalCurvature {
        epsilon,
        annulus: boundary_term + origin_term,
        boundary_term,
        origin_term,
        origin_limit,
        extrapolated: boundary_term + origin_limit,
    })
}

/// Sampled curves behind the conformal-factor, curvature and Gauss–Bonnet
/// plots. Two normalizations of `ρ` are emitted: `J₁(j₀s)` (definition) and
/// `j₀J₁(j₀s)` (figure); the curvature scales by `1/j₀²` between them and the
/// density is shared.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureProfiles {
    pub s: Vec<f64>,
    pub rho_definition: Vec<f64>,
    pub rho_figure: Vec<f64>,
    pub curvature_definition: Vec<f64>,
    pub curvature_figure: Vec<f64>,
    pub density: Vec<f64>,
}

impl FigureProfiles {
    /// Sample indices of strict interior local maxima of `ρ`.
    pub fn rho_local_maxima(&self) -> Vec<usize> {
        let r = &self.rho_definition;
        (1..r.len().saturating_sub(1))
            .filter(|&i| r[i] > r[i - 1] && r[i] >= r[i + 1])
            .collect()
    }
}

/// `n_samples` equispaced radii `s_i = i/n`, `i = 1..=n`.
pub fn figure_profiles(n_samples: usize) -> Result<FigureProfiles> {
    if n_samples < 16 {
        return Err(Error::InvalidArgument(format!(
            "need at least 16 samples, got {n_samples}"
        )));
    }
    let c = BesselConstants::get();
    let s: Vec<f64> = (1..=n_samples)
        .map(|i| i as f64 / n_samples as f64)
        .collect();
    let rho_definition: Vec<f64> = s.iter().map(|&s| conformal_factor(s)).collect();
    let density = s
        .iter()
        .map(|&s| gauss_bonnet_density(s))
        .collect::<Result<Vec<_>>>()?;
    let curvature_definition: Vec<f64> = density
        .iter()
        .zip(&rho_definition)
        .map(|(d, r)| d / (r * r))
        .collect();
    Ok(FigureProfiles {
        rho_figure: rho_definition.iter().map(|r| c.j0 * r).collect(),
        curvature_figure: curvature_definition
            .iter()
            .map(|k| k / c.j0_squared)
            .collect(),
        s,
        rho_definition,
        curvature_definition,
        density,
    })
}

/// `J₀(j₀s)`: the first disk eigenfunction, whose gradient is `j₀ρ`.
pub fn disk_eigenfunction(s: f64) -> f64 {
    j0(BesselConstants::get().j0 * s)
}
