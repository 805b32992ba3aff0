//! The isoperimetric inequality `(∮|∇φ|)² ≥ 4π∫|∇φ|²` for the first
//! eigenfunction, and its equivalent form `(∫φ)² ≥ (4π/λ)∫φ²`.
//!
//! Every integral is evaluated on `rD`: `|∇φ||dw| = |∇ψ||dz|` on the boundary,
//! `|∇φ|²dA_w = |∇ψ|²dA_z`, `φ dA_w = ψ|f'|² dA_z`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::eigensolver::{EigenSolution, GridSpec};
use crate::error::Result;
use crate::quadrature::{integrate_circle, integrate_disk};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsoperimetricReport {
    pub lambda: f64,
    /// `L = ∮_{|z|=r} |∇ψ| |dz|`
    pub length: f64,
    /// `A = ∫_{rD} |∇ψ|²`
    pub area: f64,
    /// `L² − 4πA`
    pub margin: f64,
    /// `(∫φ)² − (4π/λ)∫φ²`
    pub alt_margin: f64,
    /// `∫φ = ∫_{rD} ψ|f'|²`
    pub int_phi: f64,
    /// `∫φ² = ∫_{rD} ψ²|f'|²`
    pub int_phi_sq: f64,
    /// `∮_{|z|=r} |∇ψ|² |dz| = r∫|∇ψ(re^{iθ})|²dθ`
    pub boundary_energy: f64,
}

impl IsoperimetricReport {
    /// `margin / L²`.
    pub fn relative_margin(&self) -> f64 {
        self.margin / (self.length * self.length)
    }

    /// Tolerance `1e-9·L²` below zero that is still accepted as quadrature noise.
    pub fn quadrature_slack(&self) -> f64 {
        1e-9 * self.length * self.length
    }

    pub fn holds(&self) -> bool {
        self.margin >= -self.quadrature_slack()
            && self.alt_margin >= -self.quadrature_slack() / (self.lambda * self.lambda)
    }
}

pub fn isoperimetric_report(sol: &EigenSolution, grid: &GridSpec) -> Result<IsoperimetricReport> {
    let quad = grid.disk(sol.radius)?;
    let (circle, boundary) = sol.boundary_gradient(grid.n_ang)?;
    let length = integrate_circle(&circle, &boundary)?;
    let squares: Vec<f64> = boundary.iter().map(|g| g * g).collect();
    let boundary_energy = integrate_circle(&circle, &squares)?;

    let fields = sol.fields_on(&quad)?;
    let mut energy = Vec::with_capacity(fields.len());
    let mut phi = Vec::with_capacity(fields.len());
    let mut phi_sq = Vec::with_capacity(fields.len());
    for p in &fields {
        let w = sol.map.weight(p.z);
        energy.push(p.grad_norm_sqr());
        phi.push(p.psi * w);
        phi_sq.push(p.psi * p.psi * w);
    }
    let area = integrate_disk(&quad, &energy)?;
    let int_phi = integrate_disk(&quad, &phi)?;
    let int_phi_sq = integrate_disk(&quad, &phi_sq)?;
    let lambda = sol.lambda;
    Ok(IsoperimetricReport {
        lambda,
        length,
        area,
        margin: length * length - 4.0 * PI * area,
        alt_margin: int_phi * int_phi - 4.0 * PI / lambda * int_phi_sq,
        int_phi,
        int_phi_sq,
        boundary_energy,
    })
}

/// Relative defects of the two identities behind the equivalence of the two
/// forms: `∮|∇φ| = λ∫φ` (Green) and `∫|∇φ|² = λ∫φ²` (Rayleigh quotient).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityResiduals {
    pub green: f64,
    pub rayleigh: f64,
}

pub fn identity_chain_check(sol: &EigenSolution, grid: &GridSpec) -> Result<IdentityResiduals> {
    Ok(identity_residuals(&isoperimetric_report(sol, grid)?))
}

pub fn identity_residuals(report: &IsoperimetricReport) -> IdentityResiduals {
    IdentityResiduals {
        green: (report.length - report.lambda * report.int_phi).abs() / report.length,
        rayleigh: (report.area - report.lambda * report.int_phi_sq).abs() / report.area,
    }
}

/// Slacks of the chain `(2/r)A ≤ L²/(2πr) ≤ r∫|∇ψ|²dθ` used to prove the
/// decrease criterion: the first is the isoperimetric inequality, the second
/// Cauchy–Schwarz on the circle. Both are nonnegative up to rounding.
pub fn proof_chain_slacks(report: &IsoperimetricReport, r: f64) -> (f64, f64) {
    let lhs = 2.0 / r * report.area;
    let mid = report.length * report.length / (2.0 * PI * r);
    (mid - lhs, report.boundary_energy - mid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::ConformalMap;
    use crate::eigensolver::{solve, BasisSpec};
    use crate::special_functions::BesselConstants;
    use num_complex::Complex64;

    fn report(map: &ConformalMap, r: f64) -> IsoperimetricReport {
        let grid = GridSpec::default();
        let sol = solve(map, r, &BasisSpec::default(), &grid).unwrap();
        isoperimetric_report(&sol, &grid).unwrap()
    }

    #[test]
    fn unit_disk_equality() {
        let c = BesselConstants::get();
        let rep = report(&ConformalMap::identity(), 1.0);
        let expected_l = 2.0 * PI.sqrt() * c.j0;
        assert!((rep.length - expected_l).abs() < 1e-8 * expected_l);
        assert!((rep.area - c.j0_squared).abs() < 1e-8 * c.j0_squared);
        assert!(rep.relative_margin().abs() < 1e-9);
        let res = identity_residuals(&rep);
        assert!(res.green < 1e-8 && res.rayleigh < 1e-8);
    }

    #[test]
    fn linear_maps_are_equality_cases() {
        for a in [Complex64::new(0.7, 0.0), Complex64::new(1.2, -0.5)] {
            let rep = report(&ConformalMap::linear(a).unwrap(), 0.6);
            assert!(rep.relative_margin().abs() < 1e-9);
        }
    }

    #[test]
    fn strict_off_disks() {
        let map = ConformalMap::from_real(&[0.0, 1.0, 0.3]).unwrap();
        let rep = report(&map, 0.8);
        assert!(rep.holds());
        assert!(rep.relative_margin() > 1e-4);
        // the two forms differ by the factor λ² up to the identity residuals
        let res = identity_residuals(&rep);
        let scaled = rep.lambda * rep.lambda * rep.alt_margin;
        assert!((scaled - rep.margin).abs() <= 1e-6 * rep.length * rep.length);
        assert!(res.green < 1e-6 && res.rayleigh < 1e-6);
        let (s1, s2) = proof_chain_slacks(&rep, 0.8);
        assert!(s1 > 0.0 && s2 > 0.0);
    }
}
