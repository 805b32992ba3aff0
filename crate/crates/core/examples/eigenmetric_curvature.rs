//! Total curvature of the eigenfunction metric |∇ψ|²|dz|²: boundary term plus
//! 2π per critical point. Equals 4π for disks; tested here on convex images.
//!
//! cargo run --example eigenmetric_curvature

use std::f64::consts::PI;

use schwarz_eigen::eigenmetric::total_curvature_eigenmetric;
use schwarz_eigen::{solve, BasisSpec, ConformalMap, GridSpec};

fn main() -> schwarz_eigen::Result<()> {
    let basis = BasisSpec::default();
    let grid = GridSpec::default();
    for (coeffs, r) in [
        ("0,1", 1.0),
        ("0,0.7", 1.0),
        ("0,1,0.2", 0.8),
        ("0,1,0.3", 0.9),
    ] {
        let f: ConformalMap = coeffs.parse()?;
        let sol = solve(&f, r, &basis, &grid)?;
        let s = total_curvature_eigenmetric(&sol, &grid)?;
        let points: Vec<String> = s
            .critical_points
            .iter()
            .map(|p| format!("{:.6}", p.z))
            .collect();
        println!(
            "f = {coeffs:<8} r = {r}: boundary {:.10} + interior {:.10} = {:.12} (−4π: {:+.1e}){} critical points [{}]",
            s.boundary_term,
            s.interior_term,
            s.total,
            s.total - 4.0 * PI,
            if s.experimental { " [experimental]" } else { "" },
            points.join(", ")
        );
    }
    Ok(())
}
