//! The isoperimetric inequality (∮|∇φ|)² ≥ 4π∫|∇φ|² for the first
//! eigenfunction, evaluated on the disk side of the map.
//!
//! cargo run --example payne_rayner

use schwarz_eigen::payne_rayner::{identity_residuals, isoperimetric_report};
use schwarz_eigen::{solve, BasisSpec, ConformalMap, GridSpec};

fn main() -> schwarz_eigen::Result<()> {
    let basis = BasisSpec::default();
    let grid = GridSpec::default();
    for (coeffs, r) in [
        ("0,1", 1.0),
        ("0,2", 0.5),
        ("0,1,0.3", 0.8),
        ("0,1,0.5", 0.9),
        ("0,0,1", 0.7),
    ] {
        let f: ConformalMap = coeffs.parse()?;
        let sol = solve(&f, r, &basis, &grid)?;
        let rep = isoperimetric_report(&sol, &grid)?;
        let res = identity_residuals(&rep);
        println!(
            "f = {coeffs:<8} r = {r:<4} L = {:.10} A = {:.10} (L²−4πA)/L² = {:+.3e}  residuals {:.1e} {:.1e}",
            rep.length,
            rep.area,
            rep.relative_margin(),
            res.green,
            res.rayleigh
        );
    }
    Ok(())
}
