//! First Dirichlet eigenvalue of a disk and of a polynomial image of a disk.
//!
//! cargo run --example disk_eigenvalue

use schwarz_eigen::special_functions::BesselConstants;
use schwarz_eigen::{solve, BasisSpec, ConformalMap, GridSpec};

fn main() -> schwarz_eigen::Result<()> {
    let basis = BasisSpec::default();
    let grid = GridSpec::default();
    let j0_sq = BesselConstants::get().j0_squared;

    for r in [0.25, 0.5, 1.0] {
        let sol = solve(&ConformalMap::identity(), r, &basis, &grid)?;
        println!(
            "disk r = {r:<4}  lambda = {:.15}  j0^2/r^2 = {:.15}  residual = {:.1e}",
            sol.lambda,
            j0_sq / (r * r),
            sol.residual
        );
    }

    // f(z) = z + 0.3 z^2 maps the disk of radius 0.8 onto a cardioid-like region
    let f: ConformalMap = "0,1,0.3".parse()?;
    let sol = solve(&f, 0.8, &basis, &grid)?;
    println!("f = {f}, r = 0.8: lambda = {:.15}", sol.lambda);
    let centre = num_complex::Complex64::new(0.0, 0.0);
    println!(
        "  psi(0) = {:.12}, |grad psi|(0) = {:.3e}",
        sol.psi(centre)?,
        sol.grad_psi_norm(centre)?
    );
    Ok(())
}
