//! Non-univalent maps: f(z) = z² covers the disk of radius r² twice, and its
//! eigenvalue is j₀²/r⁴. Radii where f' vanishes are refused.
//!
//! cargo run --example riemann_surface

use schwarz_eigen::schwarz::{lambda_of_r, sweep};
use schwarz_eigen::special_functions::BesselConstants;
use schwarz_eigen::{BasisSpec, ConformalMap, GridSpec};

fn main() -> schwarz_eigen::Result<()> {
    let basis = BasisSpec::default();
    let grid = GridSpec::default();
    let j0_sq = BesselConstants::get().j0_squared;
    let square: ConformalMap = "0,0,1".parse()?;
    for r in [0.3, 0.6, 0.9] {
        let l = lambda_of_r(&square, r, &basis, &grid)?.lambda;
        println!(
            "z^2, r = {r}: lambda = {l:.12}  j0^2/r^4 = {:.12}",
            j0_sq / r.powi(4)
        );
    }

    // f'(z) = 1 − 2z vanishes at |z| = 0.5
    let folded: ConformalMap = "0,1,-1".parse()?;
    println!(
        "critical radii of {folded}: {:?}",
        folded.critical_radii(1.0)
    );
    match lambda_of_r(&folded, 0.5, &basis, &grid) {
        Err(e) => println!("r = 0.5 refused: {e}"),
        Ok(_) => unreachable!(),
    }
    let rep = sweep(&folded, 0.1, 0.9, 9, &basis, &grid)?;
    println!("sweep skipped {:?}; verdict {}", rep.skipped, rep.verdict);
    for p in &rep.points {
        println!(
            "  r = {:.2}  phi = {:.8}  univalent certified: {}",
            p.r, p.phi, p.univalent_certified
        );
    }
    Ok(())
}
