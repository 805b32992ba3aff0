//! The Bessel disk ds = J₁(j₀|z|)|dz|: isoperimetric equality, total
//! curvature 4π and the curves of its conformal factor and curvature.
//!
//! cargo run --example bessel_disk

use schwarz_eigen::bessel_disk::{curvature, figure_profiles, length_area, total_curvature};

fn main() -> schwarz_eigen::Result<()> {
    let la = length_area()?;
    println!(
        "L = {:.15}  A = {:.15}  L²/(4πA) = {:.15}",
        la.length,
        la.area,
        la.isoperimetric_ratio()
    );
    for eps in [1e-2, 1e-4] {
        let t = total_curvature(eps)?;
        println!(
            "eps = {eps:e}: annulus {:.12}  boundary {:.12}  origin {:.12}  total {:.12} (4π = {:.12})",
            t.annulus,
            t.boundary_term,
            t.origin_limit,
            t.extrapolated,
            4.0 * std::f64::consts::PI
        );
    }
    for s in [0.01, 0.1, 0.5, 0.9, 1.0] {
        println!("K({s}) = {:.6}", curvature(s)?);
    }
    let p = figure_profiles(100)?;
    let peak = p.rho_local_maxima()[0];
    println!(
        "rho peaks at s ≈ {:.2} with value {:.6}",
        p.s[peak], p.rho_definition[peak]
    );
    Ok(())
}
