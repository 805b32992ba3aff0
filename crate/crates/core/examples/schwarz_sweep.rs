//! Monotonicity of Φ(r) = r²λ(f(rD))/j₀² along the radius.
//!
//! cargo run --example schwarz_sweep -- 0,1,0.3

use schwarz_eigen::schwarz::sweep;
use schwarz_eigen::{BasisSpec, ConformalMap, GridSpec};

fn main() -> schwarz_eigen::Result<()> {
    let coeffs = std::env::args().nth(1).unwrap_or_else(|| "0,1,0.3".into());
    let f: ConformalMap = coeffs.parse()?;
    let report = sweep(
        &f,
        0.05,
        0.95,
        10,
        &BasisSpec::default(),
        &GridSpec::default(),
    )?;
    println!("f = {f}");
    println!(
        "{:>6} {:>20} {:>14} {:>14}",
        "r", "lambda", "phi", "2λ/r + dλ/dr"
    );
    for p in &report.points {
        println!(
            "{:>6.3} {:>20.12} {:>14.10} {:>14.6e}",
            p.r, p.lambda, p.phi, p.decrease_criterion
        );
    }
    if !report.skipped.is_empty() {
        println!("skipped critical radii: {:?}", report.skipped);
    }
    println!("verdict: {}", report.verdict);
    Ok(())
}
