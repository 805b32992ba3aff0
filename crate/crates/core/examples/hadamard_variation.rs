//! Shape derivative dλ/dr = −r∫|∇ψ|²dθ against finite differences of λ.
//!
//! cargo run --example hadamard_variation

use schwarz_eigen::schwarz::{
    fd_derivative, fd_derivative_richardson, hadamard_derivative, lambda_of_r,
};
use schwarz_eigen::{BasisSpec, ConformalMap, GridSpec};

fn main() -> schwarz_eigen::Result<()> {
    let basis = BasisSpec::default();
    let grid = GridSpec::default();
    for coeffs in ["0,1", "0,1,0.3", "0,0,1"] {
        let f: ConformalMap = coeffs.parse()?;
        for r in [0.2, 0.5, 0.8] {
            let sol = lambda_of_r(&f, r, &basis, &grid)?;
            let boundary = hadamard_derivative(&sol, grid.n_ang)?;
            let plain = fd_derivative(&f, r, 1e-3, &basis, &grid)?;
            let rich = fd_derivative_richardson(&f, r, 1e-3, &basis, &grid)?;
            println!(
                "f = {coeffs:<8} r = {r}: boundary {boundary:.10e}  central {:.1e}  richardson {:.1e} (relative gaps)",
                (plain - boundary).abs() / boundary.abs(),
                (rich - boundary).abs() / boundary.abs()
            );
        }
    }
    Ok(())
}
