//! First Dirichlet eigenvalues of conformal images of disks.
//!
//! For a polynomial map `f` of the unit disk the library computes
//! `λ(f(rD))` by solving the pulled-back weighted problem
//! `Δψ + λ|f'|²ψ = 0` on `rD`, and builds on it:
//!
//! * [`schwarz`]: the quotient `Φ(r) = r²λ(r)/j₀²`, the boundary-integral
//!   shape derivative `dλ/dr = −r∫|∇ψ|²dθ` and monotonicity sweeps;
//! * [`payne_rayner`]: the isoperimetric inequality `L² ≥ 4πA` for the
//!   eigenfunction metric `|∇φ|²|dw|²`;
//! * [`bessel_disk`]: the rotationally symmetric equality case;
//! * [`eigenmetric`]: total curvature of `|∇ψ|²|dz|²`.

pub mod bessel_disk;
pub mod cli;
pub mod conformal;
pub mod eigenmetric;
pub mod eigensolver;
pub mod error;
pub mod payne_rayner;
pub mod quadrature;
pub mod schwarz;
pub mod selftest;
pub mod special_functions;

pub use conformal::ConformalMap;
pub use eigensolver::{solve, BasisSpec, EigenSolution, GridSpec};
pub use error::{Error, Result};
