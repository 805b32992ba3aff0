//! Spectral Galerkin solver for the weighted Dirichlet problem
//! `Δψ + λ |f'|² ψ = 0` on `rD`, `ψ = 0` on `|z| = r`.
//!
//! `ψ` is the pullback `φ ∘ f` of the first eigenfunction of the image
//! domain, so `λ` is the first eigenvalue of `f(rD)` (counted with
//! multiplicity when `f` is not injective).

mod basis;

pub use basis::{eval_jets, BasisJets, BasisSpec, DEFAULT_K_MAX, DEFAULT_M_MAX, MAX_DIMENSION};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::conformal::ConformalMap;
use crate::error::{Error, Result};
use crate::quadrature::{CircleQuadrature, DiskQuadrature, DEFAULT_N_ANG, DEFAULT_N_RAD};

/// Relative residual `‖Kx − λMx‖ / (‖Kx‖ + λ‖Mx‖)` the polish aims for.
pub const RESIDUAL_TARGET: f64 = 1e-12;
/// Residual above which the solve is reported as non-converged.
const RESIDUAL_FAIL: f64 = 1e-9;

/// Quadrature resolution, independent of the radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    pub n_rad: usize,
    pub n_ang: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_rad: DEFAULT_N_RAD,
            n_ang: DEFAULT_N_ANG,
        }
    }
}

impl GridSpec {
    pub fn new(n_rad: usize, n_ang: usize) -> Self {
        Self { n_rad, n_ang }
    }

    pub fn disk(&self, r: f64) -> Result<DiskQuadrature> {
        DiskQuadrature::new(r, self.n_rad, self.n_ang)
    }

    pub fn circle(&self, r: f64) -> Result<CircleQuadrature> {
        CircleQuadrature::new(r, self.n_ang)
    }

    /// Both refinements doubled.
    pub fn refined(&self) -> Self {
        Self::new(2 * self.n_rad, 2 * self.n_ang)
    }

    /// Rejects grids too coarse for the basis polynomial degrees.
    pub fn check_resolves(&self, basis: &BasisSpec) -> Result<()> {
        let need = 2 * (basis.m_max + basis.k_max);
        if self.n_rad < need || self.n_ang < need {
            return Err(Error::InvalidArgument(format!(
                "grid {}x{} under-resolves basis ({}, {}); need at least {need} in each direction",
                self.n_rad, self.n_ang, basis.m_max, basis.k_max
            )));
        }
        Ok(())
    }
}

/// Stiffness `K_ij = ∫ ∇b_i·∇b_j` and weighted mass `M_ij = ∫ b_i b_j |f'|²`
/// over `rD`.
pub fn assemble(
    map: &ConformalMap,
    r: f64,
    basis: &BasisSpec,
    grid: &GridSpec,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "radius must lie in (0, 1], got {r}"
        )));
    }
    basis.validate()?;
    grid.check_resolves(basis)?;
    let quad = grid.disk(r)?;
    let (radii, radial_weights) = quad.radial();
    let angles = quad.angles();
    let dtheta = 2.0 * std::f64::consts::PI / angles.len() as f64;
    let freqs = signed_frequencies(basis);
    let nf = freqs.len();
    let kk = basis.k_max;

    // Angular factors T_a(θ) and T_a'(θ) for every signed frequency.
    let trig: Vec<Vec<(f64, f64)>> = angles
        .iter()
        .map(|&t| freqs.iter().map(|&m| angular(m, t)).collect())
        .collect();
    let radial: Vec<Vec<(f64, f64)>> = radii.iter().map(|&s| radial_factors(basis, r, s)).collect();

    // Map-independent angular Gram sums for the stiffness.
    let mut cos_gram = vec![0.0; nf * nf];
    let mut sin_gram = vec![0.0; nf * nf];
    for row in &trig {
        for a in 0..nf {
            for b in 0..nf {
                cos_gram[a * nf + b] += dtheta * row[a].0 * row[b].0;
                sin_gram[a * nf + b] += dtheta * row[a].1 * row[b].1;
            }
        }
    }

    let dim = basis.dimension();
    let mut k = DMatrix::<f64>::zeros(dim, dim);
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    let mut weighted = vec![0.0; nf * nf];
    for (q, &s) in radii.iter().enumerate() {
        weighted.iter_mut().for_each(|v| *v = 0.0);
        for (p, row) in trig.iter().enumerate() {
            let w = map.weight(quad.points()[q * angles.len() + p]) * dtheta;
            for a in 0..nf {
                let wa = w * row[a].0;
                for b in a..nf {
                    weighted[a * nf + b] += wa * row[b].0;
                }
            }
        }
        let ws = radial_weights[q];
        let rad = &radial[q];
        for a in 0..nf {
            let ma = freqs[a].unsigned_abs() as usize;
            for b in a..nf {
                let mb = freqs[b].unsigned_abs() as usize;
                let wab = ws * weighted[a * nf + b];
                let cab = ws * cos_gram[a * nf + b];
                let sab = ws * sin_gram[a * nf + b] / (s * s);
                for i in 0..kk {
                    let (ri, dri) = rad[ma * kk + i];
                    let row = a * kk + i;
                    for j in 0..kk {
                        let (rj, drj) = rad[mb * kk + j];
                        let col = b * kk + j;
                        m[(row, col)] += wab * ri * rj;
                        k[(row, col)] += cab * dri * drj + sab * ri * rj;
                    }
                }
            }
        }
    }
    // Only blocks a <= b were accumulated.
    for a in 0..nf {
        for b in (a + 1)..nf {
            for i in 0..kk {
                for j in 0..kk {
                    let (row, col) = (a * kk + i, b * kk + j);
                    m[(col, row)] = m[(row, col)];
                    k[(col, row)] = k[(row, col)];
                }
            }
        }
    }
    symmetrize(&mut k);
    symmetrize(&mut m);
    Ok((k, m))
}

/// Signed frequencies in block storage order.
fn signed_frequencies(basis: &BasisSpec) -> Vec<i64> {
    let m = basis.m_max as i64;
    (0..=m).chain((1..=m).map(|k| -k)).collect()
}

/// `(T(θ), T'(θ))` with `T = cos(mθ)` for `m >= 0` and `sin(|m|θ)` otherwise.
fn angular(m: i64, theta: f64) -> (f64, f64) {
    let mf = m.unsigned_abs() as f64;
    let (sin, cos) = (mf * theta).sin_cos();
    if m >= 0 {
        (cos, -mf * sin)
    } else {
        (sin, mf * cos)
    }
}

/// `(R, dR/ds)` for every `(|m|, k)`, `|m|`-major, at radius `s > 0`, where
/// `b = R(s) T(θ)`.
fn radial_factors(basis: &BasisSpec, r: f64, s: f64) -> Vec<(f64, f64)> {
    let t = s / r;
    let u = t * t;
    let mut out = Vec::with_capacity((basis.m_max + 1) * basis.k_max);
    let mut family = vec![[0.0; 3]; basis.k_max];
    for m in 0..=basis.m_max {
        basis::jacobi_family(basis.k_max, 2.0, m as f64, 2.0 * u - 1.0, &mut family);
        let tm = t.powi(m as i32);
        let dtm = if m == 0 {
            0.0
        } else {
            m as f64 * t.powi(m as i32 - 1)
        };
        for &[p, dp, _] in &family {
            let g = (1.0 - u) * p;
            let gu = -p + 2.0 * (1.0 - u) * dp;
            // d/ds = (1/r) d/dt, du/dt = 2t
            out.push((g * tm, (gu * 2.0 * t * tm + g * dtm) / r));
        }
    }
    out
}

fn symmetrize(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
}

/// Relative residual of a generalized eigenpair.
pub fn eigen_residual(k: &DMatrix<f64>, m: &DMatrix<f64>, lambda: f64, x: &DVector<f64>) -> f64 {
    let kx = k * x;
    let mx = m * x;
    let denom = kx.norm() + lambda.abs() * mx.norm();
    if denom == 0.0 {
        return 0.0;
    }
    (kx - mx * lambda).norm() / denom
}

/// Smallest eigenpair of `Kx = λMx` for symmetric `K` and SPD `M`.
///
/// The eigenvector is `M`-normalized (`xᵀMx = 1`) with its largest-magnitude
/// component positive.
pub fn smallest_eigenpair(k: &DMatrix<f64>, m: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    let n = k.nrows();
    if n == 0 || k.ncols() != n || m.nrows() != n || m.ncols() != n {
        return Err(Error::InvalidArgument(format!(
            "K is {}x{} and M is {}x{}; both must be square and equal",
            k.nrows(),
            k.ncols(),
            m.nrows(),
            m.ncols()
        )));
    }
    // Diagonal equilibration
    let mut scale = DVector::<f64>::zeros(n);
    for i in 0..n {
        let d = m[(i, i)];
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::Factorization(format!(
                "mass matrix diagonal entry {i} is {d}"
            )));
        }
        scale[i] = 1.0 / d.sqrt();
    }
    let ks = DMatrix::from_fn(n, n, |i, j| k[(i, j)] * scale[i] * scale[j]);
    let ms = DMatrix::from_fn(n, n, |i, j| m[(i, j)] * scale[i] * scale[j]);

    let chol = ms
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Factorization("mass matrix is not positive definite".into()))?;
    let l = chol.l();
    // C = L⁻¹ K L⁻ᵀ
    let y = l
        .solve_lower_triangular(&ks)
        .ok_or_else(|| Error::Factorization("singular Cholesky factor".into()))?;
    let mut c = l
        .solve_lower_triangular(&y.transpose())
        .ok_or_else(|| Error::Factorization("singular Cholesky factor".into()))?;
    symmetrize(&mut c);

    let eig = SymmetricEigen::new(c);
    let (imin, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    let w = eig.eigenvectors.column(imin).into_owned();
    let mut x = l
        .transpose()
        .solve_upper_triangular(&w)
        .ok_or_else(|| Error::Factorization("singular Cholesky factor".into()))?;
    let mut lambda = rayleigh(&ks, &ms, &x);

    // Shifted inverse iteration polish
    for _ in 0..3 {
        if eigen_residual(&ks, &ms, lambda, &x) <= RESIDUAL_TARGET {
            break;
        }
        let shift = lambda - 1e-10 * lambda.abs().max(1.0);
        let a = &ks - &ms * shift;
        let Some(next) = a.lu().solve(&(&ms * &x)) else {
            break;
        };
        if next.iter().all(|v| v.is_finite()) {
            x = next;
            lambda = rayleigh(&ks, &ms, &x);
        }
    }

    let residual = eigen_residual(&ks, &ms, lambda, &x);
    if residual.is_nan() || residual > RESIDUAL_FAIL {
        return Err(Error::NonConvergence { residual });
    }

    let mut x = x.component_mul(&scale);
    let norm = (x.dot(&(m * &x))).sqrt();
    x /= norm;
    let imax = x.iamax();
    if x[imax] < 0.0 {
        x = -x;
    }
    Ok((lambda, x))
}

fn rayleigh(k: &DMatrix<f64>, m: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    x.dot(&(k * x)) / x.dot(&(m * x))
}

/// `ψ` and its gradient at one point.
#[derive(Clone, Copy, Debug)]
pub struct PointField {
    pub z: Complex64,
    pub psi: f64,
    pub grad: [f64; 2],
}

impl PointField {
    pub fn grad_norm_sqr(&self) -> f64 {
        self.grad[0] * self.grad[0] + self.grad[1] * self.grad[1]
    }
}

/// Solved first eigenpair of the pulled-back problem on `rD`.
#[derive(Clone, Debug)]
pub struct EigenSolution {
    pub lambda: f64,
    pub coeffs: DVector<f64>,
    pub radius: f64,
    pub map: ConformalMap,
    pub basis: BasisSpec,
    /// Relative residual of the discrete generalized eigenproblem.
    pub residual: f64,
}

/// Assembles and solves; the eigenfunction sign is fixed so that `ψ(0) > 0`.
pub fn solve(
    map: &ConformalMap,
    r: f64,
    basis: &BasisSpec,
    grid: &GridSpec,
) -> Result<EigenSolution> {
    let (k, m) = assemble(map, r, basis, grid)?;
    let (lambda, mut coeffs) = smallest_eigenpair(&k, &m)?;
    let residual = eigen_residual(&k, &m, lambda, &coeffs);
    let mut sol = EigenSolution {
        lambda,
        coeffs: coeffs.clone(),
        radius: r,
        map: map.clone(),
        basis: *basis,
        residual,
    };
    if sol.psi_unchecked(Complex64::new(0.0, 0.0)) < 0.0 {
        coeffs.neg_mut();
        sol.coeffs = coeffs;
    }
    Ok(sol)
}

impl EigenSolution {
    fn check_inside(&self, z: Complex64) -> Result<()> {
        if z.norm() > self.radius * (1.0 + 1e-12) {
            return Err(Error::OutsideDomain(z.norm()));
        }
        Ok(())
    }

    fn dot(&self, values: &[f64]) -> f64 {
        self.coeffs.iter().zip(values).map(|(c, v)| c * v).sum()
    }

    fn psi_unchecked(&self, z: Complex64) -> f64 {
        self.dot(&eval_jets(&self.basis, self.radius, z, false).value)
    }

    /// `ψ(z)` for `|z| <= r`.
    pub fn psi(&self, z: Complex64) -> Result<f64> {
        self.check_inside(z)?;
        Ok(self.psi_unchecked(z))
    }

    /// `∇ψ(z) = (∂xψ, ∂yψ)`.
    pub fn grad_psi(&self, z: Complex64) -> Result<[f64; 2]> {
        self.check_inside(z)?;
        let j = eval_jets(&self.basis, self.radius, z, false);
        Ok([self.dot(&j.dx), self.dot(&j.dy)])
    }

    /// `|∇ψ(z)|`.
    pub fn grad_psi_norm(&self, z: Complex64) -> Result<f64> {
        let [gx, gy] = self.grad_psi(z)?;
        Ok(gx.hypot(gy))
    }

    /// Gradient and Hessian `[[ψxx, ψxy], [ψxy, ψyy]]`.
    pub fn grad_and_hessian(&self, z: Complex64) -> Result<([f64; 2], [[f64; 2]; 2])> {
        self.check_inside(z)?;
        let j = eval_jets(&self.basis, self.radius, z, true);
        let xy = self.dot(&j.dxy);
        Ok((
            [self.dot(&j.dx), self.dot(&j.dy)],
            [[self.dot(&j.dxx), xy], [xy, self.dot(&j.dyy)]],
        ))
    }

    /// `ψ` and `∇ψ` at every node of `quad`, in node order. The grid radius
    /// must not exceed `r`. Uses the separated form `b = R(s)T(θ)`.
    pub fn fields_on(&self, quad: &DiskQuadrature) -> Result<Vec<PointField>> {
        if quad.radius() > self.radius * (1.0 + 1e-12) {
            return Err(Error::OutsideDomain(quad.radius()));
        }
        let freqs = signed_frequencies(&self.basis);
        let kk = self.basis.k_max;
        let trig: Vec<Vec<(f64, f64)>> = quad
            .angles()
            .iter()
            .map(|&t| freqs.iter().map(|&m| angular(m, t)).collect())
            .collect();
        let (radii, _) = quad.radial();
        let n_ang = quad.angles().len();
        let mut out = Vec::with_capacity(quad.len());
        for (q, &s) in radii.iter().enumerate() {
            let rad = radial_factors(&self.basis, self.radius, s);
            // per-frequency radial profiles of ψ and ∂sψ
            let profiles: Vec<(f64, f64)> = freqs
                .iter()
                .enumerate()
                .map(|(a, &m)| {
                    let ma = m.unsigned_abs() as usize;
                    (0..kk).fold((0.0, 0.0), |(v, d), k| {
                        let c = self.coeffs[a * kk + k];
                        let (rv, rd) = rad[ma * kk + k];
                        (v + c * rv, d + c * rd)
                    })
                })
                .collect();
            for (p, row) in trig.iter().enumerate() {
                let (mut psi, mut ds, mut dth) = (0.0, 0.0, 0.0);
                for (&(v, d), &(t, dt)) in profiles.iter().zip(row) {
                    psi += v * t;
                    ds += d * t;
                    dth += v * dt;
                }
                let z = quad.points()[q * n_ang + p];
                let (c, sn) = (z.re / s, z.im / s);
                out.push(PointField {
                    z,
                    psi,
                    grad: [c * ds - sn * dth / s, sn * ds + c * dth / s],
                });
            }
        }
        Ok(out)
    }

    /// `|∇ψ|` at each node of the boundary circle with `n_ang` points.
    pub fn boundary_gradient(&self, n_ang: usize) -> Result<(CircleQuadrature, Vec<f64>)> {
        let circle = CircleQuadrature::new(self.radius, n_ang)?;
        let values = circle
            .points()
            .iter()
            .map(|&z| self.grad_psi_norm(z))
            .collect::<Result<Vec<_>>>()?;
        Ok((circle, values))
    }
}
