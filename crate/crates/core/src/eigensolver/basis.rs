//! Dirichlet-conforming polynomial basis on the disk `rD`.
//!
//! `b_{m,k}(z) = (1 - u) P_k(2u - 1) · Re/Im (z/r)^{|m|}` with `u = |z|²/r²`,
//! where `P_k = P_k^{(2,|m|)}` is the Jacobi polynomial orthogonal for the
//! weight `(1-u)² u^{|m|}` of the unweighted mass matrix. Cosine (`Re`) for
//! `m >= 0`, sine (`Im`) for `m < 0`. Every function vanishes on `|z| = r`.
//!
//! Derivatives are taken analytically in Cartesian form, so there is no
//! coordinate singularity at the origin.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_DIMENSION: usize = 8192;
pub const DEFAULT_M_MAX: usize = 8;
pub const DEFAULT_K_MAX: usize = 16;

/// Angular and radial truncation of the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisSpec {
    pub m_max: usize,
    pub k_max: usize,
}

impl Default for BasisSpec {
    fn default() -> Self {
        Self {
            m_max: DEFAULT_M_MAX,
            k_max: DEFAULT_K_MAX,
        }
    }
}

impl BasisSpec {
    pub fn new(m_max: usize, k_max: usize) -> Result<Self> {
        let spec = Self { m_max, k_max };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 {
            return Err(Error::InvalidArgument("k_max must be at least 1".into()));
        }
        if self.dimension() > MAX_DIMENSION {
            return Err(Error::InvalidArgument(format!(
                "basis dimension {} exceeds {MAX_DIMENSION}",
                self.dimension()
            )));
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        (2 * self.m_max + 1) * self.k_max
    }

    /// Signed angular frequency of each basis function, in storage order:
    /// `0, 1, ..., m_max` (cosine) then `-1, ..., -m_max` (sine), each with
    /// `k_max` radial functions.
    pub fn frequencies(&self) -> Vec<i64> {
        let m = self.m_max as i64;
        (0..=m)
            .chain((1..=m).map(|k| -k))
            .flat_map(|f| std::iter::repeat_n(f, self.k_max))
            .collect()
    }

    /// Storage index of `b_{m,k}`.
    pub fn index(&self, m: i64, k: usize) -> usize {
        let block = if m >= 0 {
            m as usize
        } else {
            self.m_max + (-m) as usize
        };
        block * self.k_max + k
    }
}

/// Value, gradient and Hessian of every basis function at one point.
#[derive(Clone, Debug, Default)]
pub struct BasisJets {
    pub value: Vec<f64>,
    pub dx: Vec<f64>,
    pub dy: Vec<f64>,
    pub dxx: Vec<f64>,
    pub dxy: Vec<f64>,
    pub dyy: Vec<f64>,
}

/// `P_n^{(α,β)}(x)` and its first two derivatives for `n < count`.
pub(super) fn jacobi_family(count: usize, alpha: f64, beta: f64, x: f64, out: &mut [[f64; 3]]) {
    out[0] = [1.0, 0.0, 0.0];
    if count == 1 {
        return;
    }
    let slope = 0.5 * (alpha + beta + 2.0);
    out[1] = [(alpha + 1.0) + slope * (x - 1.0), slope, 0.0];
    for n in 2..count {
        let nf = n as f64;
        let s = 2.0 * nf + alpha + beta;
        let a1 = 2.0 * nf * (nf + alpha + beta) * (s - 2.0);
        let a2 = (s - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (s - 2.0) * (s - 1.0) * s;
        let a4 = 2.0 * (nf + alpha - 1.0) * (nf + beta - 1.0) * s;
        let lin = a2 + a3 * x;
        let [p1, d1, e1] = out[n - 1];
        let [p2, d2, e2] = out[n - 2];
        out[n] = [
            (lin * p1 - a4 * p2) / a1,
            (lin * d1 + a3 * p1 - a4 * d2) / a1,
            (lin * e1 + 2.0 * a3 * d1 - a4 * e2) / a1,
        ];
    }
}

/// Evaluates all basis functions of `spec` on the disk of radius `r` at `z`.
/// Second derivatives are filled only when `hessian` is set.
pub fn eval_jets(spec: &BasisSpec, r: f64, z: Complex64, hessian: bool) -> BasisJets {
    let dim = spec.dimension();
    let mut jets = BasisJets {
        value: vec![0.0; dim],
        dx: vec![0.0; dim],
        dy: vec![0.0; dim],
        ..Default::default()
    };
    if hessian {
        jets.dxx = vec![0.0; dim];
        jets.dxy = vec![0.0; dim];
        jets.dyy = vec![0.0; dim];
    }

    let zr = z / r;
    let u = zr.norm_sqr();
    let x = 2.0 * u - 1.0;
    let (ux, uy) = (2.0 * z.re / (r * r), 2.0 * z.im / (r * r));
    let uxx = 2.0 / (r * r);

    // zr^j for j = 0..=m_max
    let mut powers = Vec::with_capacity(spec.m_max + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=spec.m_max {
        powers.push(acc);
        acc *= zr;
    }

    let mut family = vec![[0.0; 3]; spec.k_max];
    for m in 0..=spec.m_max {
        jacobi_family(spec.k_max, 2.0, m as f64, x, &mut family);
        let mf = m as f64;
        let p = powers[m];
        let dp = if m >= 1 {
            powers[m - 1] * (mf / r)
        } else {
            Complex64::new(0.0, 0.0)
        };
        let ddp = if m >= 2 {
            powers[m - 2] * (mf * (mf - 1.0) / (r * r))
        } else {
            Complex64::new(0.0, 0.0)
        };
        // (h, hx, hy, hxx, hxy, hyy) for the cosine and sine companions
        let cos_part = (p.re, dp.re, -dp.im, ddp.re, -ddp.im, -ddp.re);
        let sin_part = (p.im, dp.im, dp.re, ddp.im, ddp.re, -ddp.im);
        let parts: &[(i64, _)] = if m == 0 {
            &[(0, cos_part)]
        } else {
            &[(m as i64, cos_part), (-(m as i64), sin_part)]
        };
        for (k, &[pk, dpk, ddpk]) in family.iter().enumerate() {
            // g(u) = (1-u) P_k(2u-1)
            let g = (1.0 - u) * pk;
            let gu = -pk + 2.0 * (1.0 - u) * dpk;
            let guu = -4.0 * dpk + 4.0 * (1.0 - u) * ddpk;
            for &(signed_m, (h, hx, hy, hxx, hxy, hyy)) in parts {
                let i = spec.index(signed_m, k);
                jets.value[i] = g * h;
                jets.dx[i] = gu * ux * h + g * hx;
                jets.dy[i] = gu * uy * h + g * hy;
                if hessian {
                    jets.dxx[i] = guu * ux * ux * h + gu * uxx * h + 2.0 * gu * ux * hx + g * hxx;
                    jets.dyy[i] = guu * uy * uy * h + gu * uxx * h + 2.0 * gu * uy * hy + g * hyy;
                    jets.dxy[i] = guu * ux * uy * h + gu * (ux * hy + uy * hx) + g * hxy;
                }
            }
        }
    }
    jets
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_indexing() {
        let spec = BasisSpec::default();
        assert_eq!(spec.dimension(), 272);
        let freqs = spec.frequencies();
        assert_eq!(freqs.len(), 272);
        for m in -(spec.m_max as i64)..=spec.m_max as i64 {
            for k in 0..spec.k_max {
                assert_eq!(freqs[spec.index(m, k)], m);
            }
        }
        assert!(BasisSpec::new(3, 0).is_err());
        assert!(BasisSpec::new(100, 100).is_err());
    }

    #[test]
    fn jacobi_matches_closed_form() {
        // P_2^{(a,b)} closed form
        let (a, b) = (2.0_f64, 3.0_f64);
        let mut out = vec![[0.0; 3]; 3];
        for x in [-0.9, -0.2, 0.0, 0.4, 1.0] {
            jacobi_family(3, a, b, x, &mut out);
            let c0 = (a + 1.0) * (a + 2.0) / 2.0;
            let c1 = (a + 2.0) * (a + b + 3.0) / 2.0;
            let c2 = (a + b + 3.0) * (a + b + 4.0) / 8.0;
            let expected = c0 + c1 * (x - 1.0) + c2 * (x - 1.0).powi(2);
            assert!((out[2][0] - expected).abs() < 1e-12);
            assert!((out[2][1] - (c1 + 2.0 * c2 * (x - 1.0))).abs() < 1e-12);
            assert!((out[2][2] - 2.0 * c2).abs() < 1e-12);
        }
    }

    #[test]
    fn vanishes_on_boundary() {
        let spec = BasisSpec::new(5, 6).unwrap();
        let r = 0.7;
        for j in 0..17 {
            let z = Complex64::from_polar(r, 0.37 * j as f64);
            let jets = eval_jets(&spec, r, z, false);
            assert!(jets.value.iter().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let spec = BasisSpec::new(4, 5).unwrap();
        let r = 0.8;
        let h = 1e-6;
        for z in [
            Complex64::new(0.1, -0.2),
            Complex64::new(-0.5, 0.3),
            Complex64::new(0.0, 0.0),
        ] {
            let j = eval_jets(&spec, r, z, true);
            let xp = eval_jets(&spec, r, z + h, false);
            let xm = eval_jets(&spec, r, z - h, false);
            let yp = eval_jets(&spec, r, z + Complex64::new(0.0, h), false);
            let ym = eval_jets(&spec, r, z - Complex64::new(0.0, h), false);
            for i in 0..spec.dimension() {
                let scale = 1.0 + j.dx[i].abs() + j.dy[i].abs();
                assert!(((xp.value[i] - xm.value[i]) / (2.0 * h) - j.dx[i]).abs() < 1e-6 * scale);
                assert!(((yp.value[i] - ym.value[i]) / (2.0 * h) - j.dy[i]).abs() < 1e-6 * scale);
                let hs = 1.0 + j.dxx[i].abs() + j.dxy[i].abs() + j.dyy[i].abs();
                assert!(((xp.dx[i] - xm.dx[i]) / (2.0 * h) - j.dxx[i]).abs() < 1e-5 * hs);
                assert!(((yp.dy[i] - ym.dy[i]) / (2.0 * h) - j.dyy[i]).abs() < 1e-5 * hs);
                assert!(((yp.dx[i] - ym.dx[i]) / (2.0 * h) - j.dxy[i]).abs() < 1e-5 * hs);
                assert!(((xp.dy[i] - xm.dy[i]) / (2.0 * h) - j.dxy[i]).abs() < 1e-5 * hs);
            }
        }
    }
}
