//! Polynomial maps `f(z) = Σ a_k z^k` of the unit disk.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Highest supported polynomial degree.
pub const MAX_DEGREE: usize = 32;

/// A finite complex power series. Coefficients are stored index 0 first with
/// trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalMap {
    coeffs: Vec<Complex64>,
}

impl ConformalMap {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 2 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::Coefficients("coefficients must be finite".into()));
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::Coefficients(format!(
                "degree {} exceeds the maximum of {MAX_DEGREE}",
                coeffs.len() - 1
            )));
        }
        if coeffs.len() < 2 {
            return Err(Error::Coefficients(
                "map must have at least two coefficients".into(),
            ));
        }
        // a1 = 0 is allowed (f = z^2 and other branched maps are legitimate
        // Riemann-surface inputs); the derivative just must not vanish identically.
        if coeffs[1..].iter().all(|c| c.norm() == 0.0) {
            return Err(Error::Coefficients("map is constant".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn identity() -> Self {
        Self::from_real(&[0.0, 1.0]).expect("identity is valid")
    }

    /// `f(z) = a z`.
    pub fn linear(a: Complex64) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0), a])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `f'(0) = a₁`.
    pub fn a1(&self) -> Complex64 {
        self.coeffs[1]
    }

    /// True when `a_k = 0` for every `k ≥ 2`.
    pub fn is_linear(&self) -> bool {
        self.coeffs[2..].iter().all(|c| c.norm() == 0.0)
    }

    /// `c·f`.
    pub fn scaled(&self, c: Complex64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    pub fn eval_deriv(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, &a)| {
                acc * z + a * k as f64
            })
    }

    /// Conformal weight `|f'(z)|²`.
    pub fn weight(&self, z: Complex64) -> f64 {
        self.eval_deriv(z).norm_sqr()
    }

    /// Coefficients of `f'`, index 0 first.
    pub fn derivative_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect()
    }

    /// Distinct moduli `|z*| < r_max` over the zeros `z*` of `f'`, ascending.
    pub fn critical_radii(&self, r_max: f64) -> Vec<f64> {
        let mut radii: Vec<f64> = self
            .critical_points()
            .into_iter()
            .map(|z| z.norm())
            .filter(|&s| s < r_max)
            .collect();
        radii.sort_by(f64::total_cmp);
        radii.dedup_by(|a, b| (*a - *b).abs() <= 1e-7);
        radii
    }

    /// All zeros of `f'` (with multiplicity), found by Aberth iteration.
    pub fn critical_points(&self) -> Vec<Complex64> {
        polynomial_roots(&self.derivative_coeffs())
    }

    /// Sufficient coefficient condition `Σ_{k≥2} k|a_k| r^{k-1} < |a₁|` for
    /// injectivity on `rD`. `false` means "not certified".
    pub fn univalence_bound(&self, r: f64) -> bool {
        let tail: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .skip(2)
            .map(|(k, a)| k as f64 * a.norm() * r.powi(k as i32 - 1))
            .sum();
        tail < self.coeffs[1].norm()
    }

    /// `Σ k |a_k|`, the scale used by root residual checks.
    pub fn derivative_scale(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| k as f64 * a.norm())
            .sum()
    }
}

impl FromStr for ConformalMap {
    type Err = Error;

    /// Comma-separated coefficients, index 0 first; each entry is a bare real
    /// or a `re:im` pair. `0,1,0.3` is `z + 0.3z²`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| -> Result<f64> {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Coefficients(format!("cannot parse `{}`", t.trim())))
        };
        let coeffs = s
            .split(',')
            .map(|item| match item.split_once(':') {
                Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
                None => Ok(Complex64::new(parse(item)?, 0.0)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for ConformalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if a.im == 0.0 {
                write!(f, "{}", a.re)?;
            } else {
                write!(f, "{}:{}", a.re, a.im)?;
            }
        }
        Ok(())
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Roots of `Σ c_k z^k` (index 0 first) by Aberth–Ehrlich iteration with a
/// final Newton polish.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    let degree = c.len().saturating_sub(1);
    if degree == 0 {
        return Vec::new();
    }
    // Exact zeros at the origin are split off so the iteration only sees
    // the nondegenerate part.
    let zeros_at_origin = c.iter().take_while(|a| a.norm() == 0.0).count();
    let c = &c[zeros_at_origin..];
    let d = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    if d == 0 {
        return roots;
    }

    let lead = c[d];
    let bound = 1.0
        + c[..d]
            .iter()
            .map(|a| (a / lead).norm())
            .fold(0.0_f64, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, angle)
        })
        .collect();

    for _ in 0..500 {
        let mut max_step = 0.0_f64;
        for k in 0..d {
            let (p, dp) = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step <= 1e-16 {
            break;
        }
    }
    for root in &mut z {
        for _ in 0..3 {
            let (p, dp) = horner(c, *root);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            let candidate = *root - step;
            if horner(c, candidate).0.norm() <= p.norm() {
                *root = candidate;
            } else {
                break;
            }
        }
    }
    roots.extend(z);
    roots
}

/// A (possibly non-univalent) map restricted to `rD`, viewed as the Riemann
/// surface `Σ_r` spread over the image with multiplicity.
#[derive(Clone, Debug)]
pub struct RiemannSurfaceSpec {
    pub map: ConformalMap,
    pub radius: f64,
}

impl RiemannSurfaceSpec {
    pub fn new(map: ConformalMap, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "radius must lie in (0, 1), got {radius}"
            )));
        }
        Ok(Self { map, radius })
    }

    /// Nearest critical radius of the map, if any lies in the unit disk.
    pub fn nearest_critical_radius(&self) -> Option<f64> {
        self.map
            .critical_radii(1.0)
            .into_iter()
            .min_by(|a, b| (a - self.radius).abs().total_cmp(&(b - self.radius).abs()))
    }

    /// Fails when `radius` is within `window` of a critical radius.
    pub fn check_regular(&self, window: f64) -> Result<()> {
        match self.nearest_critical_radius() {
            Some(c) if (c - self.radius).abs() <= window => Err(Error::NearCriticalRadius {
                radius: self.radius,
                critical: c,
                window,
            }),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluation_examples() {
        let id = ConformalMap::identity();
        assert_eq!(id.eval(c(0.0, 0.5)), c(0.0, 0.5));
        assert_eq!(id.eval_deriv(c(0.0, 0.5)), c(1.0, 0.0));

        let f = ConformalMap::from_real(&[0.0, 1.0, 0.3]).unwrap();
        assert!((f.eval(c(0.5, 0.0)) - c(0.575, 0.0)).norm() < 1e-15);
        assert!((f.eval_deriv(c(0.5, 0.0)) - c(1.3, 0.0)).norm() < 1e-15);
        assert!((f.weight(c(0.5, 0.0)) - 1.69).abs() < 1e-15);

        let sq = ConformalMap::from_real(&[0.0, 0.0, 1.0]).unwrap();
        assert!((sq.eval_deriv(c(0.5, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        let z = Complex64::from_polar(0.3, 1.1);
        assert!((sq.weight(z) - 4.0 * 0.09).abs() < 1e-15);
        assert_eq!(id.weight(z), 1.0);
    }

    #[test]
    fn critical_radius_examples() {
        let f = ConformalMap::from_real(&[0.0, 1.0, 0.3]).unwrap();
        assert!(f.critical_radii(1.0).is_empty());
        let sq = ConformalMap::from_real(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(sq.critical_radii(1.0), vec![0.0]);
        let cubic = ConformalMap::from_real(&[0.0, 1.0, 0.0, -1.0 / 3.0]).unwrap();
        assert!(cubic.critical_radii(0.99).is_empty());
        assert_eq!(cubic.critical_points().len(), 2);
        assert!(ConformalMap::identity().critical_radii(1.0).is_empty());
    }

    #[test]
    fn roots_have_small_residual() {
        let maps = [
            "0,1,0.3",
            "0,1,0.5,0.2,0.1",
            "0,1,0:0.4,0.3:-0.2,0,0.05",
            "0,0,0,1",
            "1,2,3,4,5,6,7,8",
        ];
        for text in maps {
            let f: ConformalMap = text.parse().unwrap();
            let pts = f.critical_points();
            assert_eq!(pts.len(), f.degree() - 1, "{text}");
            for z in pts {
                assert!(
                    f.eval_deriv(z).norm() < 1e-10 * (1.0 + f.derivative_scale()),
                    "{text}: residual at {z}"
                );
            }
        }
    }

    #[test]
    fn univalence_examples() {
        let f = ConformalMap::from_real(&[0.0, 1.0, 0.3]).unwrap();
        assert!(f.univalence_bound(0.9));
        let g = ConformalMap::from_real(&[0.0, 1.0, 0.6]).unwrap();
        assert!(!g.univalence_bound(0.9));
        for r in [0.1, 0.5, 0.99] {
            assert!(ConformalMap::identity().univalence_bound(r));
        }
    }

    #[test]
    fn parse_and_display() {
        let f: ConformalMap = "0, 1, 0.3".parse().unwrap();
        assert_eq!(f, ConformalMap::from_real(&[0.0, 1.0, 0.3]).unwrap());
        let g: ConformalMap = "0,1:0.5,0:-2".parse().unwrap();
        assert_eq!(g.coeffs()[1], c(1.0, 0.5));
        assert_eq!(g.coeffs()[2], c(0.0, -2.0));
        assert_eq!(g.to_string().parse::<ConformalMap>().unwrap(), g);
        assert!("0,1,x".parse::<ConformalMap>().is_err());
        assert!("".parse::<ConformalMap>().is_err());
        assert!("1,0".parse::<ConformalMap>().is_err());
        let too_long = vec!["1"; 34].join(",");
        assert!(too_long.parse::<ConformalMap>().is_err());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let f = ConformalMap::from_real(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(f.degree(), 1);
        assert!(f.is_linear());
    }

    #[test]
    fn riemann_surface_regularity() {
        let sq = ConformalMap::from_real(&[0.0, 0.0, 1.0]).unwrap();
        let spec = RiemannSurfaceSpec::new(sq.clone(), 0.5).unwrap();
        assert!(spec.check_regular(1e-9).is_ok());
        // f' = (z - 0.5)(z + 0.5) has critical radius 0.5
        let g = ConformalMap::from_real(&[0.0, -0.25, 0.0, 1.0 / 3.0]).unwrap();
        let spec = RiemannSurfaceSpec::new(g, 0.5).unwrap();
        assert!(matches!(
            spec.check_regular(1e-9),
            Err(Error::NearCriticalRadius { .. })
        ));
        assert!(RiemannSurfaceSpec::new(sq, 1.0).is_err());
    }
}
