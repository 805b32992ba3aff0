//! Gauss–Legendre rules and the polar tensor grids used for every integral
//! over a disk `rD` or a circle `C(0, r)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_N_RAD: usize = 64;
pub const DEFAULT_N_ANG: usize = 128;

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = if n == 0 {
        0.0
    } else {
        n as f64 * (x * p1 - p0) / (x * x - 1.0)
    };
    (p, dp)
}

/// Nodes (ascending) and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(1..=512).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "Gauss-Legendre order must be in 1..=512, got {n}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        if 2 * i + 1 == n {
            x = 0.0;
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    Ok((nodes, weights))
}

/// Equispaced angles `2πj/n`.
fn angles(n_ang: usize) -> Vec<f64> {
    (0..n_ang)
        .map(|j| 2.0 * PI * j as f64 / n_ang as f64)
        .collect()
}

/// Tensor Gauss–Legendre (radial) × trapezoid (angular) rule on the disk of
/// radius `r`. The area Jacobian `s` is folded into the weights, so callers
/// supply plain integrand samples. Nodes are stored radial-major.
#[derive(Clone, Debug)]
pub struct DiskQuadrature {
    radius: f64,
    radial_nodes: Vec<f64>,
    radial_weights: Vec<f64>,
    angles: Vec<f64>,
    points: Vec<Complex64>,
    weights: Vec<f64>,
}

impl DiskQuadrature {
    pub fn new(radius: f64, n_rad: usize, n_ang: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "disk radius must be positive, got {radius}"
            )));
        }
        if n_ang == 0 {
            return Err(Error::InvalidArgument("n_ang must be positive".into()));
        }
        let (x, w) = gauss_legendre(n_rad)?;
        let radial_nodes: Vec<f64> = x.iter().map(|&t| 0.5 * radius * (t + 1.0)).collect();
        let radial_weights: Vec<f64> = w
            .iter()
            .zip(&radial_nodes)
            .map(|(&wi, &s)| 0.5 * radius * wi * s)
            .collect();
        let angles = angles(n_ang);
        let dtheta = 2.0 * PI / n_ang as f64;
        let mut points = Vec::with_capacity(n_rad * n_ang);
        let mut weights = Vec::with_capacity(n_rad * n_ang);
        for (&s, &ws) in radial_nodes.iter().zip(&radial_weights) {
            for &theta in &angles {
                points.push(Complex64::from_polar(s, theta));
                weights.push(ws * dtheta);
            }
        }
        Ok(Self {
            radius,
            radial_nodes,
            radial_weights,
            angles,
            points,
            weights,
        })
    }

    pub fn with_defaults(radius: f64) -> Result<Self> {
        Self::new(radius, DEFAULT_N_RAD, DEFAULT_N_ANG)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n_rad(&self) -> usize {
        self.radial_nodes.len()
    }

    pub fn n_ang(&self) -> usize {
        self.angles.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Radial nodes in `(0, r)` with their area weights (Jacobian included,
    /// angular factor excluded).
    pub fn radial(&self) -> (&[f64], &[f64]) {
        (&self.radial_nodes, &self.radial_weights)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The same resolution on a different radius.
    pub fn rescaled(&self, radius: f64) -> Result<Self> {
        Self::new(radius, self.n_rad(), self.n_ang())
    }

    /// Circle rule on the boundary `|z| = r` with the same angular resolution.
    pub fn boundary(&self) -> CircleQuadrature {
        CircleQuadrature::new(self.radius, self.n_ang()).expect("validated at construction")
    }
}

/// Trapezoid rule on `C(0, r)` with arc-length weights `r·2π/n`.
#[derive(Clone, Debug)]
pub struct CircleQuadrature {
    radius: f64,
    angles: Vec<f64>,
    points: Vec<Complex64>,
    weight: f64,
}

impl CircleQuadrature {
    pub fn new(radius: f64, n_ang: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "circle radius must be positive, got {radius}"
            )));
        }
        if n_ang == 0 {
            return Err(Error::InvalidArgument("n_ang must be positive".into()));
        }
        let angles = angles(n_ang);
        let points = angles
            .iter()
            .map(|&t| Complex64::from_polar(radius, t))
            .collect();
        Ok(Self {
            radius,
            angles,
            points,
            weight: radius * 2.0 * PI / n_ang as f64,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Arc-length weight, identical at every node.
    pub fn weight(&self) -> f64 {
        self.weight
    }
}

/// `Σ wᵢ gᵢ ≈ ∫_{rD} g dA`.
pub fn integrate_disk(grid: &DiskQuadrature, samples: &[f64]) -> Result<f64> {
    if samples.len() != grid.len() {
        return Err(Error::SizeMismatch {
            expected: grid.len(),
            got: samples.len(),
        });
    }
    Ok(grid.weights.iter().zip(samples).map(|(w, g)| w * g).sum())
}

/// `Σ w gᵢ ≈ ∮_{C(0,r)} g |dz|`.
pub fn integrate_circle(grid: &CircleQuadrature, samples: &[f64]) -> Result<f64> {
    if samples.len() != grid.len() {
        return Err(Error::SizeMismatch {
            expected: grid.len(),
            got: samples.len(),
        });
    }
    Ok(grid.weight * samples.iter().sum::<f64>())
}
