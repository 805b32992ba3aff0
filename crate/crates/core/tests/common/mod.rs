//! Independent reference computations: plain `f64` Bessel series,
//! bisection, adaptive Simpson and RK4 shooting. None of this calls into the
//! library's numerics.
#![allow(dead_code)]

/// `J_n(x)` by the ascending series in ordinary double precision.
pub fn bessel(n: u32, x: f64) -> f64 {
    let mut term = (1..=n).fold(1.0, |t, k| t * (0.5 * x) / k as f64);
    let mut sum = term;
    let q = -0.25 * x * x;
    for k in 1..200u32 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Root of `f` in `[a, b]` by bisection down to adjacent doubles.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    assert!(fa * f(b) <= 0.0, "no sign change on [{a}, {b}]");
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return m;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
}

pub fn j0_zero() -> f64 {
    bisect(|x| bessel(0, x), 2.0, 3.0)
}

/// Adaptive Simpson quadrature.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `ψ(r)` for the radial problem `ψ'' + ψ'/s + λ n²|a|² s^{2(n−1)} ψ = 0`,
/// `ψ(0) = 1`: the pullback of the disk problem under `f = a zⁿ`.
pub fn shoot(lambda: f64, a: f64, n: i32, r: f64, steps: usize) -> f64 {
    let c = lambda * a * a;
    let w = |s: f64| c * (n * n) as f64 * s.powi(2 * (n - 1));
    let s0 = 1e-4 * r;
    // series start ψ = 1 − c s^{2n}/4
    let mut y = [
        1.0 - c * s0.powi(2 * n) / 4.0,
        -c * n as f64 * s0.powi(2 * n - 1) / 2.0,
    ];
    let rhs = |s: f64, y: [f64; 2]| [y[1], -y[1] / s - w(s) * y[0]];
    let h = (r - s0) / steps as f64;
    let mut s = s0;
    for _ in 0..steps {
        let k1 = rhs(s, y);
        let k2 = rhs(
            s + 0.5 * h,
            [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]],
        );
        let k3 = rhs(
            s + 0.5 * h,
            [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]],
        );
        let k4 = rhs(s + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        s += h;
    }
    y[0]
}

/// Smallest `λ` with `shoot(λ) = 0`.
pub fn shooting_eigenvalue(a: f64, n: i32, r: f64) -> f64 {
    let steps = 20_000;
    let mut lo = 1e-3;
    while shoot(lo * 1.05, a, n, r, steps) > 0.0 {
        lo *= 1.05;
    }
    let hi = lo * 1.05;
    let mut a_ = lo;
    let mut b_ = hi;
    for _ in 0..200 {
        let m = 0.5 * (a_ + b_);
        if shoot(m, a, n, r, steps) > 0.0 {
            a_ = m;
        } else {
            b_ = m;
        }
        if b_ - a_ <= 1e-15 * b_ {
            break;
        }
    }
    0.5 * (a_ + b_)
}
