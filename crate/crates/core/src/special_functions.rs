//! Bessel functions of the first kind of orders 0 and 1, their derivatives,
//! and the first positive zero of `J0`.
//!
//! Both functions are summed from the ascending power series in double-double
//! arithmetic. Carrying ~32 significant digits through the alternating sum
//! absorbs the cancellation that appears for moderately large arguments, so the
//! series alone stays accurate to full double precision on `[0, 30]`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Hard cap on series terms. At x = 30 the terms fall below 1e-34 of the sum
/// after roughly 70 terms.
const MAX_TERMS: usize = 200;

#[derive(Clone, Copy, Debug)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        Self::renorm(s, e + self.lo + o.lo)
    }

    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        Self::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let (p, e) = two_prod(q1, d);
        let r = ((self.hi - p) - e + self.lo) / d;
        Self::renorm(q1, r)
    }

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn check_args(order: u32, x: f64) -> Result<()> {
    if order > 1 {
        return Err(Error::InvalidArgument(format!(
            "Bessel order {order} is not supported (only 0 and 1)"
        )));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "Bessel argument must be finite and nonnegative, got {x}"
        )));
    }
    Ok(())
}

/// Ascending series for `J_order(x)`; assumes validated arguments.
fn series(order: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let half = x * 0.5;
    let (qh, ql) = two_prod(half, half);
    let minus_q = DoubleDouble { hi: qh, lo: ql }.neg();
    let nu = order as f64;

    let mut term = if order == 0 {
        DoubleDouble::from_f64(1.0)
    } else {
        DoubleDouble::from_f64(half)
    };
    let mut sum = term;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term = term.mul(minus_q).div_f64(kf * (kf + nu));
        sum = sum.add(term);
        if kf > half && term.hi.abs() <= 1e-34 * sum.hi.abs().max(1e-300) {
            break;
        }
    }
    sum.to_f64()
}

/// `J_order(x)` for `order` in {0, 1} and `x >= 0`.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    check_args(order, x)?;
    Ok(series(order, x))
}

/// Derivative `J_order'(x)`: `J0' = -J1`, `J1' = J0 - J1/x` with `J1'(0) = 1/2`.
pub fn bessel_j_prime(order: u32, x: f64) -> Result<f64> {
    check_args(order, x)?;
    Ok(match order {
        0 => -series(1, x),
        _ if x == 0.0 => 0.5,
        _ => series(0, x) - series(1, x) / x,
    })
}

pub(crate) fn j0(x: f64) -> f64 {
    series(0, x)
}

pub(crate) fn j1(x: f64) -> f64 {
    series(1, x)
}

pub(crate) fn j1_prime(x: f64) -> f64 {
    if x == 0.0 {
        0.5
    } else {
        series(0, x) - series(1, x) / x
    }
}

/// Constants derived from the first zero of `J0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselConstants {
    pub j0: f64,
    pub j0_squared: f64,
    pub j1_at_j0: f64,
}

impl BesselConstants {
    pub fn get() -> &'static BesselConstants {
        static CONSTANTS: OnceLock<BesselConstants> = OnceLock::new();
        CONSTANTS.get_or_init(|| {
            let j0 = compute_first_zero();
            BesselConstants {
                j0,
                j0_squared: j0 * j0,
                j1_at_j0: j1(j0),
            }
        })
    }
}

/// Bisection on `[2, 3]` down to adjacent doubles, then two Newton steps.
fn compute_first_zero() -> f64 {
    let (mut lo, mut hi) = (2.0_f64, 3.0_f64);
    debug_assert!(j0(lo) > 0.0 && j0(hi) < 0.0);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = if j0(lo).abs() <= j0(hi).abs() { lo } else { hi };
    for _ in 0..2 {
        // J0' = -J1
        let step = j0(x) / -j1(x);
        if step.is_finite() && step.abs() < 1e-12 {
            x -= step;
        }
    }
    x
}

/// First positive zero of `J0`.
pub fn first_zero_j0() -> f64 {
    BesselConstants::get().j0
}
