//! Bracketing bisection shared by the IRR, break-even and switchover searches.

use crate::error::{Error, Result};

// Enough halvings to walk any finite bracket down to adjacent f64 values.
const MAX_ITER: usize = 2200;

/// Stopping rule for [`bisect`]. Iteration also stops once the bracket can no
/// longer be split in `f64`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Stop when `|f(mid)| <= f_abs` and the bracket is narrower than `x_abs`.
    pub f_abs: f64,
    pub x_abs: f64,
}

impl Tolerance {
    /// Bisect down to adjacent floating-point values.
    pub const MACHINE: Tolerance = Tolerance {
        f_abs: 0.0,
        x_abs: 0.0,
    };
}

/// Root of `f` on `[lo, hi]`, given `f(lo)` and `f(hi)` differ in sign (or one is zero).
pub fn bisect<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !fa.is_finite() || !fb.is_finite() || fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            lo,
            hi,
            detail: format!("f(lo) = {fa}, f(hi) = {fb} share a sign"),
        });
    }
    for _ in 0..MAX_ITER {
        let mid = a + 0.5 * (b - a);
        if mid <= a || mid >= b {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm.is_nan() {
            return Err(Error::Domain(format!("objective is NaN at {mid}")));
        }
        if fm == 0.0 || (fm.abs() <= tol.f_abs && (b - a) <= tol.x_abs) {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Err(Error::NonConvergence { lo: a, hi: b })
}
