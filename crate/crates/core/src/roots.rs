//! Bracketed bisection for monotone scalar functions.

use crate::error::{domain, Result};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectOptions<T: Real> {
    pub max_iter: usize,
    /// Stop once `hi - lo <= rel_tol * |hi|`.
    pub rel_tol: T,
}

impl<T: Real> Default for BisectOptions<T> {
    fn default() -> Self {
        Self { max_iter: 60, rel_tol: lit(1e-12) }
    }
}

/// Finds a sign change of `f` in `[lo, hi]` by bisection.
///
/// Requires `f(lo)` and `f(hi)` of opposite sign (or zero). Returns the
/// midpoint of the final bracket.
pub fn bisect<T, F>(mut f: F, mut lo: T, mut hi: T, opts: &BisectOptions<T>) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if !(lo < hi) {
        return domain(format!("bisection needs lo < hi, got [{lo}, {hi}]"));
    }
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return domain(format!("no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"));
    }
    let lo_negative = f_lo < T::zero();
    for _ in 0..opts.max_iter {
        if hi - lo <= opts.rel_tol * hi.abs() {
            break;
        }
        let mid = (lo + hi) * lit(0.5);
        let f_mid = f(mid)?;
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if (f_mid < T::zero()) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * lit(0.5))
}
