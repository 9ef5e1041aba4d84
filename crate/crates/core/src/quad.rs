//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature on finite intervals.
//!
//! Callers seed the subdivision with breakpoints (e.g. zeros of an
//! oscillating factor); the interval with the largest error estimate is then
//! bisected until the summed estimate meets the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};

// Standard 21-point Kronrod tables at full published precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980116318,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions<T: Real> {
    pub rel_tol: T,
    pub abs_tol: T,
    /// Maximum number of live subintervals, including the seeded ones.
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self { rel_tol: lit(1e-8), abs_tol: T::zero(), max_intervals: 200_000 }
    }
}

impl<T: Real> QuadOptions<T> {
    pub fn with_rel_tol(rel_tol: T) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T: Real> {
    pub value: T,
    pub error_estimate: T,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T: Real> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.as_f64().total_cmp(&other.error.as_f64())
    }
}

/// One 21-point Kronrod evaluation with the QUADPACK error heuristic.
pub fn gauss_kronrod_21<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let center = (a + b) * lit(0.5);
    let half = (b - a) * lit(0.5);
    let f_center = f(center);
    let mut kronrod = f_center * lit(WGK[10]);
    let mut gauss = T::zero();
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let x = half * lit(XGK[j]);
        let (f1, f2) = (f(center - x), f(center + x));
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += lit::<T>(WGK[j]) * (f1 + f2);
        abs_sum += lit::<T>(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += lit::<T>(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = kronrod * lit(0.5);
    let mut asc = lit::<T>(WGK[10]) * (f_center - mean).abs();
    for j in 0..10 {
        asc += lit::<T>(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let habs = half.abs();
    let result = kronrod * half;
    let res_abs = abs_sum * habs;
    let res_asc = asc * habs;
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (lit::<T>(200.0) * err / res_asc).powf(lit(1.5));
        err = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let min_err = lit::<T>(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (lit::<T>(50.0) * T::epsilon()) && min_err > err {
        err = min_err;
    }
    (result, err)
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`.
///
/// `breakpoints` must be strictly increasing with at least two entries.
pub fn integrate<T, F>(f: F, breakpoints: &[T], opts: &QuadOptions<T>) -> Result<QuadResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if breakpoints.len() < 2 {
        return domain("quadrature needs at least two breakpoints");
    }
    if breakpoints.windows(2).any(|w| !(w[1] > w[0])) || breakpoints.iter().any(|x| !x.is_finite()) {
        return domain("quadrature breakpoints must be finite and strictly increasing");
    }
    if !(opts.rel_tol >= T::zero() && opts.abs_tol >= T::zero()) {
        return domain("quadrature tolerances must be non-negative");
    }
    let span = breakpoints[breakpoints.len() - 1] - breakpoints[0];
    let min_width = span * T::epsilon() * lit(64.0);

    let mut heap = BinaryHeap::with_capacity(breakpoints.len());
    let mut frozen: Vec<Panel<T>> = Vec::new();
    let mut total = T::zero();
    let mut total_err = T::zero();
    for w in breakpoints.windows(2) {
        let (value, error) = gauss_kronrod_21(&f, w[0], w[1]);
        total += value;
        total_err += error;
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }

    let target = |total: T| opts.abs_tol.max(opts.rel_tol * total.abs());
    while total_err > target(total) {
        if !total_err.is_finite() || !total.is_finite() {
            return Err(Error::Quadrature {
                value: total.as_f64(),
                error: total_err.as_f64(),
                intervals: heap.len() + frozen.len(),
            });
        }
        if heap.len() + frozen.len() >= opts.max_intervals {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.b - worst.a <= min_width {
            frozen.push(worst);
            continue;
        }
        let mid = (worst.a + worst.b) * lit(0.5);
        let (v1, e1) = gauss_kronrod_21(&f, worst.a, mid);
        let (v2, e2) = gauss_kronrod_21(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }

    // Re-sum from scratch to shed the drift of the running updates.
    let mut panels: Vec<Panel<T>> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.as_f64().total_cmp(&q.a.as_f64()));
    let value = panels.iter().fold(T::zero(), |s, p| s + p.value);
    let error_estimate = panels.iter().fold(T::zero(), |s, p| s + p.error);
    let intervals = panels.len();
    if error_estimate > target(value) {
        return Err(Error::Quadrature { value: value.as_f64(), error: error_estimate.as_f64(), intervals });
    }
    Ok(QuadResult { value, error_estimate, intervals })
}
