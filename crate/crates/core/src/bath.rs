//! Ohmic-family bosonic bath: spectral density, the decoherence exponent
//! `B²(t)` and the level-shift integral `C(t)`.
//!
//! With `J(ω) = η ω^s e^{-ω/ω_c}` (note the decaying cutoff),
//!
//! ```text
//! B²(t) = 8 ∫ dω J(ω) ω⁻² sin²(ωt/2) coth(βω/2)
//! C(t)  =   ∫ dω J(ω) ω⁻² (ωt - sin ωt)
//! ```
//!
//! Both are available as continuum integrals (adaptive quadrature) and as
//! sums over a finite [`DiscreteBath`], which is what the exact-diagonalization
//! oracle consumes.

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::quad::{integrate, QuadOptions};
use crate::scalar::{lit, Real};
use crate::units::temperature_to_beta;

/// Upper integration limit in units of the cutoff.
pub const CUTOFF_MULTIPLE: f64 = 60.0;
/// Above `t = OSCILLATORY_ONSET / ω_c` the integration range is pre-split at
/// the zeros of `sin(ωt/2)`.
pub const OSCILLATORY_ONSET: f64 = 50.0;
const MAX_SEED_PANELS: usize = 50_000;
const EXTRA_INTERVALS: usize = 200_000;

/// Spectral-density family and bath temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec<T: Real> {
    /// Dimensionless dissipation strength η.
    pub eta: T,
    /// Spectral exponent; 1 is Ohmic.
    pub s: T,
    /// Cutoff energy ħω_c in μeV.
    pub omega_c: T,
    /// Inverse temperature in μeV⁻¹; `+∞` means zero temperature.
    pub beta: T,
}

impl<T: Real> BathSpec<T> {
    pub fn new(eta: T, s: T, omega_c: T, beta: T) -> Result<Self> {
        if !(eta >= T::zero() && eta.is_finite()) {
            return domain(format!("eta must be non-negative, got {eta}"));
        }
        if !(s > T::zero() && s.is_finite()) {
            return domain(format!("spectral exponent must be positive, got {s}"));
        }
        if !(omega_c > T::zero() && omega_c.is_finite()) {
            return domain(format!("cutoff must be positive, got {omega_c}"));
        }
        if !(beta > T::zero()) {
            return domain(format!("beta must be positive, got {beta}"));
        }
        Ok(Self { eta, s, omega_c, beta })
    }

    pub fn ohmic(eta: T, omega_c: T, beta: T) -> Result<Self> {
        Self::new(eta, T::one(), omega_c, beta)
    }

    pub fn ohmic_at_mk(eta: T, omega_c: T, temp_mk: T) -> Result<Self> {
        Self::ohmic(eta, omega_c, temperature_to_beta(temp_mk)?)
    }

    pub fn zero_temperature(eta: T, s: T, omega_c: T) -> Result<Self> {
        Self::new(eta, s, omega_c, T::infinity())
    }

    /// η = 10⁻⁶, ω_c = 200 μeV, T = 30 mK.
    pub fn charge_qubit_default() -> Self {
        Self::ohmic_at_mk(lit(1e-6), lit(200.0), lit(30.0)).expect("valid defaults")
    }

    pub fn is_ohmic(&self) -> bool {
        self.s == T::one()
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.beta.is_infinite()
    }

    pub fn with_eta(self, eta: T) -> Result<Self> {
        Self::new(eta, self.s, self.omega_c, self.beta)
    }

    pub fn with_beta(self, beta: T) -> Result<Self> {
        Self::new(self.eta, self.s, self.omega_c, beta)
    }

    fn density_unchecked(&self, omega: T) -> T {
        self.eta * omega.powf(self.s) * (-omega / self.omega_c).exp()
    }
}

/// `J(ω) = η ω^s e^{-ω/ω_c}`.
pub fn spectral_density<T: Real>(omega: T, spec: &BathSpec<T>) -> Result<T> {
    if !(omega >= T::zero()) {
        return domain(format!("frequency must be non-negative, got {omega}"));
    }
    Ok(spec.density_unchecked(omega))
}

/// `coth(βω/2)`, equal to 1 at zero temperature.
fn coth_half<T: Real>(beta: T, omega: T) -> T {
    if beta.is_infinite() {
        T::one()
    } else {
        T::one() / (beta * omega * lit(0.5)).tanh()
    }
}

/// `x - sin x`, accurate for small `x`.
fn x_minus_sin<T: Real>(x: T) -> T {
    if x.abs() < lit(0.1) {
        let x2 = x * x;
        // x³/3! - x⁵/5! + x⁷/7! - x⁹/9! + x¹¹/11!
        x * x2 / lit(6.0)
            * (T::one()
                - x2 / lit(20.0)
                    * (T::one() - x2 / lit(42.0) * (T::one() - x2 / lit(72.0) * (T::one() - x2 / lit(110.0)))))
    } else {
        x - x.sin()
    }
}

/// `x - atan x`, accurate for small `x`.
fn x_minus_atan<T: Real>(x: T) -> T {
    if x.abs() < lit(0.01) {
        let x2 = x * x;
        x * x2 * (T::one() / lit(3.0) - x2 / lit(5.0) + x2 * x2 / lit(7.0))
    } else {
        x - x.atan()
    }
}

/// Integrand of `B²(t)` with its `ω → 0` limit filled in.
pub fn b_squared_integrand<T: Real>(omega: T, t: T, spec: &BathSpec<T>) -> T {
    if omega == T::zero() {
        return if spec.is_ohmic() && !spec.is_zero_temperature() {
            lit::<T>(4.0) * spec.eta * t * t / spec.beta
        } else {
            T::zero()
        };
    }
    let sinc = (omega * t * lit(0.5)).sin() / omega;
    lit::<T>(8.0) * spec.density_unchecked(omega) * sinc * sinc * coth_half(spec.beta, omega)
}

/// Integrand of `C(t)`.
pub fn c_shift_integrand<T: Real>(omega: T, t: T, spec: &BathSpec<T>) -> T {
    if omega == T::zero() {
        return T::zero();
    }
    spec.density_unchecked(omega) / (omega * omega) * x_minus_sin(omega * t)
}

/// Seed breakpoints: logarithmic anchors below the cutoff plus, for long
/// times, zeros of `sin(ωt/2)`.
fn seed_breakpoints<T: Real>(t: T, spec: &BathSpec<T>, upper: T) -> Vec<T> {
    let mut pts = vec![T::zero()];
    for k in -6..=1 {
        let p = spec.omega_c * lit::<T>(10.0).powi(k);
        if p < upper {
            pts.push(p);
        }
    }
    if !spec.is_zero_temperature() {
        let thermal = T::one() / spec.beta;
        if thermal < upper {
            pts.push(thermal);
        }
    }
    if t * spec.omega_c > lit(OSCILLATORY_ONSET) {
        let period = T::TAU() / t;
        let zeros = (upper / period).floor().to_usize().unwrap_or(usize::MAX);
        let stride = zeros.div_ceil(MAX_SEED_PANELS).max(1);
        let mut k = stride;
        while k <= zeros {
            let p = period * T::from_usize(k).expect("index fits scalar");
            if p < upper {
                pts.push(p);
            }
            k += stride;
        }
    }
    pts.push(upper);
    pts.sort_by(|a, b| a.as_f64().total_cmp(&b.as_f64()));
    let min_gap = upper * T::epsilon() * lit(1e3);
    pts.dedup_by(|a, b| *a - *b <= min_gap);
    pts
}

/// Bound on `∫_Ω^∞ ω^a e^{-ω/ω_c} dω`.
fn power_exp_tail<T: Real>(a: T, omega_c: T, upper: T) -> T {
    let denom = T::one() - a.max(T::zero()) * omega_c / upper;
    if denom <= T::zero() {
        return T::infinity();
    }
    upper.powf(a) * omega_c * (-upper / omega_c).exp() / denom
}

fn b_squared_tail<T: Real>(spec: &BathSpec<T>, upper: T) -> T {
    lit::<T>(8.0) * spec.eta * coth_half(spec.beta, upper) * power_exp_tail(spec.s - lit(2.0), spec.omega_c, upper)
}

fn c_shift_tail<T: Real>(t: T, spec: &BathSpec<T>, upper: T) -> T {
    spec.eta
        * (t * power_exp_tail(spec.s - T::one(), spec.omega_c, upper)
            + power_exp_tail(spec.s - lit(2.0), spec.omega_c, upper))
}

fn check_time_and_tol<T: Real>(t: T, tol: T) -> Result<()> {
    if !(t >= T::zero() && t.is_finite()) {
        return domain(format!("time must be finite and non-negative, got {t}"));
    }
    if !(tol > T::zero() && tol <= lit(1e-3)) {
        return domain(format!("relative tolerance must lie in (0, 1e-3], got {tol}"));
    }
    Ok(())
}

fn integrate_to_infinity<T, F, G>(integrand: F, tail: G, t: T, spec: &BathSpec<T>, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
    G: Fn(T) -> T,
{
    let mut upper = spec.omega_c * lit(CUTOFF_MULTIPLE);
    loop {
        let seeds = seed_breakpoints(t, spec, upper);
        let opts = QuadOptions { rel_tol: tol, abs_tol: T::zero(), max_intervals: seeds.len() + EXTRA_INTERVALS };
        let r = integrate(&integrand, &seeds, &opts)?;
        let bound = tail(upper);
        if bound <= tol * lit(1e-2) * r.value.abs() || r.value == T::zero() {
            return Ok(r.value);
        }
        upper *= lit(2.0);
        if upper > spec.omega_c * lit(1e4) {
            return Ok(r.value);
        }
    }
}

/// Continuum `B²(t)` by adaptive quadrature at relative tolerance `tol`.
///
/// Sub-Ohmic exponents (`s < 1`) are rejected: the integrand is singular at
/// `ω = 0` there.
pub fn b_squared_continuum<T: Real>(t: T, spec: &BathSpec<T>, tol: T) -> Result<T> {
    check_time_and_tol(t, tol)?;
    if spec.s < T::one() {
        return domain(format!("sub-Ohmic exponent s = {} is not supported for B²(t)", spec.s));
    }
    if t == T::zero() || spec.eta == T::zero() {
        return Ok(T::zero());
    }
    integrate_to_infinity(|w| b_squared_integrand(w, t, spec), |u| b_squared_tail(spec, u), t, spec, tol)
}

/// Zero-temperature Ohmic closed form `2η ln(1 + ω_c² t²)`.
pub fn b_squared_zero_temperature_ohmic<T: Real>(t: T, eta: T, omega_c: T) -> T {
    let x = omega_c * t;
    lit::<T>(2.0) * eta * (x * x).ln_1p()
}

/// Ohmic closed form `η (ω_c t - arctan ω_c t)`.
pub fn c_shift_ohmic<T: Real>(t: T, eta: T, omega_c: T) -> T {
    eta * x_minus_atan(omega_c * t)
}

/// `C(t)` by quadrature, for any exponent.
pub fn c_shift_quadrature<T: Real>(t: T, spec: &BathSpec<T>, tol: T) -> Result<T> {
    check_time_and_tol(t, tol)?;
    if t == T::zero() || spec.eta == T::zero() {
        return Ok(T::zero());
    }
    integrate_to_infinity(|w| c_shift_integrand(w, t, spec), |u| c_shift_tail(t, spec, u), t, spec, tol)
}

/// `C(t)`: the closed form for `s = 1`, quadrature otherwise.
pub fn c_shift_continuum<T: Real>(t: T, spec: &BathSpec<T>) -> Result<T> {
    if spec.is_ohmic() {
        if !(t >= T::zero() && t.is_finite()) {
            return domain(format!("time must be finite and non-negative, got {t}"));
        }
        Ok(c_shift_ohmic(t, spec.eta, spec.omega_c))
    } else {
        c_shift_quadrature(t, spec, lit(1e-8))
    }
}

/// One bath oscillator: frequency (μeV) and squared coupling (μeV²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMode<T: Real> {
    pub omega: T,
    pub g_sq: T,
}

/// Finite set of bath modes with strictly increasing frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBath<T: Real> {
    modes: Vec<BathMode<T>>,
}

impl<T: Real> DiscreteBath<T> {
    pub fn new(modes: Vec<BathMode<T>>) -> Result<Self> {
        if modes.iter().any(|m| !(m.omega > T::zero() && m.omega.is_finite())) {
            return domain("mode frequencies must be positive and finite");
        }
        if modes.iter().any(|m| !(m.g_sq >= T::zero() && m.g_sq.is_finite())) {
            return domain("squared couplings must be non-negative and finite");
        }
        if modes.windows(2).any(|w| !(w[1].omega > w[0].omega)) {
            return domain("mode frequencies must be strictly increasing");
        }
        Ok(Self { modes })
    }

    pub fn from_pairs(pairs: &[(T, T)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(omega, g_sq)| BathMode { omega, g_sq }).collect())
    }

    pub fn modes(&self) -> &[BathMode<T>] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// `Σ_k g_k² f(ω_k)`.
    pub fn weighted_sum<F: Fn(T) -> T>(&self, f: F) -> T {
        self.modes.iter().fold(T::zero(), |acc, m| acc + m.g_sq * f(m.omega))
    }
}

/// Midpoint discretization: `ω_k = (k - ½)Δω`, `g_k² = J(ω_k) Δω`.
pub fn discretize_bath<T: Real>(spec: &BathSpec<T>, n_modes: usize, omega_max: T) -> Result<DiscreteBath<T>> {
    if n_modes == 0 {
        return domain("need at least one bath mode");
    }
    if !(omega_max > T::zero() && omega_max.is_finite()) {
        return domain(format!("omega_max must be positive, got {omega_max}"));
    }
    let dw = omega_max / T::from_usize(n_modes).expect("mode count fits scalar");
    let modes = (0..n_modes)
        .map(|k| {
            let omega = (T::from_usize(k).expect("index fits scalar") + lit(0.5)) * dw;
            BathMode { omega, g_sq: spec.density_unchecked(omega) * dw }
        })
        .collect();
    DiscreteBath::new(modes)
}

/// `8 Σ_k (g_k²/ω_k²) sin²(ω_k t/2) coth(βω_k/2)`.
pub fn b_squared_discrete<T: Real>(t: T, bath: &DiscreteBath<T>, beta: T) -> T {
    lit::<T>(8.0)
        * bath.weighted_sum(|w| {
            let s = (w * t * lit(0.5)).sin() / w;
            s * s * coth_half(beta, w)
        })
}

/// `Σ_k (g_k²/ω_k²)(ω_k t - sin ω_k t)`.
pub fn c_shift_discrete<T: Real>(t: T, bath: &DiscreteBath<T>) -> T {
    bath.weighted_sum(|w| x_minus_sin(w * t) / (w * w))
}

fn check_chi<T: Real>(chi: T) -> Result<()> {
    if chi == T::one() || chi == -T::one() {
        Ok(())
    } else {
        domain(format!("coupling eigenvalue must be ±1, got {chi}"))
    }
}

/// Exponent of the traced bath factor for branch pair `(χ_ξ, χ_ς)`:
/// `-B² (χ_ξ - χ_ς)²/4 - i C (χ_ξ² - χ_ς²)`.
pub fn influence_exponent<T: Real>(chi_xi: T, chi_sigma: T, b_sq: T, c: T) -> Result<Complex<T>> {
    check_chi(chi_xi)?;
    check_chi(chi_sigma)?;
    let d = chi_xi - chi_sigma;
    let re = -b_sq * d * d / lit(4.0);
    let im = -c * (chi_xi * chi_xi - chi_sigma * chi_sigma);
    debug_assert!(im == T::zero());
    Ok(Complex::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_bath() -> BathSpec<f64> {
        BathSpec::charge_qubit_default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn spec_validation() {
        assert!(BathSpec::new(-1.0, 1.0, 200.0, 1.0).is_err());
        assert!(BathSpec::new(1e-6, 0.0, 200.0, 1.0).is_err());
        assert!(BathSpec::new(1e-6, 1.0, 0.0, 1.0).is_err());
        assert!(BathSpec::new(1e-6, 1.0, 200.0, 0.0).is_err());
        assert!(BathSpec::zero_temperature(1e-6, 1.0, 200.0).unwrap().is_zero_temperature());
    }

    #[test]
    fn spectral_density_shape() {
        let s = reference_bath();
        assert_eq!(spectral_density(0.0, &s).unwrap(), 0.0);
        let at_cut = spectral_density(200.0, &s).unwrap();
        assert!(rel(at_cut, 1e-6 * 200.0 * (-1.0_f64).exp()) < 1e-15);
        assert!(spectral_density(-1.0, &s).is_err());
        // argmax on a fine grid sits at ω_c
        let (mut best, mut arg) = (0.0, 0.0);
        for k in 1..40_000 {
            let w = k as f64 * 0.01;
            let j = spectral_density(w, &s).unwrap();
            if j > best {
                best = j;
                arg = w;
            }
        }
        assert!((arg - 200.0).abs() < 0.011);
    }

    #[test]
    fn series_helpers_match_direct_evaluation() {
        for &x in &[0.09_f64, 0.05, 0.011] {
            assert!(rel(x_minus_sin(x), x - x.sin()) < 1e-9);
        }
        assert!(rel(x_minus_sin(1e-4_f64), 1e-12 / 6.0) < 1e-8);
        assert!(rel(x_minus_atan(0.0099_f64), 0.0099 - 0.0099_f64.atan()) < 1e-8);
    }

    #[test]
    fn integrand_zero_frequency_limit() {
        let s = reference_bath();
        let t = 0.3;
        let at0 = b_squared_integrand(0.0, t, &s);
        let near = b_squared_integrand(1e-7, t, &s);
        assert!(rel(near, at0) < 1e-6, "{near} vs {at0}");
        assert!(rel(at0, 4.0 * 1e-6 * t * t / s.beta) < 1e-15);
    }

    #[test]
    fn b_squared_vanishes_at_zero_time() {
        assert_eq!(b_squared_continuum(0.0, &reference_bath(), 1e-8).unwrap(), 0.0);
        let bath = discretize_bath(&reference_bath(), 100, 12_000.0).unwrap();
        assert_eq!(b_squared_discrete(0.0, &bath, reference_bath().beta), 0.0);
        assert_eq!(c_shift_discrete(0.0, &bath), 0.0);
        assert_eq!(c_shift_continuum(0.0, &reference_bath()).unwrap(), 0.0);
    }

    #[test]
    fn b_squared_argument_checks() {
        assert!(b_squared_continuum(-1.0, &reference_bath(), 1e-8).is_err());
        assert!(b_squared_continuum(1.0, &reference_bath(), 0.0).is_err());
        assert!(b_squared_continuum(1.0, &reference_bath(), 1e-2).is_err());
        let sub = BathSpec::new(1e-6, 0.5, 200.0, 0.38).unwrap();
        assert!(b_squared_continuum(1.0, &sub, 1e-8).is_err());
    }

    #[test]
    fn zero_temperature_matches_log_closed_form() {
        let s = BathSpec::zero_temperature(1e-6, 1.0, 200.0).unwrap();
        for &t in &[1e-3, 1e-2, 0.1, 1.0, 10.0] {
            let q = b_squared_continuum(t, &s, 1e-8).unwrap();
            let c = b_squared_zero_temperature_ohmic(t, 1e-6, 200.0);
            assert!(rel(q, c) < 1e-8, "t={t}: {q} vs {c}");
        }
    }

    #[test]
    fn c_shift_closed_form_values() {
        assert!(rel(c_shift_ohmic(1.0 / 200.0, 1e-6, 200.0), 1e-6 * (1.0 - std::f64::consts::FRAC_PI_4)) < 1e-14);
        let big = c_shift_ohmic(1e3, 1e-6, 200.0);
        assert!(rel(big, 1e-6 * 200.0 * 1e3) < 1e-5);
        for &t in &[1e-3, 1e-2, 0.1, 1.0, 10.0] {
            let q = c_shift_quadrature(t, &reference_bath(), 1e-8).unwrap();
            let c = c_shift_ohmic(t, 1e-6, 200.0);
            assert!(rel(q, c) < 1e-8, "t={t}: {q} vs {c}");
        }
    }

    #[test]
    fn linear_in_eta() {
        let base = reference_bath();
        for &t in &[0.01, 0.075, 2.0] {
            let b0 = b_squared_continuum(t, &base, 1e-9).unwrap();
            for &k in &[0.5, 2.0, 10.0] {
                let scaled = base.with_eta(base.eta * k).unwrap();
                let b = b_squared_continuum(t, &scaled, 1e-9).unwrap();
                assert!(rel(b, k * b0) < 1e-8);
                let bath0 = discretize_bath(&base, 2000, 12_000.0).unwrap();
                let bath1 = discretize_bath(&scaled, 2000, 12_000.0).unwrap();
                assert!(
                    rel(b_squared_discrete(t, &bath1, base.beta), k * b_squared_discrete(t, &bath0, base.beta)) < 1e-12
                );
            }
        }
    }

    #[test]
    fn hotter_baths_decohere_more() {
        for &t in &[0.01, 0.1, 1.0] {
            let mut prev = 0.0;
            for &mk in &[1.0, 10.0, 30.0, 100.0, 300.0] {
                let s = BathSpec::ohmic_at_mk(1e-6, 200.0, mk).unwrap();
                let b = b_squared_continuum(t, &s, 1e-9).unwrap();
                assert!(b >= prev, "t={t} T={mk}");
                prev = b;
            }
        }
    }

    #[test]
    fn b_squared_non_decreasing_on_grid() {
        let s = reference_bath();
        let mut prev = 0.0;
        for k in 0..=100 {
            let t = 0.1 * k as f64;
            let b = b_squared_continuum(t, &s, 1e-8).unwrap();
            assert!(b >= prev * (1.0 - 1e-8), "t={t}");
            prev = b;
        }
    }

    #[test]
    fn discretization_construction() {
        let s = reference_bath();
        let one = discretize_bath(&s, 1, 400.0).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.modes()[0].omega, 200.0);
        assert!(rel(one.modes()[0].g_sq, spectral_density(200.0, &s).unwrap() * 400.0) < 1e-15);
        let many = discretize_bath(&s, 1000, 12_000.0).unwrap();
        assert!(many.modes().windows(2).all(|w| w[1].omega > w[0].omega));
        assert!(discretize_bath(&s, 0, 1.0).is_err());
        assert!(discretize_bath(&s, 10, 0.0).is_err());
        assert!(DiscreteBath::from_pairs(&[(2.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(DiscreteBath::from_pairs(&[(1.0, -1.0)]).is_err());
    }

    #[test]
    fn coupling_sum_converges_to_analytic_integral() {
        let s = reference_bath();
        let x = 3.0;
        let exact = 1e-6 * 200.0 * 200.0 * (1.0 - f64::exp(-x) * (1.0 + x));
        let mut prev_err = f64::INFINITY;
        for &n in &[10, 100, 1000, 10_000] {
            let bath = discretize_bath(&s, n, x * 200.0).unwrap();
            let err = rel(bath.weighted_sum(|_| 1.0), exact);
            assert!(err < prev_err);
            prev_err = err;
        }
        assert!(prev_err < 1e-7);
    }

    #[test]
    fn single_mode_sums() {
        let bath = DiscreteBath::from_pairs(&[(10.0, 0.5)]).unwrap();
        let beta = 0.4;
        let period = std::f64::consts::TAU / 10.0;
        for &t in &[0.03, 0.2, 0.5] {
            let b = b_squared_discrete(t, &bath, beta);
            let expected = 8.0 * 0.5 / 100.0 * f64::sin(5.0 * t).powi(2) / (2.0_f64).tanh();
            assert!(rel(b, expected) < 1e-13);
            assert!(rel(b_squared_discrete(t + period, &bath, beta), b) < 1e-9);
            assert!(c_shift_discrete(t, &bath) >= 0.0);
        }
    }

    #[test]
    fn discrete_tracks_continuum() {
        let s = reference_bath();
        let bath = discretize_bath(&s, 20_000, 60.0 * 200.0).unwrap();
        for &t in &[1e-3, 0.05, 0.5] {
            let c = b_squared_continuum(t, &s, 1e-10).unwrap();
            let d = b_squared_discrete(t, &bath, s.beta);
            assert!(rel(d, c) < 1e-4, "t={t}");
            let cc = c_shift_ohmic(t, s.eta, s.omega_c);
            assert!(rel(c_shift_discrete(t, &bath), cc) < 1e-4);
        }
    }

    #[test]
    fn super_ohmic_quadrature_runs() {
        let s = BathSpec::new(1e-6, 2.0, 200.0, 0.38).unwrap();
        let b: f64 = b_squared_continuum(0.1, &s, 1e-8).unwrap();
        assert!(b > 0.0 && b.is_finite());
        assert!(c_shift_continuum(0.1, &s).unwrap() > 0.0);
    }

    #[test]
    fn influence_exponent_cases() {
        let (b, c) = (0.7, 3.1);
        assert_eq!(influence_exponent(1.0, 1.0, b, c).unwrap(), Complex::new(0.0, 0.0));
        assert_eq!(influence_exponent(-1.0, -1.0, b, c).unwrap().re, 0.0);
        assert_eq!(influence_exponent(1.0, -1.0, b, c).unwrap().re, -b);
        assert_eq!(influence_exponent(-1.0, 1.0, b, c).unwrap().re, -b);
        for xi in [1.0, -1.0] {
            for sg in [1.0, -1.0] {
                assert_eq!(influence_exponent(xi, sg, b, c).unwrap().im, 0.0);
            }
        }
        assert!(influence_exponent(0.5, 1.0, b, c).is_err());
        assert!(influence_exponent(1.0, 0.0, b, c).is_err());
    }
}
