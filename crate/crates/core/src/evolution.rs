//! Short-time reduced dynamics of the qubit at the degeneracy point and the
//! norm-based decoherence measures built on it.
//!
//! States handed to the dynamics are expressed in the `H_s` eigenbasis
//! `{φ₀, φ₁}` (see [`crate::model::basis_change`]), where the ideal coherence
//! rotates as `ρ₁₀(t) = ρ₁₀ e^{i E_J t}`. With `u = e^{-B²(t)}` the
//! split-operator propagator gives
//!
//! ```text
//! ρ₁₁(t) = ½ ρ₀₀ (1 - u) + ½ ρ₁₁ (1 + u)
//! ρ₁₀(t) = ½ (1 + u) e^{i E_J t} ρ₁₀ + ½ (1 - u) ρ₁₀*
//! ```
//!
//! The second line reduces to `½ ρ₁₀ (1 - u + e^{iE_J t} + u e^{iE_J t})` whenever
//! `ρ₁₀` is real, which covers every preset initial state.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex;

use crate::bath::{b_squared_continuum, influence_exponent, BathSpec};
use crate::error::{domain, Error, Result};
use crate::mat2::Mat2;
use crate::model::{basis_change, eigenbasis_matrix};
use crate::roots::{bisect, BisectOptions};
use crate::scalar::{lit, Real};

/// Representation basis of a [`QubitState`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Eigenbasis `{φ₀, φ₁}` of the degenerate-point qubit Hamiltonian.
    Eigen,
    /// Charge basis `{|0⟩, |1⟩}`, eigenstates of σ_z.
    Computational,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Eigen => "eigenbasis",
            Basis::Computational => "computational",
        }
    }
}

/// Validated 2×2 density matrix with its basis tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState<T: Real> {
    rho: Mat2<T>,
    basis: Basis,
}

impl<T: Real> QubitState<T> {
    /// Checks hermiticity, unit trace and positivity.
    pub fn new(rho: Mat2<T>, basis: Basis) -> Result<Self> {
        let herm = rho.hermiticity_defect();
        if !(herm <= T::state_tol()) {
            return domain(format!("density matrix not Hermitian (defect {herm})"));
        }
        let tr = rho.trace();
        if !((tr - Complex::new(T::one(), T::zero())).norm() <= T::state_tol()) {
            return domain(format!("density matrix trace {tr} != 1"));
        }
        let min_eig = rho.hermitian_eigenvalues()[0];
        if !(min_eig >= -T::psd_tol()) {
            return domain(format!("density matrix not positive (min eigenvalue {min_eig})"));
        }
        Ok(Self { rho, basis })
    }

    pub(crate) fn from_matrix_unchecked(rho: Mat2<T>, basis: Basis) -> Self {
        Self { rho, basis }
    }

    pub fn maximally_mixed(basis: Basis) -> Self {
        let h = lit::<T>(0.5);
        Self { rho: Mat2::from_real(h, T::zero(), T::zero(), h), basis }
    }

    /// `ρ = (I + x σ_x + y σ_y + z σ_z)/2`; requires `|r| ≤ 1`.
    pub fn from_bloch(r: [T; 3], basis: Basis) -> Result<Self> {
        let [x, y, z] = r;
        if (x * x + y * y + z * z).sqrt() > T::one() + T::state_tol() {
            return domain(format!("Bloch vector ({x}, {y}, {z}) lies outside the unit ball"));
        }
        let h = lit::<T>(0.5);
        let rho = Mat2::new(
            Complex::new(h * (T::one() + z), T::zero()),
            Complex::new(h * x, -h * y),
            Complex::new(h * x, h * y),
            Complex::new(h * (T::one() - z), T::zero()),
        );
        Ok(Self { rho, basis })
    }

    pub fn rho(&self) -> Mat2<T> {
        self.rho
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn rho00(&self) -> T {
        self.rho.get(0, 0).re
    }

    pub fn rho11(&self) -> T {
        self.rho.get(1, 1).re
    }

    /// Coherence `ρ₁₀ = ⟨1|ρ|0⟩`.
    pub fn rho10(&self) -> Complex<T> {
        self.rho.get(1, 0)
    }

    pub fn in_basis(&self, basis: Basis) -> Self {
        if self.basis == basis {
            *self
        } else {
            basis_change(self)
        }
    }

    /// Purity `tr ρ²`.
    pub fn purity(&self) -> T {
        (self.rho * self.rho).trace().re
    }
}

/// Traceless Hermitian difference of two states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationOperator<T: Real> {
    pub sigma: Mat2<T>,
}

/// Preset initial states: amplitudes `(1, 0)`, `(√3/2, ½)` and `(1/√2, 1/√2)`
/// on `{φ₀, φ₁}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialState {
    Point,
    Line1,
    Line2,
}

impl InitialState {
    pub const ALL: [InitialState; 3] = [InitialState::Point, InitialState::Line1, InitialState::Line2];

    pub fn label(self) -> &'static str {
        match self {
            InitialState::Point => "point",
            InitialState::Line1 => "line1",
            InitialState::Line2 => "line2",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.label() == label)
    }

    /// Bloch angles `(θ, φ)` for [`pure_state`].
    pub fn angles<T: Real>(self) -> (T, T) {
        match self {
            InitialState::Point => (T::zero(), T::zero()),
            InitialState::Line1 => (T::FRAC_PI_3(), T::zero()),
            InitialState::Line2 => (T::FRAC_PI_2(), T::zero()),
        }
    }

    pub fn state<T: Real>(self) -> QubitState<T> {
        let (theta, phi) = self.angles();
        pure_state(theta, phi)
    }
}

/// `|ψ⟩ = cos(θ/2)|φ₀⟩ + e^{iφ} sin(θ/2)|φ₁⟩` as an eigenbasis density matrix.
pub fn pure_state<T: Real>(theta: T, phi: T) -> QubitState<T> {
    let half = theta * lit(0.5);
    let a0 = Complex::new(half.cos(), T::zero());
    let a1 = Complex::from_polar(half.sin(), phi);
    let rho = Mat2::new(a0 * a0.conj(), a0 * a1.conj(), a1 * a0.conj(), a1 * a1.conj());
    QubitState { rho, basis: Basis::Eigen }
}

fn with_coherence<T: Real>(rho11: T, rho10: Complex<T>, basis: Basis) -> QubitState<T> {
    let rho = Mat2::new(Complex::new(T::one() - rho11, T::zero()), rho10.conj(), rho10, Complex::new(rho11, T::zero()));
    QubitState { rho, basis }
}

/// Isolated evolution: populations fixed, `ρ₁₀ → ρ₁₀ e^{i E_J t}`.
///
/// Accepts either basis; the result is returned in the input's basis.
pub fn evolve_ideal<T: Real>(rho0: &QubitState<T>, t: T, e_j: T) -> QubitState<T> {
    let s = rho0.in_basis(Basis::Eigen);
    let out = with_coherence(s.rho11(), s.rho10() * Complex::from_polar(T::one(), e_j * t), Basis::Eigen);
    out.in_basis(rho0.basis)
}

/// Bath-coupled evolution under the symmetric split propagator, closed form.
pub fn evolve_real<T: Real>(rho0: &QubitState<T>, b_sq: T, t: T, e_j: T) -> QubitState<T> {
    let s = rho0.in_basis(Basis::Eigen);
    let u = (-b_sq).exp();
    let one_minus_u = -(-b_sq).exp_m1();
    let h = lit::<T>(0.5);
    let rho11 = h * s.rho00() * one_minus_u + h * s.rho11() * (T::one() + u);
    let r10 = s.rho10();
    let rho10 = r10 * Complex::from_polar(h * (T::one() + u), e_j * t) + r10.conj() * (h * one_minus_u);
    with_coherence(rho11, rho10, Basis::Eigen).in_basis(rho0.basis)
}

/// Same dynamics as [`evolve_real`], evaluated as the explicit sum over
/// half-step eigenphases, charge-basis branches `(ξ, ς)` and the traced bath
/// factor `exp(influence_exponent)`.
pub fn evolve_real_by_branch_sum<T: Real>(rho0: &QubitState<T>, b_sq: T, c: T, t: T, e_j: T) -> Result<QubitState<T>> {
    let s = rho0.in_basis(Basis::Eigen);
    let v = eigenbasis_matrix::<T>();
    // ⟨ξ|φ_a⟩ = V[ξ][a]; eigenbasis overlaps ⟨φ_a|φ_b⟩ = δ_ab.
    let overlap = |xi: usize, a: usize| v.get(xi, a).re;
    let delta = |a: usize, b: usize| if a == b { T::one() } else { T::zero() };
    let lambda = [e_j * lit(0.5), -e_j * lit(0.5)];
    let chi = [T::one(), -T::one()];
    let mut factor = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for xi in 0..2 {
        for sg in 0..2 {
            factor[xi][sg] = influence_exponent(chi[xi], chi[sg], b_sq, c)?.exp();
        }
    }
    let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for (m, row) in out.iter_mut().enumerate() {
        for (n, entry) in row.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for alpha in 0..2 {
                for beta in 0..2 {
                    for xi in 0..2 {
                        for sg in 0..2 {
                            for p in 0..2 {
                                for q in 0..2 {
                                    for mu in 0..2 {
                                        for nu in 0..2 {
                                            let amp = delta(m, alpha)
                                                * overlap(xi, alpha)
                                                * overlap(xi, beta)
                                                * delta(beta, p)
                                                * delta(q, mu)
                                                * overlap(sg, mu)
                                                * overlap(sg, nu)
                                                * delta(nu, n);
                                            if amp == T::zero() {
                                                continue;
                                            }
                                            let phase =
                                                (lambda[mu] + lambda[nu] - lambda[alpha] - lambda[beta]) * t * lit(0.5);
                                            acc += s.rho.get(p, q) * factor[xi][sg] * Complex::from_polar(amp, phase);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            *entry = acc;
        }
    }
    let rho = Mat2 { m: out };
    Ok(QubitState::from_matrix_unchecked(rho, Basis::Eigen).in_basis(rho0.basis))
}

/// `σ = ρ - ρ_ideal`; both states must share a basis.
pub fn deviation<T: Real>(rho: &QubitState<T>, rho_ideal: &QubitState<T>) -> Result<DeviationOperator<T>> {
    if rho.basis != rho_ideal.basis {
        return Err(Error::BasisMismatch { expected: rho.basis.name(), found: rho_ideal.basis.name() });
    }
    Ok(DeviationOperator { sigma: rho.rho - rho_ideal.rho })
}

/// `‖σ‖_λ = √(|σ₁₀|² + σ₁₁²)`, the largest absolute eigenvalue of a traceless
/// Hermitian 2×2 matrix.
pub fn norm_lambda<T: Real>(dev: &DeviationOperator<T>) -> T {
    dev.sigma.get(1, 0).norm().hypot(dev.sigma.get(1, 1).re)
}

/// Closed-form `‖σ(t)‖_λ` for an eigenbasis initial state:
/// `½(1 - e^{-B²}) √((ρ₀₀ - ρ₁₁)² + 4|ρ₁₀|² sin²(E_J t/2 + arg ρ₁₀))`.
pub fn norm_lambda_closed_form<T: Real>(rho0: &QubitState<T>, b_sq: T, t: T, e_j: T) -> T {
    let s = rho0.in_basis(Basis::Eigen);
    let pop = s.rho00() - s.rho11();
    let r10 = s.rho10();
    let sin = (e_j * t * lit(0.5) + r10.arg()).sin();
    let coh = lit::<T>(2.0) * r10.norm() * sin;
    decoherence_d(b_sq) * pop.hypot(coh)
}

/// `D = ½(1 - e^{-B²})`, the supremum of `‖σ‖_λ` over initial states.
pub fn decoherence_d<T: Real>(b_sq: T) -> T {
    -lit::<T>(0.5) * (-b_sq).exp_m1()
}

/// Thread-safe memo of continuum `B²(t)` for one bath and tolerance.
#[derive(Debug)]
pub struct BSquaredCache<T: Real> {
    spec: BathSpec<T>,
    tol: T,
    values: Mutex<HashMap<u64, T>>,
}

impl<T: Real> BSquaredCache<T> {
    pub fn new(spec: BathSpec<T>, tol: T) -> Self {
        Self { spec, tol, values: Mutex::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &BathSpec<T> {
        &self.spec
    }

    pub fn get(&self, t: T) -> Result<T> {
        let key = t.as_f64().to_bits();
        if let Some(v) = self.values.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = b_squared_continuum(t, &self.spec, self.tol)?;
        self.values.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    pub fn decoherence(&self, t: T) -> Result<T> {
        self.get(t).map(decoherence_d)
    }

    pub fn len(&self) -> usize {
        self.values.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowDecoherenceOptions<T: Real> {
    pub quad_tol: T,
    /// First probe time of the doubling search.
    pub start: T,
    pub bisect: BisectOptions<T>,
    /// Grid size of the first-crossing scan used when `D` is not monotone.
    pub fallback_scan: usize,
}

impl<T: Real> Default for LowDecoherenceOptions<T> {
    fn default() -> Self {
        Self { quad_tol: lit(1e-8), start: lit(1e-4), bisect: BisectOptions::default(), fallback_scan: 2000 }
    }
}

/// Earliest `t ≤ t_max` with `D(t) = threshold`.
pub fn tau_low_decoherence<T: Real>(threshold: T, spec: &BathSpec<T>, t_max: T) -> Result<T> {
    let opts = LowDecoherenceOptions::default();
    let cache = BSquaredCache::new(*spec, opts.quad_tol);
    tau_low_decoherence_with(threshold, &cache, t_max, &opts)
}

/// [`tau_low_decoherence`] with explicit options and a caller-owned cache.
pub fn tau_low_decoherence_with<T: Real>(
    threshold: T,
    cache: &BSquaredCache<T>,
    t_max: T,
    opts: &LowDecoherenceOptions<T>,
) -> Result<T> {
    if !(threshold > T::zero() && threshold < lit(0.5)) {
        return domain(format!("threshold must lie in (0, 1/2), got {threshold}"));
    }
    if !(t_max > T::zero() && t_max.is_finite()) {
        return domain(format!("t_max must be positive and finite, got {t_max}"));
    }
    let no_crossing =
        |d: T| Error::NoCrossing { threshold: threshold.as_f64(), t_max: t_max.as_f64(), d_at_t_max: d.as_f64() };
    if cache.spec().eta == T::zero() {
        return Err(no_crossing(T::zero()));
    }

    let mut prev = (T::zero(), T::zero());
    let mut t = opts.start.min(t_max);
    let mut monotone = true;
    let (lo, hi) = loop {
        let d = cache.decoherence(t)?;
        if d < prev.1 {
            monotone = false;
        }
        if d >= threshold {
            break (prev.0, t);
        }
        if t >= t_max {
            return Err(no_crossing(d));
        }
        prev = (t, d);
        t = (t * lit(2.0)).min(t_max);
    };

    let (lo, hi) = if monotone {
        (lo, hi)
    } else {
        log::warn!("D(t) is not monotone on the doubling grid; scanning for the first crossing");
        first_crossing(cache, threshold, hi, opts.fallback_scan)?
    };
    bisect(|x| Ok(cache.decoherence(x)? - threshold), lo, hi, &opts.bisect)
}

fn first_crossing<T: Real>(cache: &BSquaredCache<T>, threshold: T, hi: T, n: usize) -> Result<(T, T)> {
    let n = n.max(2);
    let step = hi / T::from_usize(n).expect("grid size fits scalar");
    let mut prev = T::zero();
    for k in 1..=n {
        let t = step * T::from_usize(k).expect("grid index fits scalar");
        if cache.decoherence(t)? >= threshold {
            return Ok((prev, t));
        }
        prev = t;
    }
    Ok((prev, hi))
}

/// `‖σ‖_λ` samples for one initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateNorms<T: Real> {
    pub label: String,
    pub values: Vec<T>,
}

/// Sampled `t ↦ (B², C, D, ‖σ‖_λ per initial state)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceCurve<T: Real> {
    pub times: Vec<T>,
    pub b_sq: Vec<T>,
    pub c: Vec<T>,
    pub d: Vec<T>,
    pub norms: Vec<StateNorms<T>>,
}

impl<T: Real> DecoherenceCurve<T> {
    /// Assembles a curve from precomputed `B²` and `C` samples.
    pub fn from_samples(
        times: Vec<T>,
        b_sq: Vec<T>,
        c: Vec<T>,
        e_j: T,
        states: &[(String, QubitState<T>)],
    ) -> Result<Self> {
        if b_sq.len() != times.len() || c.len() != times.len() {
            return domain("curve sample arrays differ in length");
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return domain("curve times must be strictly increasing");
        }
        if b_sq.iter().any(|b| !(*b >= T::zero())) {
            return domain("B² samples must be non-negative");
        }
        let d = b_sq.iter().map(|&b| decoherence_d(b)).collect();
        let norms = states
            .iter()
            .map(|(label, s)| StateNorms {
                label: label.clone(),
                values: times.iter().zip(&b_sq).map(|(&t, &b)| norm_lambda_closed_form(s, b, t, e_j)).collect(),
            })
            .collect();
        Ok(Self { times, b_sq, c, d, norms })
    }

    /// Serial evaluation on the given grid.
    pub fn compute(
        spec: &BathSpec<T>,
        e_j: T,
        times: Vec<T>,
        states: &[(String, QubitState<T>)],
        quad_tol: T,
    ) -> Result<Self> {
        let b_sq = times.iter().map(|&t| b_squared_continuum(t, spec, quad_tol)).collect::<Result<Vec<_>>>()?;
        let c = times.iter().map(|&t| crate::bath::c_shift_continuum(t, spec)).collect::<Result<Vec<_>>>()?;
        Self::from_samples(times, b_sq, c, e_j, states)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// `n` evenly spaced points on `[0, t_max]`.
pub fn uniform_grid<T: Real>(t_max: T, n: usize) -> Result<Vec<T>> {
    if n < 2 {
        return domain("a time grid needs at least two samples");
    }
    if !(t_max > T::zero() && t_max.is_finite()) {
        return domain(format!("t_max must be positive, got {t_max}"));
    }
    let last = T::from_usize(n - 1).expect("grid size fits scalar");
    Ok((0..n).map(|k| t_max * T::from_usize(k).expect("grid index fits scalar") / last).collect())
}
