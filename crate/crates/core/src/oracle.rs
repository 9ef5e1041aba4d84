//! Brute-force reference dynamics: the qubit coupled to a handful of
//! Fock-truncated bath oscillators, propagated by dense eigendecomposition.
//!
//! Tensor ordering is `qubit ⊗ mode₀ ⊗ mode₁ ⊗ …` with the last mode
//! fastest. The qubit sits at the degeneracy point, `H_s = -(E_J/2) σ_x`, and
//! couples through `σ_z ⊗ Σ_k g_k (a_k† + a_k)`.

use nalgebra::{DMatrix, DVector, RealField, SymmetricEigen};
use num_complex::Complex;
use num_traits::Float;

use crate::bath::{b_squared_discrete, DiscreteBath};
use crate::error::{domain, Error, Result};
use crate::evolution::{evolve_real, Basis, QubitState};
use crate::mat2::Mat2;
use crate::scalar::{lit, Real};

/// Scalars usable by the dense linear algebra of the oracle.
pub trait OracleReal: Real + RealField {}
impl<T: Real + RealField> OracleReal for T {}

pub const DEFAULT_DIM_CAP: usize = 4096;
/// Thermal e-folds kept by [`default_n_fock`].
pub const TRUNCATION_EFOLDS: f64 = 30.0;
/// Frobenius errors at or below this are treated as rounding noise.
pub const ERROR_FLOOR: f64 = 1e-13;

type CMat<T> = DMatrix<Complex<T>>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedBathMode<T: Real> {
    pub omega: T,
    pub g: T,
    /// Kept levels `0..n_fock`.
    pub n_fock: usize,
}

impl<T: Real> TruncatedBathMode<T> {
    pub fn new(omega: T, g: T, n_fock: usize) -> Result<Self> {
        if !(omega > T::zero() && Float::is_finite(omega)) {
            return domain(format!("mode frequency must be positive, got {omega}"));
        }
        if !Float::is_finite(g) {
            return domain("mode coupling must be finite");
        }
        if n_fock < 2 {
            return domain(format!("Fock truncation must keep at least two levels, got {n_fock}"));
        }
        Ok(Self { omega, g, n_fock })
    }

    /// Boltzmann weight of the highest kept level relative to the ground state.
    pub fn truncation_weight(&self, beta: T) -> T {
        Float::exp(-beta * self.omega * T::from_usize(self.n_fock - 1).expect("fits"))
    }
}

/// Smallest truncation with `β ω (n - 1) ≥ 30`.
pub fn default_n_fock<T: Real>(omega: T, beta: T) -> usize {
    let levels = Float::ceil(lit::<T>(TRUNCATION_EFOLDS) / (beta * omega));
    levels.to_usize().unwrap_or(usize::MAX).saturating_add(1).max(2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeSystem<T: Real> {
    pub e_j: T,
    pub modes: Vec<TruncatedBathMode<T>>,
}

impl<T: Real> CompositeSystem<T> {
    pub fn new(e_j: T, modes: Vec<TruncatedBathMode<T>>) -> Result<Self> {
        Self::with_cap(e_j, modes, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(e_j: T, modes: Vec<TruncatedBathMode<T>>, cap: usize) -> Result<Self> {
        if !Float::is_finite(e_j) {
            return domain("E_J must be finite");
        }
        let sys = Self { e_j, modes };
        let dims = sys.dims();
        if dims > cap {
            return Err(Error::Resource { dims, cap });
        }
        Ok(sys)
    }

    /// Oracle counterpart of a discrete bath: `g_k = √(g_k²)`.
    pub fn from_discrete_bath(e_j: T, bath: &DiscreteBath<T>, n_fock: usize) -> Result<Self> {
        let modes = bath
            .modes()
            .iter()
            .map(|m| TruncatedBathMode::new(m.omega, Float::sqrt(m.g_sq), n_fock))
            .collect::<Result<Vec<_>>>()?;
        Self::new(e_j, modes)
    }

    /// The `(ω_k, g_k²)` list seen by the analytic sums.
    pub fn discrete_bath(&self) -> Result<DiscreteBath<T>> {
        let mut pairs: Vec<(T, T)> = self.modes.iter().map(|m| (m.omega, m.g * m.g)).collect();
        pairs.sort_by(|a, b| a.0.as_f64().total_cmp(&b.0.as_f64()));
        DiscreteBath::from_pairs(&pairs)
    }

    pub fn bath_dim(&self) -> usize {
        self.modes.iter().map(|m| m.n_fock).product()
    }

    pub fn dims(&self) -> usize {
        2 * self.bath_dim()
    }

    pub fn with_couplings_scaled(&self, k: T) -> Self {
        let modes = self.modes.iter().map(|m| TruncatedBathMode { g: m.g * k, ..*m }).collect();
        Self { e_j: self.e_j, modes }
    }

    /// Indices of modes whose truncation keeps fewer than 30 thermal e-folds.
    pub fn poorly_truncated(&self, beta: T) -> Vec<usize> {
        let floor = Float::exp(-lit::<T>(TRUNCATION_EFOLDS));
        self.modes.iter().enumerate().filter(|(_, m)| m.truncation_weight(beta) > floor).map(|(k, _)| k).collect()
    }
}

/// Dense Hamiltonians on the full tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonians<T: OracleReal> {
    /// `-(E_J/2) σ_x ⊗ I`.
    pub h_s: CMat<T>,
    /// `σ_z ⊗ Σ g_k (a_k† + a_k) + I ⊗ Σ ω_k a_k† a_k`.
    pub h_ib: CMat<T>,
    pub h_full: CMat<T>,
}

fn cr<T: OracleReal>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

fn embed_mode<T: OracleReal>(sys: &CompositeSystem<T>, k: usize, op: &CMat<T>) -> CMat<T> {
    let mut out = CMat::<T>::identity(1, 1);
    for (j, m) in sys.modes.iter().enumerate() {
        let factor = if j == k { op.clone() } else { CMat::<T>::identity(m.n_fock, m.n_fock) };
        out = out.kronecker(&factor);
    }
    out
}

fn annihilation<T: OracleReal>(n: usize) -> CMat<T> {
    CMat::from_fn(
        n,
        n,
        |r, c| {
            if c == r + 1 {
                cr(Float::sqrt(T::from_usize(c).expect("fits")))
            } else {
                cr(T::zero())
            }
        },
    )
}

pub fn build_hamiltonians<T: OracleReal>(sys: &CompositeSystem<T>) -> Hamiltonians<T> {
    let nb = sys.bath_dim();
    let mut coupling = CMat::<T>::zeros(nb, nb);
    let mut free = CMat::<T>::zeros(nb, nb);
    for (k, m) in sys.modes.iter().enumerate() {
        let a = annihilation::<T>(m.n_fock);
        let x = &a + a.adjoint();
        let num = a.adjoint() * &a;
        coupling += embed_mode(sys, k, &x) * cr(m.g);
        free += embed_mode(sys, k, &num) * cr(m.omega);
    }
    let c = |x: f64| cr(lit::<T>(x));
    let sx = CMat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
    let sz = CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
    let id_b = CMat::<T>::identity(nb, nb);
    let h_s = (sx * cr(-sys.e_j * lit(0.5))).kronecker(&id_b);
    let h_ib = sz.kronecker(&coupling) + CMat::<T>::identity(2, 2).kronecker(&free);
    let h_full = &h_s + &h_ib;
    Hamiltonians { h_s, h_ib, h_full }
}

/// `Θ = ⊗_k e^{-β M_k} / Tr e^{-β M_k}` as its diagonal.
pub fn thermal_bath_diagonal<T: OracleReal>(sys: &CompositeSystem<T>, beta: T) -> Result<DVector<T>> {
    if !(beta > T::zero()) {
        return domain(format!("beta must be positive, got {beta}"));
    }
    let poor = sys.poorly_truncated(beta);
    if !poor.is_empty() {
        log::warn!("bath modes {poor:?} keep fewer than {TRUNCATION_EFOLDS} thermal e-folds");
    }
    let mut diag = DVector::from_element(1, T::one());
    for m in &sys.modes {
        let weights: Vec<T> = (0..m.n_fock)
            .map(|n| {
                if Float::is_infinite(beta) {
                    if n == 0 {
                        T::one()
                    } else {
                        T::zero()
                    }
                } else {
                    Float::exp(-beta * m.omega * T::from_usize(n).expect("fits"))
                }
            })
            .collect();
        let z = weights.iter().fold(T::zero(), |a, &b| a + b);
        let mode = DVector::from_iterator(m.n_fock, weights.into_iter().map(|w| w / z));
        diag = diag.kronecker(&mode);
    }
    Ok(diag)
}

/// Bath density matrix Θ (diagonal, unit trace).
pub fn thermal_bath_state<T: OracleReal>(sys: &CompositeSystem<T>, beta: T) -> Result<DMatrix<T>> {
    Ok(DMatrix::from_diagonal(&thermal_bath_diagonal(sys, beta)?))
}

/// `Σ n e^{-βωn} / Σ e^{-βωn}` over the kept levels.
pub fn truncated_occupancy<T: OracleReal>(mode: &TruncatedBathMode<T>, beta: T) -> T {
    let (mut num, mut den) = (T::zero(), T::zero());
    for n in 0..mode.n_fock {
        let nf = T::from_usize(n).expect("fits");
        let w = Float::exp(-beta * mode.omega * nf);
        num += nf * w;
        den += w;
    }
    num / den
}

/// Cached eigendecomposition `H = V Λ V†` for repeated exponentials.
#[derive(Debug, Clone)]
pub struct Propagator<T: OracleReal> {
    vectors: CMat<T>,
    values: DVector<T>,
}

impl<T: OracleReal> Propagator<T> {
    pub fn new(h: &CMat<T>) -> Self {
        let eig = SymmetricEigen::new(h.clone());
        Self { vectors: eig.eigenvectors, values: eig.eigenvalues }
    }

    pub fn eigenvalues(&self) -> &DVector<T> {
        &self.values
    }

    /// `e^{-i H t}`.
    pub fn unitary(&self, t: T) -> CMat<T> {
        let mut scaled = self.vectors.clone();
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= Complex::from_polar(T::one(), -self.values[j] * t);
        }
        scaled * self.vectors.adjoint()
    }
}

/// Reduced qubit channel `ρ ↦ Tr_B[U (ρ ⊗ Θ) U†]` in the charge basis,
/// stored as `K[a][a'][q][q']`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedChannel<T: Real> {
    k: [[[[Complex<T>; 2]; 2]; 2]; 2],
}

impl<T: OracleReal> ReducedChannel<T> {
    pub fn from_unitary(u: &CMat<T>, theta: &DVector<T>) -> Self {
        let nb = theta.len();
        let mut k = [[[[cr(T::zero()); 2]; 2]; 2]; 2];
        for a in 0..2 {
            for ap in 0..2 {
                for q in 0..2 {
                    for qp in 0..2 {
                        let mut acc = cr(T::zero());
                        for j in 0..nb {
                            let (r, rp) = (a * nb + j, ap * nb + j);
                            for (kk, &w) in theta.iter().enumerate() {
                                if w == T::zero() {
                                    continue;
                                }
                                acc += u[(r, q * nb + kk)] * u[(rp, qp * nb + kk)].conj() * cr(w);
                            }
                        }
                        k[a][ap][q][qp] = acc;
                    }
                }
            }
        }
        Self { k }
    }

    /// Applies the channel; the result is returned in the input's basis.
    pub fn apply(&self, rho0: &QubitState<T>) -> QubitState<T> {
        let rho = rho0.in_basis(Basis::Computational).rho();
        let mut out = Mat2::<T>::zero();
        for a in 0..2 {
            for ap in 0..2 {
                let mut acc = cr(T::zero());
                for q in 0..2 {
                    for qp in 0..2 {
                        acc += self.k[a][ap][q][qp] * rho.get(q, qp);
                    }
                }
                out.m[a][ap] = acc;
            }
        }
        QubitState::from_matrix_unchecked(out, Basis::Computational).in_basis(rho0.basis())
    }
}

/// Prepared oracle: Hamiltonians and their eigendecompositions.
#[derive(Debug, Clone)]
pub struct Oracle<T: OracleReal> {
    sys: CompositeSystem<T>,
    hams: Hamiltonians<T>,
    full: Propagator<T>,
    system: Propagator<T>,
    interaction: Propagator<T>,
}

impl<T: OracleReal> Oracle<T> {
    pub fn new(sys: &CompositeSystem<T>) -> Self {
        let hams = build_hamiltonians(sys);
        let full = Propagator::new(&hams.h_full);
        let system = Propagator::new(&hams.h_s);
        let interaction = Propagator::new(&hams.h_ib);
        Self { sys: sys.clone(), hams, full, system, interaction }
    }

    pub fn system(&self) -> &CompositeSystem<T> {
        &self.sys
    }

    pub fn hamiltonians(&self) -> &Hamiltonians<T> {
        &self.hams
    }

    pub fn exact_unitary(&self, t: T) -> CMat<T> {
        self.full.unitary(t)
    }

    /// `e^{-iH_s t/2} e^{-i(H_I+H_B) t} e^{-iH_s t/2}`.
    pub fn split_unitary(&self, t: T) -> CMat<T> {
        let half = self.system.unitary(t * lit(0.5));
        &half * self.interaction.unitary(t) * &half
    }

    pub fn exact_channel(&self, beta: T, t: T) -> Result<ReducedChannel<T>> {
        Ok(ReducedChannel::from_unitary(&self.exact_unitary(t), &thermal_bath_diagonal(&self.sys, beta)?))
    }

    pub fn split_channel(&self, beta: T, t: T) -> Result<ReducedChannel<T>> {
        Ok(ReducedChannel::from_unitary(&self.split_unitary(t), &thermal_bath_diagonal(&self.sys, beta)?))
    }

    pub fn evolve_exact(&self, rho0: &QubitState<T>, beta: T, t: T) -> Result<QubitState<T>> {
        Ok(self.exact_channel(beta, t)?.apply(rho0))
    }

    pub fn evolve_split(&self, rho0: &QubitState<T>, beta: T, t: T) -> Result<QubitState<T>> {
        Ok(self.split_channel(beta, t)?.apply(rho0))
    }
}

/// Exact reduced dynamics `Tr_B[e^{-iHt} (ρ ⊗ Θ) e^{iHt}]`.
pub fn evolve_exact<T: OracleReal>(
    sys: &CompositeSystem<T>,
    rho0: &QubitState<T>,
    beta: T,
    t: T,
) -> Result<QubitState<T>> {
    Oracle::new(sys).evolve_exact(rho0, beta, t)
}

/// Reduced dynamics under the symmetric split propagator.
pub fn evolve_split<T: OracleReal>(
    sys: &CompositeSystem<T>,
    rho0: &QubitState<T>,
    beta: T,
    t: T,
) -> Result<QubitState<T>> {
    Oracle::new(sys).evolve_split(rho0, beta, t)
}

/// Least-squares fit of `log err = slope · log t + intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit<T: Real> {
    pub slope: T,
    pub intercept: T,
    /// `(t, ‖ρ_split - ρ_exact‖_F)` for every grid point.
    pub errors: Vec<(T, T)>,
    /// Points dropped for sitting at the rounding floor.
    pub excluded: usize,
}

fn check_geometric<T: Real>(t_list: &[T]) -> Result<()> {
    if t_list.len() < 6 {
        return domain(format!("error scaling needs at least 6 times, got {}", t_list.len()));
    }
    if t_list.iter().any(|&t| !(t > T::zero() && Float::is_finite(t))) {
        return domain("error-scaling times must be positive and finite");
    }
    let ratio = t_list[1] / t_list[0];
    if !(ratio > T::one()) {
        return domain("error-scaling times must be increasing");
    }
    for w in t_list.windows(2) {
        if Float::abs(w[1] / w[0] - ratio) > ratio * lit(1e-6) {
            return domain("error-scaling times must form a geometric grid");
        }
    }
    Ok(())
}

/// Measures the local order of the split propagator against exact evolution.
pub fn error_scaling<T: OracleReal>(
    sys: &CompositeSystem<T>,
    rho0: &QubitState<T>,
    beta: T,
    t_list: &[T],
) -> Result<ScalingFit<T>> {
    check_geometric(t_list)?;
    let t_last = t_list[t_list.len() - 1];
    if Float::abs(sys.e_j) * t_last * lit(0.5) > T::one() {
        log::warn!("largest time {t_last} leaves the short-time regime (E_J t / 2 > 1)");
    }
    let oracle = Oracle::new(sys);
    let mut errors = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let exact = oracle.evolve_exact(rho0, beta, t)?;
        let split = oracle.evolve_split(rho0, beta, t)?;
        errors.push((t, (split.rho() - exact.rho()).frobenius_norm()));
    }
    let usable: Vec<(T, T)> =
        errors.iter().filter(|(_, e)| *e > lit(ERROR_FLOOR)).map(|&(t, e)| (Float::ln(t), Float::ln(e))).collect();
    let excluded = errors.len() - usable.len();
    if usable.len() < 3 {
        return Err(Error::CommutingCase { usable: usable.len(), total: errors.len() });
    }
    if excluded > 0 {
        log::warn!("{excluded} error-scaling points at the rounding floor were excluded");
    }
    let n = T::from_usize(usable.len()).expect("fits");
    let mx = usable.iter().fold(T::zero(), |a, p| a + p.0) / n;
    let my = usable.iter().fold(T::zero(), |a, p| a + p.1) / n;
    let sxy = usable.iter().fold(T::zero(), |a, p| a + (p.0 - mx) * (p.1 - my));
    let sxx = usable.iter().fold(T::zero(), |a, p| a + (p.0 - mx) * (p.0 - mx));
    let slope = sxy / sxx;
    Ok(ScalingFit { slope, intercept: my - slope * mx, errors, excluded })
}

/// Split-propagator oracle next to the closed-form dynamics fed with the
/// discrete `B²` of the same modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitComparison<T: Real> {
    pub split: QubitState<T>,
    pub closed: QubitState<T>,
    pub b_sq: T,
    pub max_abs_diff: T,
}

pub fn split_vs_closed_form<T: OracleReal>(
    sys: &CompositeSystem<T>,
    rho0: &QubitState<T>,
    beta: T,
    t: T,
) -> Result<SplitComparison<T>> {
    let split = evolve_split(sys, rho0, beta, t)?;
    compare_with_closed_form(sys, split, rho0, beta, t)
}

/// Builds the comparison record for an already computed split state.
pub fn compare_with_closed_form<T: OracleReal>(
    sys: &CompositeSystem<T>,
    split: QubitState<T>,
    rho0: &QubitState<T>,
    beta: T,
    t: T,
) -> Result<SplitComparison<T>> {
    let b_sq = b_squared_discrete(t, &sys.discrete_bath()?, beta);
    let closed = evolve_real(rho0, b_sq, t, sys.e_j).in_basis(split.basis());
    let max_abs_diff = (split.rho() - closed.rho()).max_abs();
    Ok(SplitComparison { split, closed, b_sq, max_abs_diff })
}
