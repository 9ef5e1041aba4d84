//! Charge-qubit Hamiltonians, circuit-derived parameters and the ideal gate.
//!
//! The island Hamiltonian is `E_ch (n - n_g)² - E_J cos φ`. Written in the
//! Cooper-pair number basis it is tridiagonal; near `n_g = 1/2` with
//! `E_J ≪ E_ch` only the two lowest charge states matter and the qubit is
//! `H_s = -½ B_z σ_z - ½ B_x σ_x` with `B_z = E_ch (1 - 2 n_g)`, `B_x = E_J`.

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;

use crate::error::{domain, Result};
use crate::evolution::{Basis, QubitState};
use crate::mat2::Mat2;
use crate::scalar::{lit, Real};
use crate::units::{ELEMENTARY_CHARGE_C, HBAR_UEV_S, RESISTANCE_QUANTUM_OHM};

/// Circuit elements of a single-junction charge qubit, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeQubitCircuit<T: Real> {
    /// Gate capacitance (F).
    pub c_g: T,
    /// Junction capacitance (F).
    pub c_j: T,
    /// Total capacitance seen by the environment (F).
    pub c_t: T,
    /// Gate voltage (V).
    pub v_g: T,
    /// Junction critical current (A).
    pub i_c: T,
    /// Control-line impedance (Ω).
    pub r: T,
}

impl<T: Real> ChargeQubitCircuit<T> {
    pub fn new(c_g: T, c_j: T, c_t: T, v_g: T, i_c: T, r: T) -> Result<Self> {
        for (name, v) in [("C_g", c_g), ("C_J", c_j), ("C_t", c_t), ("I_c", i_c), ("R", r)] {
            if !(v > T::zero() && v.is_finite()) {
                return domain(format!("{name} must be positive and finite, got {v}"));
            }
        }
        if !v_g.is_finite() {
            return domain(format!("V_g must be finite, got {v_g}"));
        }
        Ok(Self { c_g, c_j, c_t, v_g, i_c, r })
    }

    pub fn charging_energy(&self) -> Result<T> {
        charging_energy(self.c_g, self.c_j)
    }

    pub fn josephson_energy(&self) -> Result<T> {
        josephson_energy(self.i_c)
    }

    pub fn gate_charge(&self) -> T {
        dimensionless_gate_charge(self.c_g, self.v_g)
    }

    pub fn eta(&self) -> Result<T> {
        eta_from_circuit(self.r, self.c_t, self.c_j)
    }

    pub fn two_level(&self) -> Result<TwoLevelParams<T>> {
        two_level_fields(self.charging_energy()?, self.gate_charge(), self.josephson_energy()?)
    }
}

/// Effective qubit fields in μeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelParams<T: Real> {
    pub b_z: T,
    pub b_x: T,
}

impl<T: Real> TwoLevelParams<T> {
    /// `-½ B_z σ_z - ½ B_x σ_x` in the charge basis {|0⟩, |1⟩}.
    pub fn hamiltonian(&self) -> Mat2<T> {
        let h = lit::<T>(0.5);
        Mat2::from_real(-h * self.b_z, -h * self.b_x, -h * self.b_x, h * self.b_z)
    }

    /// Level splitting `√(B_z² + B_x²)`.
    pub fn splitting(&self) -> T {
        self.b_z.hypot(self.b_x)
    }

    pub fn at_degeneracy(&self) -> bool {
        self.b_z == T::zero()
    }
}

/// `e² / (C_g + C_J)` in μeV.
pub fn charging_energy<T: Real>(c_g: T, c_j: T) -> Result<T> {
    let c = c_g + c_j;
    if !(c > T::zero() && c.is_finite()) {
        return domain(format!("capacitance sum must be positive, got {c} F"));
    }
    // e²/C joules = (e/C) volts × e; one μeV is e × 1e-6 J.
    Ok(lit::<T>(ELEMENTARY_CHARGE_C) / c * lit(1e6))
}

/// `I_c ħ / 2e` in μeV.
pub fn josephson_energy<T: Real>(i_c: T) -> Result<T> {
    if !(i_c > T::zero() && i_c.is_finite()) {
        return domain(format!("critical current must be positive, got {i_c} A"));
    }
    Ok(i_c / lit(2.0 * ELEMENTARY_CHARGE_C) * lit(HBAR_UEV_S))
}

/// `C_g V_g / 2e`.
pub fn dimensionless_gate_charge<T: Real>(c_g: T, v_g: T) -> T {
    c_g * v_g / lit(2.0 * ELEMENTARY_CHARGE_C)
}

pub fn two_level_fields<T: Real>(e_ch: T, n_g: T, e_j: T) -> Result<TwoLevelParams<T>> {
    if !(e_j > T::zero() && e_j.is_finite()) {
        return domain(format!("E_J must be positive, got {e_j} μeV"));
    }
    if !(e_ch.is_finite() && n_g.is_finite()) {
        return domain("E_ch and n_g must be finite");
    }
    Ok(TwoLevelParams { b_z: e_ch * (T::one() - lit::<T>(2.0) * n_g), b_x: e_j })
}

/// Dimensionless dissipation strength `(R/R_Q)(C_t/C_J)²`.
pub fn eta_from_circuit<T: Real>(r: T, c_t: T, c_j: T) -> Result<T> {
    if !(r > T::zero()) || !(c_j > T::zero()) || !r.is_finite() || !c_j.is_finite() {
        return domain(format!("R and C_J must be positive, got R = {r}, C_J = {c_j}"));
    }
    let ratio = c_t / c_j;
    Ok(r / lit(RESISTANCE_QUANTUM_OHM) * ratio * ratio)
}

/// Charge-basis Hamiltonian restricted to `n_min..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeHamiltonianWindow<T: Real> {
    pub n_min: i64,
    pub n_max: i64,
    pub matrix: DMatrix<T>,
}

/// Summary of how well the two lowest charge states isolate a qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStateValidity<T: Real> {
    /// Splitting between the two lowest levels.
    pub qubit_splitting: T,
    /// Gap from the second to the third level.
    pub leakage_gap: T,
    /// `leakage_gap / qubit_splitting`; large means the reduction holds.
    pub gap_ratio: T,
}

impl<T: Real> ChargeHamiltonianWindow<T> {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn charge_numbers(&self) -> impl Iterator<Item = i64> {
        self.n_min..=self.n_max
    }
}

impl<T: Real + RealField> ChargeHamiltonianWindow<T> {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        let eig = self.matrix.clone().symmetric_eigenvalues();
        let mut v: Vec<T> = eig.iter().copied().collect();
        v.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        v
    }

    /// Requires at least three charge states.
    pub fn two_state_validity(&self) -> Result<TwoStateValidity<T>> {
        if self.dim() < 3 {
            return domain("validity report needs a window of at least three charge states");
        }
        let ev = self.eigenvalues();
        let qubit_splitting = ev[1] - ev[0];
        let leakage_gap = ev[2] - ev[1];
        Ok(TwoStateValidity { qubit_splitting, leakage_gap, gap_ratio: leakage_gap / qubit_splitting })
    }
}

/// Tridiagonal charge Hamiltonian: diagonal `E_ch (n - n_g)²`, hopping `-E_J/2`.
pub fn charge_hamiltonian<T: Real>(
    e_ch: T,
    n_g: T,
    e_j: T,
    n_min: i64,
    n_max: i64,
) -> Result<ChargeHamiltonianWindow<T>> {
    if n_max < n_min + 1 {
        return domain(format!("charge window {n_min}..={n_max} holds fewer than two states"));
    }
    let dim = (n_max - n_min + 1) as usize;
    let hop = -e_j * lit(0.5);
    let matrix = DMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            let n = T::from_i64(n_min + r as i64).expect("charge number fits scalar");
            e_ch * (n - n_g) * (n - n_g)
        } else if r.abs_diff(c) == 1 {
            hop
        } else {
            T::zero()
        }
    });
    Ok(ChargeHamiltonianWindow { n_min, n_max, matrix })
}

/// Ideal single-qubit rotation `exp(i E_J τ σ_x / 2)` at the degeneracy point.
pub fn gate_unitary<T: Real>(e_j: T, tau: T) -> Mat2<T> {
    let half = e_j * tau * lit(0.5);
    let c = Complex::new(half.cos(), T::zero());
    let s = Complex::new(T::zero(), half.sin());
    Mat2::new(c, s, s, c)
}

/// Columns are the `H_s` eigenvectors at degeneracy written in the charge basis:
/// `φ₀ = (|0⟩ - |1⟩)/√2`, `φ₁ = (|0⟩ + |1⟩)/√2`.
pub(crate) fn eigenbasis_matrix<T: Real>() -> Mat2<T> {
    let r = T::FRAC_1_SQRT_2();
    Mat2::from_real(r, r, -r, r)
}

/// Re-expresses a state in the other representation (charge basis ↔ `H_s` eigenbasis).
pub fn basis_change<T: Real>(state: &QubitState<T>) -> QubitState<T> {
    let v = eigenbasis_matrix::<T>();
    let rho = state.rho();
    let (rho, basis) = match state.basis() {
        Basis::Eigen => (v * rho * v.transpose(), Basis::Computational),
        Basis::Computational => (v.transpose() * rho * v, Basis::Eigen),
    };
    QubitState::from_matrix_unchecked(rho, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::pure_state;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn charging_energy_values() {
        // e/C volts ↦ μeV: 1.602177e-19 / 1.602177e-15 F = 1e-4 V = 100 μeV.
        let e = charging_energy(0.602177e-15_f64, 1.0e-15).unwrap();
        assert!(close(e, 100.0, 1e-9), "{e}");
        let e2 = charging_energy(1.204354e-15_f64, 2.0e-15).unwrap();
        assert!(close(e2, 50.0, 1e-9));
        assert!(charging_energy(0.0_f64, 0.0).is_err());
        assert!(charging_energy(-1e-15_f64, 0.5e-15).is_err());
    }

    #[test]
    fn josephson_energy_values() {
        // I_c = 2e E_J / ħ, inverted independently.
        let i_c = 51.8 / HBAR_UEV_S * 2.0 * ELEMENTARY_CHARGE_C;
        assert!(close(i_c * 1e9, 25.218, 1e-3));
        assert!(close(josephson_energy(i_c).unwrap(), 51.8, 1e-9));
        assert!(close(josephson_energy(25.17e-9_f64).unwrap(), 51.70, 0.01));
        let e1 = josephson_energy(10e-9_f64).unwrap();
        assert!(close(josephson_energy(20e-9_f64).unwrap(), 2.0 * e1, 1e-12));
        assert!(josephson_energy(0.0_f64).is_err());
    }

    #[test]
    fn gate_charge_values() {
        assert!(close(dimensionless_gate_charge(2.0 * ELEMENTARY_CHARGE_C, 1.0_f64), 1.0, 1e-15));
        assert_eq!(dimensionless_gate_charge(1e-18_f64, 0.0), 0.0);
        assert!(close(dimensionless_gate_charge(1e-18_f64, 0.1602), 0.49995, 1e-5));
    }

    #[test]
    fn two_level_field_values() {
        assert_eq!(two_level_fields(100.0_f64, 0.5, 51.8).unwrap().b_z, 0.0);
        assert!(two_level_fields(100.0_f64, 0.5, 51.8).unwrap().at_degeneracy());
        assert_eq!(two_level_fields(100.0_f64, 0.25, 51.8).unwrap().b_z, 50.0);
        assert_eq!(two_level_fields(100.0_f64, 0.5, 51.8).unwrap().b_x, 51.8);
        assert!(two_level_fields(100.0_f64, 0.5, 0.0).is_err());
    }

    #[test]
    fn eta_values() {
        assert!(close(eta_from_circuit(RESISTANCE_QUANTUM_OHM, 1e-15_f64, 1e-15).unwrap(), 1.0, 1e-15));
        // (50 / 6453.2) x² = 1e-6  ⇒  x = 0.011361
        let x = (1e-6 * RESISTANCE_QUANTUM_OHM / 50.0_f64).sqrt();
        assert!(close(x, 0.01136, 1e-5));
        let eta = eta_from_circuit(50.0, x * 1e-15, 1e-15).unwrap();
        assert!(close(eta, 1e-6, 1e-15));
        assert!(eta_from_circuit(0.0_f64, 1.0, 1.0).is_err());
        assert!(eta_from_circuit(50.0_f64, 1.0, 0.0).is_err());
    }

    #[test]
    fn circuit_bundle() {
        assert!(ChargeQubitCircuit::new(1e-18_f64, 1e-15, 1e-17, 0.0, 1e-8, 50.0).is_ok());
        assert!(ChargeQubitCircuit::new(1e-18_f64, 1e-15, 1e-17, 0.0, 0.0, 50.0).is_err());
        let c = ChargeQubitCircuit::new(1e-18_f64, 1.602177e-15 - 1e-18, 1e-17, 0.1602177, 25.2e-9, 50.0).unwrap();
        let p = c.two_level().unwrap();
        assert!(p.b_z.abs() < 1e-3);
        assert!(close(p.b_x, 51.76, 0.01));
    }

    #[test]
    fn two_level_window_splitting_is_ej() {
        let h = charge_hamiltonian(100.0_f64, 0.5, 51.8, 0, 1).unwrap();
        assert_eq!(h.matrix[(0, 0)], 25.0);
        assert_eq!(h.matrix[(0, 1)], -25.9);
        let ev = h.eigenvalues();
        assert!(close(ev[1] - ev[0], 51.8, 1e-12));
        assert!(h.two_state_validity().is_err());
    }

    #[test]
    fn decoupled_window_is_diagonal() {
        let h = charge_hamiltonian(100.0_f64, 0.3, 0.0, -1, 2).unwrap();
        for (i, n) in h.charge_numbers().enumerate() {
            for j in 0..h.dim() {
                let expected = if i == j { 100.0 * (n as f64 - 0.3).powi(2) } else { 0.0 };
                assert!((h.matrix[(i, j)] - expected).abs() <= 1e-13 * expected.abs());
            }
        }
    }

    #[test]
    fn wide_window_supports_two_state_reduction() {
        let (e_ch, e_j) = (2000.0_f64, 51.8);
        let h = charge_hamiltonian(e_ch, 0.5, e_j, -2, 3).unwrap();
        let ev = h.eigenvalues();
        assert!(close(ev[0], e_ch / 4.0 - e_j / 2.0, 0.5));
        assert!(close(ev[1], e_ch / 4.0 + e_j / 2.0, 0.5));
        assert!(ev[2] - ev[1] > 1.9 * e_ch);
        let v = h.two_state_validity().unwrap();
        assert!(v.gap_ratio > 70.0);
    }

    #[test]
    fn window_too_small() {
        assert!(charge_hamiltonian(1.0_f64, 0.5, 1.0, 3, 3).is_err());
    }

    #[test]
    fn gate_unitary_special_angles() {
        let id = gate_unitary(51.8_f64, 0.0);
        assert_eq!(id, Mat2::identity());
        let not = gate_unitary(1.0_f64, PI);
        let i_sx = Mat2::sigma_x().scale(Complex::new(0.0, 1.0));
        assert!((not - i_sx).max_abs() < 1e-15);
        let root = gate_unitary(2.0_f64, PI / 4.0);
        assert!(close(root.get(0, 0).re, FRAC_1_SQRT_2, 1e-15));
        assert!(close(root.get(0, 1).im, FRAC_1_SQRT_2, 1e-15));
        assert!((root * root - i_sx).max_abs() < 1e-15);
    }

    #[test]
    fn eigenbasis_diagonalises_degenerate_hamiltonian() {
        let h = two_level_fields(0.0_f64, 0.5, 51.8).unwrap().hamiltonian();
        let v = eigenbasis_matrix::<f64>();
        let d = v.transpose() * h * v;
        assert!(close(d.get(0, 0).re, 25.9, 1e-12));
        assert!(close(d.get(1, 1).re, -25.9, 1e-12));
        assert!(d.get(0, 1).norm() < 1e-12);
    }

    #[test]
    fn basis_change_examples() {
        let ground = pure_state(0.0_f64, 0.0);
        let comp = basis_change(&ground);
        assert_eq!(comp.basis(), Basis::Computational);
        assert!(close(comp.rho().get(1, 0).re, -0.5, 1e-15));
        assert!(close(comp.rho().get(0, 0).re, 0.5, 1e-15));
        assert!(close(comp.rho().get(1, 1).re, 0.5, 1e-15));

        let mixed = QubitState::<f64>::maximally_mixed(Basis::Eigen);
        let m2 = basis_change(&mixed);
        assert!((m2.rho() - mixed.rho()).max_abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn gate_unitary_is_unitary(e_j in 0.0f64..1e3, tau in -10.0f64..10.0) {
            let u = gate_unitary(e_j, tau);
            prop_assert!((u.adjoint() * u - Mat2::identity()).max_abs() < 1e-14);
        }

        #[test]
        fn b_z_is_odd_about_degeneracy(e_ch in 1.0f64..1e3, n_g in -2.0f64..3.0) {
            let a = two_level_fields(e_ch, n_g, 1.0).unwrap().b_z;
            let b = two_level_fields(e_ch, 1.0 - n_g, 1.0).unwrap().b_z;
            prop_assert!((a + b).abs() <= 1e-12 * e_ch.max(1.0) * (1.0 + n_g.abs()));
        }

        #[test]
        fn charge_hamiltonian_symmetric_tridiagonal(
            e_ch in 1.0f64..500.0, n_g in 0.0f64..1.0, e_j in 0.0f64..100.0,
            n_min in -4i64..0, width in 1i64..6,
        ) {
            let h = charge_hamiltonian(e_ch, n_g, e_j, n_min, n_min + width).unwrap();
            let m = &h.matrix;
            prop_assert_eq!(m, &m.transpose());
            for r in 0..h.dim() {
                for c in 0..h.dim() {
                    if r.abs_diff(c) > 1 { prop_assert_eq!(m[(r, c)], 0.0); }
                }
            }
            prop_assert!(h.eigenvalues().iter().all(|x| x.is_finite()));
        }

        #[test]
        fn basis_change_is_involutive_and_spectral(
            theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI), mix in 0.0f64..1.0,
        ) {
            let pure = pure_state(theta, phi);
            let mixed = QubitState::maximally_mixed(Basis::Eigen);
            let rho = pure.rho().scale(Complex::new(mix, 0.0)) + mixed.rho().scale(Complex::new(1.0 - mix, 0.0));
            let s = QubitState::new(rho, Basis::Eigen).unwrap();
            let there = basis_change(&s);
            let back = basis_change(&there);
            prop_assert_eq!(back.basis(), Basis::Eigen);
            prop_assert!((back.rho() - s.rho()).max_abs() < 1e-14);
            prop_assert!((there.rho().trace() - Complex::new(1.0, 0.0)).norm() < 1e-14);
            prop_assert!(there.rho().hermiticity_defect() < 1e-14);
            let (e1, e2) = (s.rho().hermitian_eigenvalues(), there.rho().hermitian_eigenvalues());
            prop_assert!((e1[0] - e2[0]).abs() < 1e-13 && (e1[1] - e2[1]).abs() < 1e-13);
        }
    }
}
