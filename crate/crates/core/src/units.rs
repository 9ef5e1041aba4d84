//! Physical constants and the natural-unit convention.
//!
//! The core works with ħ = 1: energies are carried in μeV and a dimensionless
//! time `t` stands for the physical duration `ħ t`, i.e. `t × 6.582119e-10 s`.
//! Conversions to SI happen only at the edges (CLI, reports).

use crate::error::{domain, Result};
use crate::scalar::{lit, Real};

/// Reduced Planck constant in μeV·s.
pub const HBAR_UEV_S: f64 = 6.582119e-10;
/// Boltzmann constant in μeV/K.
pub const KB_UEV_PER_K: f64 = 86.17333;
/// One dimensionless time unit expressed in seconds (ħ / 1 μeV).
pub const TIME_UNIT_S: f64 = HBAR_UEV_S;
/// Elementary charge in coulombs.
pub const ELEMENTARY_CHARGE_C: f64 = 1.602177e-19;
/// Planck constant in J·s.
pub const PLANCK_J_S: f64 = 6.626070e-34;
/// One μeV in joules.
pub const UEV_IN_J: f64 = ELEMENTARY_CHARGE_C * 1e-6;
/// Superconducting resistance quantum h/(2e)² in ohms.
pub const RESISTANCE_QUANTUM_OHM: f64 = PLANCK_J_S / (4.0 * ELEMENTARY_CHARGE_C * ELEMENTARY_CHARGE_C);

/// The fixed constant set, bundled for reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar_uev_s: f64,
    pub kb_uev_per_k: f64,
    pub time_unit_s: f64,
}

impl UnitSystem {
    pub const STANDARD: UnitSystem =
        UnitSystem { hbar_uev_s: HBAR_UEV_S, kb_uev_per_k: KB_UEV_PER_K, time_unit_s: TIME_UNIT_S };
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Inverse temperature β = 1/(k_B T) in μeV⁻¹ for a temperature given in mK.
pub fn temperature_to_beta<T: Real>(temp_mk: T) -> Result<T> {
    if !(temp_mk.is_finite() && temp_mk > T::zero()) {
        return domain(format!("temperature must be positive and finite, got {temp_mk} mK"));
    }
    Ok(T::one() / (lit::<T>(KB_UEV_PER_K) * temp_mk * lit(1e-3)))
}

/// Converts dimensionless time (units of ħ/μeV) to seconds.
pub fn time_units_to_seconds<T: Real>(t: T) -> Result<T> {
    if !t.is_finite() {
        return domain(format!("time must be finite, got {t}"));
    }
    Ok(t * lit(TIME_UNIT_S))
}

/// Inverse of [`time_units_to_seconds`].
pub fn seconds_to_time_units<T: Real>(seconds: T) -> Result<T> {
    if !seconds.is_finite() {
        return domain(format!("duration must be finite, got {seconds}"));
    }
    Ok(seconds / lit(TIME_UNIT_S))
}

/// Elementary gate time ħ/E_J in seconds, with E_J in μeV.
pub fn gate_time<T: Real>(e_j: T) -> Result<T> {
    if !(e_j > T::zero()) || e_j.is_nan() {
        return domain(format!("Josephson energy must be positive, got {e_j} μeV"));
    }
    Ok(lit::<T>(HBAR_UEV_S) / e_j)
}

/// Seconds to picoseconds.
pub fn to_ps<T: Real>(seconds: T) -> T {
    seconds * lit(1e12)
}
