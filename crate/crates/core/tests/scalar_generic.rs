//! The public pipeline instantiated at both precisions.

use decoq::bath::{b_squared_continuum, b_squared_zero_temperature_ohmic};
use decoq::evolution::{decoherence_d, evolve_real, norm_lambda_closed_form, InitialState};
use decoq::units::temperature_to_beta;
use decoq::{Basis, BathSpec};

#[test]
fn f32_tracks_f64() {
    let spec64 = BathSpec::<f64>::ohmic_at_mk(1e-6, 200.0, 30.0).unwrap();
    let spec32 = BathSpec::<f32>::ohmic_at_mk(1e-6, 200.0, 30.0).unwrap();
    for t in [1e-2, 0.075, 1.0] {
        let b64 = b_squared_continuum(t, &spec64, 1e-8).unwrap();
        let b32 = b_squared_continuum(t as f32, &spec32, 1e-5).unwrap();
        assert!(((b32 as f64 - b64) / b64).abs() < 1e-4, "t={t}: {b32} vs {b64}");
        for preset in InitialState::ALL {
            let n64 = norm_lambda_closed_form(&preset.state::<f64>(), b64, t, 51.8);
            let n32 = norm_lambda_closed_form(&preset.state::<f32>(), b32, t as f32, 51.8);
            assert!((n32 as f64 - n64).abs() <= 1e-4 * decoherence_d(b64) + 1e-12);
        }
    }
}

#[test]
fn zero_temperature_limit_is_approached_from_above() {
    let cold = BathSpec::<f64>::ohmic(1e-6, 200.0, temperature_to_beta(1e-3).unwrap()).unwrap();
    let t = 0.5;
    let b = b_squared_continuum(t, &cold, 1e-10).unwrap();
    let zero = b_squared_zero_temperature_ohmic(t, 1e-6, 200.0);
    assert!(b >= zero && (b - zero) / zero < 1e-6);
}

#[test]
fn evolution_preserves_basis_tag() {
    let s = InitialState::Line1.state::<f32>().in_basis(Basis::Computational);
    let out = evolve_real(&s, 0.1, 0.02, 51.8);
    assert_eq!(out.basis(), Basis::Computational);
    assert!((out.rho().trace().re - 1.0).abs() < 1e-6);
}
