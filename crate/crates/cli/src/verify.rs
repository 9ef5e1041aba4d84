//! Cross-checks between the closed forms, the quadrature and the
//! exact-diagonalization oracle.

use std::f64::consts::PI;

use decoq::bath::{b_squared_continuum, b_squared_discrete, discretize_bath, CUTOFF_MULTIPLE};
use decoq::evolution::{
    decoherence_d, deviation, evolve_ideal, evolve_real, evolve_real_by_branch_sum, norm_lambda,
    norm_lambda_closed_form, pure_state,
};
use decoq::oracle::{default_n_fock, error_scaling, Oracle};
use decoq::{Basis, CompositeSystem64, QubitState64, TruncatedBathMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::output::CheckRecord;

/// Deliberate faults for exercising the harness itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Corruption {
    /// Inflate every reference `B²` by 1 %.
    #[value(name = "b2")]
    B2,
}

pub const DISCRETE_MODES: usize = 200_000;
pub const DISCRETE_REL_TOL: f64 = 1e-4;
pub const DEPHASING_ABS_TOL: f64 = 1e-8;
pub const IDENTITY_TOL: f64 = 1e-12;
pub const SUPREMUM_TOL: f64 = 1e-6;
pub const SPLIT_CLOSED_TOL: f64 = 1e-10;
pub const SLOPE_RANGE: (f64, f64) = (2.7, 3.3);

pub const LOG_GRID: [f64; 5] = [1e-3, 1e-2, 1e-1, 1.0, 10.0];
pub const DEPHASING_TIMES: [f64; 4] = [0.01, 0.05, 0.1, 0.5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the Bloch ball.
pub fn random_state<R: Rng>(rng: &mut R, basis: Basis) -> QubitState64 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let r = rng.gen::<f64>().cbrt();
    let s = (1.0 - z * z).sqrt();
    QubitState64::from_bloch([r * s * phi.cos(), r * s * phi.sin(), r * z], basis).expect("inside the unit ball")
}

fn reference_b_sq(b: f64, corrupt: Option<Corruption>) -> f64 {
    match corrupt {
        Some(Corruption::B2) => b * 1.01,
        None => b,
    }
}

/// Midpoint-discretized bath against the continuum quadrature.
pub fn check_discrete_vs_continuum(cfg: &RunConfig) -> CheckRecord {
    let name = "discrete_vs_continuum";
    let run = || -> anyhow::Result<(f64, String)> {
        let spec = cfg.bath()?;
        let bath = discretize_bath(&spec, DISCRETE_MODES, CUTOFF_MULTIPLE * spec.omega_c)?;
        let mut worst: f64 = 0.0;
        let mut detail = Vec::new();
        for &t in &LOG_GRID {
            let cont = b_squared_continuum(t, &spec, cfg.quad_tol)?;
            let disc = b_squared_discrete(t, &bath, spec.beta);
            let rel = if cont == 0.0 { disc.abs() } else { ((disc - cont) / cont).abs() };
            worst = worst.max(rel);
            detail.push(format!("t={t}: rel {rel:.2e}"));
        }
        Ok((worst, detail.join(", ")))
    };
    match run() {
        Ok((worst, d)) => CheckRecord::new(
            name,
            worst <= DISCRETE_REL_TOL,
            format!("max rel {worst:.3e} (tol {DISCRETE_REL_TOL:e}); {d}"),
        ),
        Err(e) => CheckRecord::new(name, false, format!("{e:#}")),
    }
}

/// `E_J = 0`, one mode: the oracle's charge-basis coherence must decay as
/// `e^{-B²_disc}`.
pub fn check_pure_dephasing(cfg: &RunConfig, corrupt: Option<Corruption>) -> CheckRecord {
    let name = "pure_dephasing_oracle";
    let run = || -> anyhow::Result<f64> {
        let beta = cfg.beta();
        let omega = 10.0;
        let n_fock = default_n_fock(omega, beta).max(16);
        let sys = CompositeSystem64::new(0.0, vec![TruncatedBathMode::new(omega, 1.5, n_fock)?])?;
        let oracle = Oracle::new(&sys);
        let bath = sys.discrete_bath()?;
        // φ₁ = |+⟩: charge-basis coherence ½.
        let plus = pure_state(PI, 0.0);
        let mut worst: f64 = 0.0;
        for &t in &DEPHASING_TIMES {
            let rho = oracle.evolve_exact(&plus, beta, t)?.in_basis(Basis::Computational);
            let decay = rho.rho10().norm() / 0.5;
            let expected = (-reference_b_sq(b_squared_discrete(t, &bath, beta), corrupt)).exp();
            worst = worst.max((decay - expected).abs());
        }
        Ok(worst)
    };
    match run() {
        Ok(w) => CheckRecord::new(
            name,
            w <= DEPHASING_ABS_TOL,
            format!("max |decay - exp(-B²)| = {w:.3e} (tol {DEPHASING_ABS_TOL:e})"),
        ),
        Err(e) => CheckRecord::new(name, false, format!("{e:#}")),
    }
}

fn random_draw<R: Rng>(rng: &mut R) -> (f64, f64, f64) {
    let b_sq = 10f64.powf(rng.gen_range(-6.0..0.5));
    let t = rng.gen_range(0.0..1.0);
    let e_j = rng.gen_range(10.0..100.0);
    (b_sq, t, e_j)
}

/// Explicit branch sum against the closed form for random states.
pub fn check_branch_sum(cfg: &RunConfig) -> CheckRecord {
    let name = "branch_sum_equals_closed_form";
    let mut r = rng(cfg.seed ^ 0x5eed_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let s = random_state(&mut r, Basis::Eigen);
        let (b, t, e_j) = random_draw(&mut r);
        let c = r.gen_range(0.0..10.0);
        match evolve_real_by_branch_sum(&s, b, c, t, e_j) {
            Ok(x) => worst = worst.max((x.rho() - evolve_real(&s, b, t, e_j).rho()).max_abs()),
            Err(e) => return CheckRecord::new(name, false, e.to_string()),
        }
    }
    CheckRecord::new(name, worst <= IDENTITY_TOL, format!("max |diff| = {worst:.3e} over 200 states"))
}

/// `‖ρ_real - ρ_ideal‖_λ` against its closed form.
pub fn check_norm_pipeline(cfg: &RunConfig) -> CheckRecord {
    let name = "norm_pipeline_identity";
    let mut r = rng(cfg.seed ^ 0x5eed_0002);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let s = random_state(&mut r, Basis::Eigen);
        let (b, t, e_j) = random_draw(&mut r);
        let dev = deviation(&evolve_real(&s, b, t, e_j), &evolve_ideal(&s, t, e_j)).expect("same basis");
        worst = worst.max((norm_lambda(&dev) - norm_lambda_closed_form(&s, b, t, e_j)).abs());
    }
    CheckRecord::new(name, worst <= IDENTITY_TOL, format!("max |diff| = {worst:.3e} over 200 states"))
}

/// Maximum of the norm over a pure-state Bloch grid.
pub struct GridSupremum {
    pub max: f64,
    pub theta: f64,
    pub phi: f64,
}

pub fn bloch_grid_supremum(b_sq: f64, t: f64, e_j: f64, n_theta: usize, n_phi: usize) -> GridSupremum {
    let mut best = GridSupremum { max: f64::NEG_INFINITY, theta: 0.0, phi: 0.0 };
    for i in 0..n_theta {
        let theta = PI * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            let v = norm_lambda_closed_form(&pure_state(theta, phi), b_sq, t, e_j);
            if v > best.max {
                best = GridSupremum { max: v, theta, phi };
            }
        }
    }
    best
}

pub fn check_grid_supremum(cfg: &RunConfig) -> CheckRecord {
    let name = "grid_supremum_equals_d";
    let mut r = rng(cfg.seed ^ 0x5eed_0003);
    let mut worst: f64 = 0.0;
    let mut off_point = 0;
    for _ in 0..20 {
        let (b, t, e_j) = random_draw(&mut r);
        let sup = bloch_grid_supremum(b, t, e_j, 91, 72);
        let d = decoherence_d(b);
        worst = worst.max((sup.max - d).abs());
        if (norm_lambda_closed_form(&pure_state(0.0, 0.0), b, t, e_j) - sup.max).abs() > SUPREMUM_TOL {
            off_point += 1;
        }
    }
    CheckRecord::new(
        name,
        worst <= SUPREMUM_TOL && off_point == 0,
        format!("max |sup - D| = {worst:.3e}; draws where (1,0) misses the supremum: {off_point}"),
    )
}

fn two_mode_system() -> anyhow::Result<CompositeSystem64> {
    Ok(CompositeSystem64::new(
        51.8,
        vec![TruncatedBathMode::new(10.0, 0.5, 9)?, TruncatedBathMode::new(25.0, 0.8, 6)?],
    )?)
}

/// Local order of the split propagator: slope of log error vs log t.
pub fn check_split_order(cfg: &RunConfig) -> CheckRecord {
    let name = "split_operator_order";
    let run = || -> anyhow::Result<f64> {
        let ts: Vec<f64> = (0..6).map(|k| 2e-3 * 1.5f64.powi(k)).collect();
        Ok(error_scaling(&two_mode_system()?, &pure_state(1.2, 0.3), cfg.beta(), &ts)?.slope)
    };
    match run() {
        Ok(s) => CheckRecord::new(
            name,
            s >= SLOPE_RANGE.0 && s <= SLOPE_RANGE.1,
            format!("slope {s:.4} (want {SLOPE_RANGE:?})"),
        ),
        Err(e) => CheckRecord::new(name, false, format!("{e:#}")),
    }
}

/// Oracle with the split propagator against the closed form fed the
/// discrete `B²` of the same modes.
pub fn split_vs_closed_max_diff(
    sys: &CompositeSystem64,
    beta: f64,
    times: &[f64],
    n_states: usize,
    seed: u64,
    corrupt: Option<Corruption>,
) -> anyhow::Result<f64> {
    let oracle = Oracle::new(sys);
    let bath = sys.discrete_bath()?;
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for &t in times {
        let channel = oracle.split_channel(beta, t)?;
        let b = reference_b_sq(b_squared_discrete(t, &bath, beta), corrupt);
        for _ in 0..n_states {
            let s = random_state(&mut r, Basis::Eigen);
            let diff = (channel.apply(&s).rho() - evolve_real(&s, b, t, sys.e_j).rho()).max_abs();
            worst = worst.max(diff);
        }
    }
    Ok(worst)
}

pub fn check_split_vs_closed_form(cfg: &RunConfig, corrupt: Option<Corruption>) -> CheckRecord {
    let name = "split_matches_closed_form";
    let run = || -> anyhow::Result<f64> {
        let sys = CompositeSystem64::new(51.8, vec![TruncatedBathMode::new(10.0, 1.0, 14)?])?;
        split_vs_closed_max_diff(&sys, cfg.beta(), &[0.01, 0.05, 0.1], 20, cfg.seed ^ 0x5eed_0004, corrupt)
    };
    match run() {
        Ok(w) => {
            CheckRecord::new(name, w <= SPLIT_CLOSED_TOL, format!("max |diff| = {w:.3e} (tol {SPLIT_CLOSED_TOL:e})"))
        }
        Err(e) => CheckRecord::new(name, false, format!("{e:#}")),
    }
}

pub fn run_verify(cfg: &RunConfig, corrupt: Option<Corruption>) -> Vec<CheckRecord> {
    let checks: Vec<Box<dyn Fn() -> CheckRecord + Sync>> = vec![
        Box::new(|| check_discrete_vs_continuum(cfg)),
        Box::new(|| check_pure_dephasing(cfg, corrupt)),
        Box::new(|| check_branch_sum(cfg)),
        Box::new(|| check_norm_pipeline(cfg)),
        Box::new(|| check_grid_supremum(cfg)),
        Box::new(|| check_split_order(cfg)),
        Box::new(|| check_split_vs_closed_form(cfg, corrupt)),
    ];
    use rayon::prelude::*;
    checks.par_iter().map(|c| c()).collect()
}
