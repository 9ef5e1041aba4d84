//! Run configuration: defaults, flat TOML files and command-line overrides.

use std::fmt;
use std::path::Path;

use decoq::evolution::{pure_state, InitialState};
use decoq::units::temperature_to_beta;
use decoq::{BathSpec64, QubitState64};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: toml::de::Error,
    },
    #[error("invalid value for {field}: {reason}")]
    Invalid { field: &'static str, reason: String },
}

/// An initial state: a preset name or explicit Bloch angles `[θ, φ]` on the
/// qubit eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Preset(String),
    Angles([f64; 2]),
}

impl StateSpec {
    pub fn resolve(&self, index: usize) -> Result<(String, QubitState64), ConfigError> {
        match self {
            StateSpec::Preset(name) => InitialState::from_label(name)
                .map(|p| (p.label().to_string(), p.state()))
                .ok_or_else(|| ConfigError::Invalid {
                    field: "initial_states",
                    reason: format!("unknown preset {name:?} (expected point, line1 or line2)"),
                }),
            StateSpec::Angles([theta, phi]) => {
                if !(theta.is_finite() && phi.is_finite()) {
                    return Err(ConfigError::Invalid {
                        field: "initial_states",
                        reason: "angles must be finite".into(),
                    });
                }
                Ok((format!("state{index}"), pure_state(*theta, *phi)))
            }
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Preset(name) => write!(f, "{name}"),
            StateSpec::Angles([t, p]) => write!(f, "[{t}, {p}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// μeV.
    pub e_j: f64,
    /// mK.
    pub temp_mk: f64,
    pub eta: f64,
    /// μeV.
    pub omega_c: f64,
    pub s: f64,
    /// Curve horizon in units of ħ/μeV.
    pub t_max: f64,
    pub samples: usize,
    pub initial_states: Vec<StateSpec>,
    pub threshold: f64,
    pub quad_tol: f64,
    pub seed: u64,
    /// Horizon of the τ^ld search in units of ħ/μeV.
    pub search_t_max: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            e_j: 51.8,
            temp_mk: 30.0,
            eta: 1e-6,
            omega_c: 200.0,
            s: 1.0,
            t_max: 0.15,
            samples: 301,
            initial_states: InitialState::ALL.iter().map(|p| StateSpec::Preset(p.label().into())).collect(),
            threshold: 1e-4,
            quad_tol: 1e-8,
            seed: 0,
            search_t_max: 100.0,
        }
    }
}

/// Command-line overrides; `None` keeps the file or default value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub e_j: Option<f64>,
    pub temp_mk: Option<f64>,
    pub eta: Option<f64>,
    pub omega_c: Option<f64>,
    pub t_max: Option<f64>,
    pub samples: Option<usize>,
    pub threshold: Option<f64>,
    pub seed: Option<u64>,
    pub search_t_max: Option<f64>,
}

fn positive(field: &'static str, x: f64) -> Result<(), ConfigError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::Invalid { field, reason: format!("must be positive and finite, got {x}") })
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str, path: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Parse { path: path.into(), source })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: name.clone(), source })?;
        Self::from_toml_str(&text, &name)
    }

    /// File (or defaults), then flags on top, then validation.
    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<Self, ConfigError> {
        let mut cfg = match file {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        cfg.apply(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = o.$f { self.$f = v; } )* };
        }
        set!(e_j, temp_mk, eta, omega_c, t_max, samples, threshold, seed, search_t_max);
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("e_j", self.e_j)?;
        positive("temp_mk", self.temp_mk)?;
        positive("omega_c", self.omega_c)?;
        positive("t_max", self.t_max)?;
        positive("search_t_max", self.search_t_max)?;
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return Err(ConfigError::Invalid {
                field: "eta",
                reason: format!("must be non-negative, got {}", self.eta),
            });
        }
        if !(self.s >= 1.0 && self.s.is_finite()) {
            return Err(ConfigError::Invalid {
                field: "s",
                reason: format!("spectral exponent must be >= 1, got {}", self.s),
            });
        }
        if self.samples < 2 {
            return Err(ConfigError::Invalid {
                field: "samples",
                reason: format!("need at least 2, got {}", self.samples),
            });
        }
        if !(self.threshold > 0.0 && self.threshold < 0.5) {
            return Err(ConfigError::Invalid {
                field: "threshold",
                reason: format!("must lie in (0, 1/2), got {}", self.threshold),
            });
        }
        if !(self.quad_tol > 0.0 && self.quad_tol <= 1e-3) {
            return Err(ConfigError::Invalid {
                field: "quad_tol",
                reason: format!("must lie in (0, 1e-3], got {}", self.quad_tol),
            });
        }
        if self.initial_states.is_empty() {
            return Err(ConfigError::Invalid {
                field: "initial_states",
                reason: "at least one state is required".into(),
            });
        }
        self.states().map(|_| ())
    }

    pub fn beta(&self) -> f64 {
        temperature_to_beta(self.temp_mk).expect("validated temperature")
    }

    pub fn bath(&self) -> Result<BathSpec64, ConfigError> {
        BathSpec64::new(self.eta, self.s, self.omega_c, self.beta())
            .map_err(|e| ConfigError::Invalid { field: "bath", reason: e.to_string() })
    }

    pub fn states(&self) -> Result<Vec<(String, QubitState64)>, ConfigError> {
        self.initial_states.iter().enumerate().map(|(i, s)| s.resolve(i)).collect()
    }

    /// `key = value` lines for report headers.
    pub fn echo(&self) -> Vec<(String, String)> {
        let states = self.initial_states.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";");
        vec![
            ("e_j_uev".into(), self.e_j.to_string()),
            ("temp_mk".into(), self.temp_mk.to_string()),
            ("eta".into(), self.eta.to_string()),
            ("omega_c_uev".into(), self.omega_c.to_string()),
            ("s".into(), self.s.to_string()),
            ("t_max".into(), self.t_max.to_string()),
            ("samples".into(), self.samples.to_string()),
            ("initial_states".into(), states),
            ("threshold".into(), self.threshold.to_string()),
            ("quad_tol".into(), self.quad_tol.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("search_t_max".into(), self.search_t_max.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert!((cfg.beta() - 0.386817).abs() < 1e-6);
        let labels: Vec<_> = cfg.states().unwrap().into_iter().map(|(l, _)| l).collect();
        assert_eq!(labels, ["point", "line1", "line2"]);
    }

    #[test]
    fn flat_toml_with_overrides() {
        let cfg = RunConfig::from_toml_str("eta = 2e-6\ntemp_mk = 10\ninitial_states = [\"line2\", [1.0, 0.5]]\n", "x")
            .unwrap();
        assert_eq!(cfg.eta, 2e-6);
        assert_eq!(cfg.e_j, 51.8);
        let mut cfg = cfg;
        cfg.apply(&Overrides { eta: Some(3e-6), ..Default::default() });
        assert_eq!(cfg.eta, 3e-6);
        assert_eq!(cfg.temp_mk, 10.0);
        let labels: Vec<_> = cfg.states().unwrap().into_iter().map(|(l, _)| l).collect();
        assert_eq!(labels, ["line2", "state1"]);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::from_toml_str("bogus = 1", "x").is_err());
        for o in [
            Overrides { temp_mk: Some(0.0), ..Default::default() },
            Overrides { eta: Some(-1.0), ..Default::default() },
            Overrides { samples: Some(1), ..Default::default() },
            Overrides { threshold: Some(0.5), ..Default::default() },
            Overrides { e_j: Some(f64::NAN), ..Default::default() },
        ] {
            assert!(RunConfig::resolve(None, &o).is_err(), "{o:?}");
        }
        let cfg = RunConfig { initial_states: vec![StateSpec::Preset("nope".into())], ..Default::default() };
        assert!(cfg.validate().is_err());
        let zero_eta = RunConfig::resolve(None, &Overrides { eta: Some(0.0), ..Default::default() });
        assert!(zero_eta.is_ok());
    }
}
