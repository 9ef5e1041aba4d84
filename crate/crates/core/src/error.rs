use thiserror::Error;

/// Errors raised by the decoherence library.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: value {value:e}, estimated error {error:e} after {intervals} intervals")]
    Quadrature { value: f64, error: f64, intervals: usize },

    #[error("no crossing: D({t_max}) = {d_at_t_max:e} does not reach threshold {threshold:e}")]
    NoCrossing { threshold: f64, t_max: f64, d_at_t_max: f64 },

    #[error("state basis mismatch: expected {expected}, got {found}")]
    BasisMismatch { expected: &'static str, found: &'static str },

    #[error("resource limit: composite dimension {dims} exceeds cap {cap}")]
    Resource { dims: usize, cap: usize },

    #[error("commuting case: splitting error at the floating-point floor ({usable} usable points of {total})")]
    CommutingCase { usable: usize, total: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
