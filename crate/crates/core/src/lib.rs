//! Short-time decoherence of a Josephson charge qubit coupled to an Ohmic
//! oscillator bath.
//!
//! Energies are in μeV and times in units of ħ/μeV (≈ 0.658 ns). The core is
//! generic over `f32`/`f64`; the `*64` aliases below fix the precision used
//! by the command-line front end.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Index loops mirror the tensor-index formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod bath;
pub mod error;
pub mod evolution;
pub mod mat2;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod roots;
pub mod scalar;
pub mod units;

pub use bath::{BathSpec, DiscreteBath};
pub use error::{Error, Result};
pub use evolution::{Basis, DecoherenceCurve, InitialState, QubitState};
pub use mat2::Mat2;
pub use oracle::{CompositeSystem, Oracle, TruncatedBathMode};
pub use scalar::Real;

pub type BathSpec64 = BathSpec<f64>;
pub type DiscreteBath64 = DiscreteBath<f64>;
pub type QubitState64 = QubitState<f64>;
pub type DecoherenceCurve64 = DecoherenceCurve<f64>;
pub type CompositeSystem64 = CompositeSystem<f64>;
pub type Mat2_64 = Mat2<f64>;
