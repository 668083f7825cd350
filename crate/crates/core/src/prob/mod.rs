//! Exact probability machinery over small finite alphabets.
//!
//! Everything here is a dense table indexed row-major (last variable
//! fastest). Alphabets are capped at [`MAX_ALPHABET`] symbols per variable,
//! which keeps every joint table small enough for exact summation.

mod alphabet;
mod channel;
mod input;
mod sources;
mod table;
mod typicality;

pub use alphabet::Alphabet;
pub use channel::{ChannelJson, DmChannel};
pub use input::{induced_joint, FactoredInputDist};
pub use sources::{JointSourceDist, SourcesJson};
pub use table::JointTable;
pub use typicality::is_strongly_typical;

/// Largest supported alphabet size per variable.
pub const MAX_ALPHABET: usize = 16;

/// Normalization tolerance for pmfs supplied by callers.
pub(crate) const CONSTRUCT_TOL: f64 = 1e-12;

/// Normalization tolerance after products of validated factors.
pub(crate) const PRODUCT_TOL: f64 = 1e-10;
