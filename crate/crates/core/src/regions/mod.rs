//! Source-channel rate regions for discrete memoryless MARCs and MABRCs
//! under decode-and-forward with Slepian-Wolf binning.
//!
//! A region evaluation pairs six conditional source entropies with six
//! mutual-information rates and reports, per constraint, the implied bound on
//! the source-channel rate kappa together with the binding value
//! `kappa_star`. Achievable regions use the factored input law of the DF
//! scheme; necessary regions hold for arbitrary joint input laws.

mod achievable;
mod necessary;
mod report;
mod search;

pub use achievable::{df_achievable_region, regular_encoding_region, Scenario};
pub use necessary::{mabrc_necessary_region, marc_necessary_region};
pub use report::{
    kappa_bound, BoundSense, Constraint, ConstraintReport, EntropyVector, RateVector, RegionReport,
};
pub use search::{minimize_necessary_kappa, ConverseSearchResult};
