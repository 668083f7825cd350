//! Rate analysis for multiple-access relay channels (MARC) and their
//! broadcast variant (MABRC) carrying correlated sources with side
//! information at the relay and at the destination.
//!
//! The crate has four parts:
//!
//! * [`prob`] — exact finite-alphabet probability machinery: dense joint
//!   tables, conditional entropy, mutual information, strong typicality.
//! * [`regions`] — achievable and necessary source-channel rate regions for
//!   discrete memoryless MARCs/MABRCs under decode-and-forward, including the
//!   regular-encoding merge and a search for the tightest necessary bound.
//! * [`fading`] — closed-form and Monte-Carlo rate regions for phase- and
//!   Rayleigh-fading Gaussian MARCs, the relay-decoding dominance conditions,
//!   and the exponential integral E1.
//! * [`sim`] — a desk-scale Slepian-Wolf random-binning simulator with a
//!   block pipeline, rate-gated index transport, and typicality decoding.
//!
//! All rates and entropies are in bits; the source-channel rate kappa is
//! channel uses per source sample (smaller is better).

mod error;

pub mod fading;
pub mod prob;
pub mod regions;
pub mod sim;

pub use error::{Error, Result};
pub use fading::{
    exp_integral_e1, kappa_star, mabrc_entropy_check, mabrc_kappa_star, phase_conditions,
    phase_necessary_kappa, phase_region, rayleigh_conditions, rayleigh_region, ConditionCheck,
    FadingKind, FadingMarcConfig, FadingRegion, MonteCarloEstimate,
};
pub use prob::{
    induced_joint, is_strongly_typical, Alphabet, ChannelJson, DmChannel, FactoredInputDist,
    JointSourceDist, JointTable, SourcesJson, MAX_ALPHABET,
};
pub use regions::{
    df_achievable_region, mabrc_necessary_region, marc_necessary_region, minimize_necessary_kappa,
    regular_encoding_region, BoundSense, Constraint, ConstraintReport, ConverseSearchResult,
    EntropyVector, RateVector, RegionReport, Scenario,
};
pub use sim::{
    run_scheme, threshold_sweep, verify_regular_vs_irregular, BinningCode, EncodingComparison,
    LinkModel, SchemeConfig, SchemeConfigJson, SweepRow, SweepTable, TrialReport,
};
