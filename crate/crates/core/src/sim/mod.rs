//! Desk-scale simulation of the separation scheme: Slepian-Wolf random
//! binning of length-`m` source blocks, a `B`-block pipeline with relay-bin
//! and destination-bin indices, rate-gated index transport, and exhaustive
//! joint-typicality decoding at the relay and the destination.
//!
//! Channel codes are abstracted as index pipes: an index either arrives
//! intact, is erased, or is replaced by a random index when its rate exceeds
//! what the configured capacities support. Decoding of different blocks is
//! independent under this abstraction; the block-shifted bookkeeping of the
//! two bin streams is kept so the pipeline matches the coding scheme's
//! layout.

mod binning;
mod config;
mod decoder;
mod run;

pub use binning::BinningCode;
pub use config::{LinkModel, SchemeConfig, SchemeConfigJson};
pub use run::{
    run_scheme, threshold_sweep, verify_regular_vs_irregular, EncodingComparison, SweepRow,
    SweepTable, TrialReport,
};
