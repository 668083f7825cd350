use serde::{Deserialize, Serialize};

use crate::prob::JointSourceDist;
use crate::{Error, Result};

/// Cap on `m * log2(|S1| * |S2|)`: the decoders enumerate candidate pairs
/// exhaustively, so the pair space must stay desk-sized.
pub const DECODING_CAP_BITS: f64 = 28.0;

/// Transport model for bin indices between encoder and decoder.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkModel {
    /// Indices arrive intact.
    Ideal,
    /// Each index is independently dropped with probability `p`; the decoder
    /// falls back to a typicality-only search for that user.
    Erasure { p: f64 },
    /// Indices arrive intact iff the bin rates fit inside `kappa` times the
    /// per-hop capacity triple `(C1, C2, Csum)`; a violated single-user
    /// constraint garbles that user's index, a violated sum constraint
    /// garbles both.
    CapacityLimited {
        relay_capacity: [f64; 3],
        dest_capacity: [f64; 3],
        kappa: f64,
    },
}

/// Full configuration of one simulation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeConfig {
    pub sources: JointSourceDist,
    /// Source samples per block.
    pub m: usize,
    /// Blocks per trial.
    pub blocks: usize,
    /// Relay-facing bin rates `(R1^r, R2^r)`, bits per source symbol.
    pub relay_rates: [f64; 2],
    /// Destination-facing bin rates `(R1^d, R2^d)`.
    pub dest_rates: [f64; 2],
    /// Strong-typicality tolerance used by both decoders.
    pub epsilon: f64,
    pub link: LinkModel,
}

/// On-disk schema of [`SchemeConfig`] with unvalidated sources; call
/// [`SchemeConfigJson::build`] to run the invariant checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeConfigJson {
    pub sources: crate::prob::SourcesJson,
    pub m: usize,
    pub blocks: usize,
    pub relay_rates: [f64; 2],
    pub dest_rates: [f64; 2],
    pub epsilon: f64,
    pub link: LinkModel,
}

impl SchemeConfigJson {
    pub fn build(self) -> Result<SchemeConfig> {
        let cfg = SchemeConfig {
            sources: self.sources.build()?,
            m: self.m,
            blocks: self.blocks,
            relay_rates: self.relay_rates,
            dest_rates: self.dest_rates,
            epsilon: self.epsilon,
            link: self.link,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl SchemeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        if self.blocks == 0 {
            return Err(Error::InvalidParameter("blocks must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        for r in self.relay_rates.iter().chain(&self.dest_rates) {
            if !r.is_finite() || *r < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "bin rates must be finite and nonnegative, got {r}"
                )));
            }
        }
        if let LinkModel::Erasure { p } = self.link {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "erasure probability must lie in [0, 1], got {p}"
                )));
            }
        }
        let sizes = self.sources.sizes();
        let pair_bits = self.m as f64 * ((sizes[0] * sizes[1]) as f64).log2();
        if pair_bits > DECODING_CAP_BITS {
            return Err(Error::CapExceeded(format!(
                "m * log2(|S1|*|S2|) = {pair_bits:.2} bits exceeds the cap of {DECODING_CAP_BITS}"
            )));
        }
        Ok(())
    }
}
