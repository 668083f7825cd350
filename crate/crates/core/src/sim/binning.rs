use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Random binning of length-`m` source sequences at `rate` bits per source
/// symbol, realized lazily by a seeded 64-bit mixing hash of the sequence
/// index reduced modulo the bin count.
///
/// The bin count is `2^(m*rate)` rounded to the nearest integer (at least
/// one bin); the achieved rate is therefore `log2(num_bins)/m`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BinningCode {
    m: usize,
    rate: f64,
    num_bins: u64,
    seed: u64,
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl BinningCode {
    pub fn new(m: usize, rate: f64, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("block length m must be at least 1".into()));
        }
        if !rate.is_finite() || rate < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "bin rate must be finite and nonnegative, got {rate}"
            )));
        }
        let bits = m as f64 * rate;
        if bits > 62.0 {
            return Err(Error::InvalidParameter(format!(
                "m * rate = {bits} bits of bin index exceeds the 62-bit cap"
            )));
        }
        let num_bins = bits.exp2().round().max(1.0) as u64;
        Ok(BinningCode { m, rate, num_bins, seed })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn num_bins(&self) -> u64 {
        self.num_bins
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Bin index of a sequence, identified by its integer encoding.
    #[inline]
    pub fn bin_of(&self, seq_index: u64) -> u64 {
        splitmix64(seq_index ^ splitmix64(self.seed)) % self.num_bins
    }

    /// Occupancy histogram over all `seq_count` sequences.
    pub fn occupancy(&self, seq_count: u64) -> Vec<u64> {
        let mut counts = vec![0u64; self.num_bins as usize];
        for s in 0..seq_count {
            counts[self.bin_of(s) as usize] += 1;
        }
        counts
    }
}
