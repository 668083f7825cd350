use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::binning::BinningCode;
use super::config::{LinkModel, SchemeConfig};
use super::decoder::{CandidateSet, DecodeOutcome, PairDecoder};
use crate::prob::{is_strongly_typical, JointTable};
use crate::regions::EntropyVector;
use crate::{Error, Result};

/// Empirical error rates of one scheme configuration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrialReport {
    /// Fraction of blocks the relay failed to reconstruct.
    pub relay_block_error_rate: f64,
    /// Fraction of blocks the destination failed to reconstruct.
    pub dest_block_error_rate: f64,
    /// Rate-minus-entropy margin per constraint, bits per source symbol:
    /// `(R1^r - H(S1|S2,W3), R2^r - H(S2|S1,W3), R1^r+R2^r - H(S1,S2|W3))`
    /// and the destination counterparts with side information `W`.
    pub relay_margins: [f64; 3],
    pub dest_margins: [f64; 3],
    pub trials: u64,
    pub blocks_per_trial: u64,
    pub seed: u64,
}

#[derive(Clone, Copy)]
struct HopIndices {
    u1: Option<u64>,
    u2: Option<u64>,
}

struct SourceSampler {
    cdf: Vec<f64>,
    sizes: [usize; 4],
}

impl SourceSampler {
    fn new(table: &JointTable, sizes: [usize; 4]) -> Self {
        let mut cdf = Vec::with_capacity(table.probs().len());
        let mut acc = 0.0;
        for &p in table.probs() {
            acc += p;
            cdf.push(acc);
        }
        if let Some(last) = cdf.last_mut() {
            *last = 1.0;
        }
        SourceSampler { cdf, sizes }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> [u8; 4] {
        let u: f64 = rng.gen();
        let cell = self.cdf.partition_point(|&c| c < u);
        let cell = cell.min(self.cdf.len() - 1);
        // Row-major (s1, s2, w, w3), w3 fastest.
        let w3 = cell % self.sizes[3];
        let rest = cell / self.sizes[3];
        let w = rest % self.sizes[2];
        let rest = rest / self.sizes[2];
        let s2 = rest % self.sizes[1];
        let s1 = rest / self.sizes[1];
        [s1 as u8, s2 as u8, w as u8, w3 as u8]
    }
}

/// Whether each of `(R1, R2, R1+R2)` fits inside `kappa * capacity`.
fn capacity_violations(rates: [f64; 2], capacity: [f64; 3], kappa: f64) -> [bool; 3] {
    [
        rates[0] > kappa * capacity[0],
        rates[1] > kappa * capacity[1],
        rates[0] + rates[1] > kappa * capacity[2],
    ]
}

fn transported(
    rng: &mut ChaCha8Rng,
    link: &LinkModel,
    truth: (u64, u64),
    bins: (u64, u64),
    violations: [bool; 3],
) -> HopIndices {
    match link {
        LinkModel::Ideal => HopIndices {
            u1: Some(truth.0),
            u2: Some(truth.1),
        },
        LinkModel::Erasure { p } => {
            let e1 = rng.gen::<f64>() < *p;
            let e2 = rng.gen::<f64>() < *p;
            HopIndices {
                u1: (!e1).then_some(truth.0),
                u2: (!e2).then_some(truth.1),
            }
        }
        LinkModel::CapacityLimited { .. } => {
            let garble1 = violations[0] || violations[2];
            let garble2 = violations[1] || violations[2];
            // Draw both random indices unconditionally to keep the RNG
            // stream layout independent of the violation pattern.
            let r1 = rng.gen_range(0..bins.0);
            let r2 = rng.gen_range(0..bins.1);
            HopIndices {
                u1: Some(if garble1 { r1 } else { truth.0 }),
                u2: Some(if garble2 { r2 } else { truth.1 }),
            }
        }
    }
}

struct HopSetup {
    code1: BinningCode,
    code2: BinningCode,
    decoder: PairDecoder,
    view: JointTable,
    violations: [bool; 3],
}

fn seq_count(alphabet: usize, m: usize) -> u64 {
    (alphabet as u64).pow(m as u32)
}

fn decode_hop(
    setup: &HopSetup,
    received: HopIndices,
    w_seq: &[u8],
    truth: (u64, u64),
    m: usize,
    sizes: (usize, usize),
    epsilon: f64,
) -> bool {
    let cand1 = match received.u1 {
        Some(u) => CandidateSet::from_filter(m, sizes.0, seq_count(sizes.0, m), |s| {
            setup.code1.bin_of(s) == u
        }),
        None => CandidateSet::from_filter(m, sizes.0, seq_count(sizes.0, m), |_| true),
    };
    let cand2 = match received.u2 {
        Some(u) => CandidateSet::from_filter(m, sizes.1, seq_count(sizes.1, m), |s| {
            setup.code2.bin_of(s) == u
        }),
        None => CandidateSet::from_filter(m, sizes.1, seq_count(sizes.1, m), |_| true),
    };
    match setup.decoder.decode(&cand1, &cand2, w_seq) {
        DecodeOutcome::Unique { seq1, seq2 } => {
            // Soundness: the winner must satisfy every received bin index and
            // be typical under the hop's reference pmf.
            if let Some(u) = received.u1 {
                assert_eq!(setup.code1.bin_of(seq1), u, "decoded pair violates a bin index");
            }
            if let Some(u) = received.u2 {
                assert_eq!(setup.code2.bin_of(seq2), u, "decoded pair violates a bin index");
            }
            let d1 = unpack(seq1, sizes.0, m);
            let d2 = unpack(seq2, sizes.1, m);
            let dw: Vec<usize> = w_seq.iter().map(|&x| x as usize).collect();
            assert!(
                is_strongly_typical(&[&d1, &d2, &dw], &setup.view, epsilon)
                    .expect("typicality check on decoded pair"),
                "decoded pair is not typical"
            );
            (seq1, seq2) == truth
        }
        DecodeOutcome::NotUnique => false,
    }
}

fn unpack(mut seq: u64, alphabet: usize, m: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push((seq % alphabet as u64) as usize);
        seq /= alphabet as u64;
    }
    out
}

/// Runs the full binning/transport/decoding pipeline.
///
/// Per trial: draw `B` i.i.d. source blocks, bin each block with the relay
/// and destination codes, transport the bin indices through the link model
/// (destination indices ride one block behind the relay indices), decode
/// each block at both hops, and count block errors. Trials are independent
/// and run in parallel on per-trial RNG streams, so a fixed `(cfg, trials,
/// seed)` triple is bit-reproducible.
pub fn run_scheme(cfg: &SchemeConfig, trials: u64, seed: u64) -> Result<TrialReport> {
    cfg.validate()?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let sizes = cfg.sources.sizes();
    let m = cfg.m;
    let entropies = EntropyVector::from_sources(&cfg.sources)?;

    let relay_code1 = BinningCode::new(m, cfg.relay_rates[0], seed ^ 0x72_6c_79_31)?;
    let relay_code2 = BinningCode::new(m, cfg.relay_rates[1], seed ^ 0x72_6c_79_32)?;
    let dest_code1 = BinningCode::new(m, cfg.dest_rates[0], seed ^ 0x64_73_74_31)?;
    let dest_code2 = BinningCode::new(m, cfg.dest_rates[1], seed ^ 0x64_73_74_32)?;

    let relay_view = cfg.sources.relay_view()?;
    let dest_view = cfg.sources.destination_view()?;

    let (relay_violations, dest_violations) = match cfg.link {
        LinkModel::CapacityLimited {
            relay_capacity,
            dest_capacity,
            kappa,
        } => (
            capacity_violations(cfg.relay_rates, relay_capacity, kappa),
            capacity_violations(cfg.dest_rates, dest_capacity, kappa),
        ),
        _ => ([false; 3], [false; 3]),
    };

    let relay_setup = HopSetup {
        code1: relay_code1,
        code2: relay_code2,
        decoder: PairDecoder::new(&relay_view, m, cfg.epsilon),
        view: relay_view,
        violations: relay_violations,
    };
    let dest_setup = HopSetup {
        code1: dest_code1,
        code2: dest_code2,
        decoder: PairDecoder::new(&dest_view, m, cfg.epsilon),
        view: dest_view,
        violations: dest_violations,
    };

    let sampler = SourceSampler::new(cfg.sources.table(), sizes);
    let pair_sizes = (sizes[0], sizes[1]);

    let (relay_errors, dest_errors) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial + 1);
            let b = cfg.blocks;

            // Draw all blocks of the trial up front.
            let mut s1_idx = vec![0u64; b];
            let mut s2_idx = vec![0u64; b];
            let mut w_seqs = vec![vec![0u8; m]; b];
            let mut w3_seqs = vec![vec![0u8; m]; b];
            for blk in 0..b {
                for k in 0..m {
                    let [s1, s2, w, w3] = sampler.draw(&mut rng);
                    s1_idx[blk] += (s1 as u64) * (pair_sizes.0 as u64).pow(k as u32);
                    s2_idx[blk] += (s2 as u64) * (pair_sizes.1 as u64).pow(k as u32);
                    w_seqs[blk][k] = w;
                    w3_seqs[blk][k] = w3;
                }
            }

            // Bin indices: relay bins for block `blk` travel in channel
            // block `blk`, destination bins one block later.
            let mut relay_rx = Vec::with_capacity(b);
            let mut dest_rx = Vec::with_capacity(b);
            for blk in 0..b {
                let truth = (
                    relay_setup.code1.bin_of(s1_idx[blk]),
                    relay_setup.code2.bin_of(s2_idx[blk]),
                );
                relay_rx.push(transported(
                    &mut rng,
                    &cfg.link,
                    truth,
                    (relay_setup.code1.num_bins(), relay_setup.code2.num_bins()),
                    relay_setup.violations,
                ));
            }
            for blk in 0..b {
                let truth = (
                    dest_setup.code1.bin_of(s1_idx[blk]),
                    dest_setup.code2.bin_of(s2_idx[blk]),
                );
                dest_rx.push(transported(
                    &mut rng,
                    &cfg.link,
                    truth,
                    (dest_setup.code1.num_bins(), dest_setup.code2.num_bins()),
                    dest_setup.violations,
                ));
            }

            let mut relay_err = 0u64;
            let mut dest_err = 0u64;
            for blk in 0..b {
                let truth = (s1_idx[blk], s2_idx[blk]);
                if !decode_hop(
                    &relay_setup,
                    relay_rx[blk],
                    &w3_seqs[blk],
                    truth,
                    m,
                    pair_sizes,
                    cfg.epsilon,
                ) {
                    relay_err += 1;
                }
                if !decode_hop(
                    &dest_setup,
                    dest_rx[blk],
                    &w_seqs[blk],
                    truth,
                    m,
                    pair_sizes,
                    cfg.epsilon,
                ) {
                    dest_err += 1;
                }
            }
            (relay_err, dest_err)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let total_blocks = (trials * cfg.blocks as u64) as f64;
    Ok(TrialReport {
        relay_block_error_rate: relay_errors as f64 / total_blocks,
        dest_block_error_rate: dest_errors as f64 / total_blocks,
        relay_margins: [
            cfg.relay_rates[0] - entropies.relay_s1,
            cfg.relay_rates[1] - entropies.relay_s2,
            cfg.relay_rates[0] + cfg.relay_rates[1] - entropies.relay_joint,
        ],
        dest_margins: [
            cfg.dest_rates[0] - entropies.dest_s1,
            cfg.dest_rates[1] - entropies.dest_s2,
            cfg.dest_rates[0] + cfg.dest_rates[1] - entropies.dest_joint,
        ],
        trials,
        blocks_per_trial: cfg.blocks as u64,
        seed,
    })
}

/// One grid point of a rate sweep.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepRow {
    /// Destination bin rate of user 1 at this grid point.
    pub rate: f64,
    pub relay_error: f64,
    pub dest_error: f64,
    pub trials: u64,
    /// `rate - H(S1|S2,W)`.
    pub margin: f64,
}

/// Sweep output with a monotone-trend diagnostic on the destination error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// True when the destination error is non-increasing in rate within a
    /// two-sigma binomial band.
    pub monotone_within_band: bool,
}

impl SweepTable {
    pub fn csv_header() -> &'static str {
        "rate,relay_error,dest_error,trials,margin"
    }

    pub fn csv_rows(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "{:.6},{:.6},{:.6},{},{:.6}",
                    r.rate, r.relay_error, r.dest_error, r.trials, r.margin
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Runs the scheme at each rate of `grid`, varying the destination bin rate
/// of user 1 and holding everything else from `cfg`. All grid points share
/// the master seed.
pub fn threshold_sweep(
    cfg: &SchemeConfig,
    grid: &[f64],
    trials: u64,
    seed: u64,
) -> Result<SweepTable> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("rate grid must be nonempty".into()));
    }
    let entropies = EntropyVector::from_sources(&cfg.sources)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &rate in grid {
        let mut point = cfg.clone();
        point.dest_rates[0] = rate;
        let report = run_scheme(&point, trials, seed)?;
        rows.push(SweepRow {
            rate,
            relay_error: report.relay_block_error_rate,
            dest_error: report.dest_block_error_rate,
            trials,
            margin: rate - entropies.dest_s1,
        });
    }
    let n = (trials * cfg.blocks as u64) as f64;
    let sigma = |p: f64| (p * (1.0 - p) / n).sqrt();
    let monotone = rows.windows(2).all(|w| {
        w[1].dest_error <= w[0].dest_error + 2.0 * (sigma(w[0].dest_error) + sigma(w[1].dest_error))
    });
    Ok(SweepTable {
        rows,
        monotone_within_band: monotone,
    })
}

/// Side-by-side run of an irregular configuration (relay and destination bin
/// rates chosen independently) against a regular one (rates tied).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EncodingComparison {
    pub irregular: TrialReport,
    pub regular: TrialReport,
    /// Sum of all four bin rates, bits per source symbol.
    pub irregular_budget: f64,
    pub regular_budget: f64,
    pub target_error: f64,
    pub irregular_meets_target: bool,
    pub regular_meets_target: bool,
    /// `regular_budget - irregular_budget`.
    pub budget_saving: f64,
}

fn total_budget(cfg: &SchemeConfig) -> f64 {
    cfg.relay_rates[0] + cfg.relay_rates[1] + cfg.dest_rates[0] + cfg.dest_rates[1]
}

/// Runs two configurations that differ only in their bin rates, with the
/// regular one's relay and destination rates tied, and reports whether each
/// meets the target block error together with the two rate budgets.
pub fn verify_regular_vs_irregular(
    irregular: &SchemeConfig,
    regular: &SchemeConfig,
    target_error: f64,
    trials: u64,
    seed: u64,
) -> Result<EncodingComparison> {
    if regular.relay_rates != regular.dest_rates {
        return Err(Error::InvalidParameter(
            "regular configuration must tie relay and destination bin rates".into(),
        ));
    }
    let same = irregular.m == regular.m
        && irregular.blocks == regular.blocks
        && irregular.epsilon == regular.epsilon
        && irregular.sources.table().probs() == regular.sources.table().probs();
    if !same {
        return Err(Error::InvalidParameter(
            "configurations must differ only in their bin rates".into(),
        ));
    }
    let irr = run_scheme(irregular, trials, seed)?;
    let reg = run_scheme(regular, trials, seed)?;
    let worst = |r: &TrialReport| r.relay_block_error_rate.max(r.dest_block_error_rate);
    let irregular_budget = total_budget(irregular);
    let regular_budget = total_budget(regular);
    Ok(EncodingComparison {
        irregular_meets_target: worst(&irr) <= target_error,
        regular_meets_target: worst(&reg) <= target_error,
        irregular: irr,
        regular: reg,
        irregular_budget,
        regular_budget,
        target_error,
        budget_saving: regular_budget - irregular_budget,
    })
}
