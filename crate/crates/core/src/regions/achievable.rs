use serde::{Deserialize, Serialize};

use super::report::{BoundSense, Constraint, ConstraintReport, EntropyVector, RateVector, RegionReport};
use crate::prob::{induced_joint, DmChannel, FactoredInputDist, JointSourceDist, JointTable};
use crate::Result;

/// Whether the relay must also reconstruct the sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Marc,
    Mabrc,
}

// Variable indices inside the induced joint (v1, v2, x1, x2, x3, y, y3).
const V1: usize = 0;
const V2: usize = 1;
const X1: usize = 2;
const X2: usize = 3;
const X3: usize = 4;
const Y: usize = 5;
const Y3: usize = 6;

fn df_rate_vector(joint: &JointTable) -> Result<RateVector> {
    Ok(RateVector {
        relay_s1: joint.mutual_information(&[X1], &[Y3], &[X2, V1, X3])?,
        relay_s2: joint.mutual_information(&[X2], &[Y3], &[X1, V2, X3])?,
        relay_joint: joint.mutual_information(&[X1, X2], &[Y3], &[V1, V2, X3])?,
        dest_s1: joint.mutual_information(&[X1, X3], &[Y], &[X2, V2])?,
        dest_s2: joint.mutual_information(&[X2, X3], &[Y], &[X1, V1])?,
        dest_joint: joint.mutual_information(&[X1, X2, X3], &[Y], &[])?,
    })
}

/// Achievable region of the irregular decode-and-forward scheme: six
/// constraints, three for decoding at the relay (side information `W3`) and
/// three for decoding at the destination (side information `W`).
///
/// Each constraint reads `H < kappa * I`; the report's `kappa_star` is the
/// smallest source-channel rate above which all six hold.
pub fn df_achievable_region(
    sources: &JointSourceDist,
    channel: &DmChannel,
    input: &FactoredInputDist,
) -> Result<RegionReport> {
    let entropies = EntropyVector::from_sources(sources)?;
    let joint = induced_joint(channel, input)?;
    let rates = df_rate_vector(&joint)?;
    Ok(RegionReport::from_constraints(
        BoundSense::Achievable,
        vec![
            ConstraintReport::new(Constraint::RelayS1, entropies.relay_s1, rates.relay_s1),
            ConstraintReport::new(Constraint::RelayS2, entropies.relay_s2, rates.relay_s2),
            ConstraintReport::new(Constraint::RelayJoint, entropies.relay_joint, rates.relay_joint),
            ConstraintReport::new(Constraint::DestS1, entropies.dest_s1, rates.dest_s1),
            ConstraintReport::new(Constraint::DestS2, entropies.dest_s2, rates.dest_s2),
            ConstraintReport::new(Constraint::DestJoint, entropies.dest_joint, rates.dest_joint),
        ],
    ))
}

/// Achievable region when the source and relay codebooks are forced to a
/// common size (regular encoding), which merges each relay/destination
/// constraint pair.
///
/// For MABRC the merged constraint is
/// `max(H_relay, H_dest) < kappa * min(I_relay, I_dest)`. For MARC a single
/// Slepian-Wolf code suffices and the sources need not be recovered at the
/// relay, so the left side keeps only the destination entropy:
/// `H_dest < kappa * min(I_relay, I_dest)`.
pub fn regular_encoding_region(
    sources: &JointSourceDist,
    channel: &DmChannel,
    input: &FactoredInputDist,
    scenario: Scenario,
) -> Result<RegionReport> {
    let entropies = EntropyVector::from_sources(sources)?;
    let joint = induced_joint(channel, input)?;
    let rates = df_rate_vector(&joint)?;

    let merged = |label: Constraint, h_relay: f64, h_dest: f64, r_relay: f64, r_dest: f64| {
        let h = match scenario {
            Scenario::Mabrc => h_relay.max(h_dest),
            Scenario::Marc => h_dest,
        };
        ConstraintReport::new(label, h, r_relay.min(r_dest))
    };

    Ok(RegionReport::from_constraints(
        BoundSense::Achievable,
        vec![
            merged(
                Constraint::MergedS1,
                entropies.relay_s1,
                entropies.dest_s1,
                rates.relay_s1,
                rates.dest_s1,
            ),
            merged(
                Constraint::MergedS2,
                entropies.relay_s2,
                entropies.dest_s2,
                rates.relay_s2,
                rates.dest_s2,
            ),
            merged(
                Constraint::MergedJoint,
                entropies.relay_joint,
                entropies.dest_joint,
                rates.relay_joint,
                rates.dest_joint,
            ),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::Alphabet;
    use approx::assert_abs_diff_eq;

    pub(crate) fn bit_pipe_channel() -> DmChannel {
        let mut kernel = vec![0.0; 8 * 8 * 4];
        for x1 in 0..2usize {
            for x2 in 0..2usize {
                for x3 in 0..2usize {
                    let y = 4 * x1 + 2 * x2 + x3;
                    let y3 = 2 * x1 + x2;
                    kernel[(((x1 * 2 + x2) * 2 + x3) * 8 + y) * 4 + y3] = 1.0;
                }
            }
        }
        DmChannel::from_sizes([2, 2, 2], [8, 4], kernel).unwrap()
    }

    fn uniform_pair_sources() -> JointSourceDist {
        // S1, S2 independent uniform bits; W, W3 trivial.
        let mut pmf = vec![0.0; 2 * 2 * 1 * 1];
        for s1 in 0..2 {
            for s2 in 0..2 {
                pmf[s1 * 2 + s2] = 0.25;
            }
        }
        JointSourceDist::new(
            [
                Alphabet::indexed("s1", 2).unwrap(),
                Alphabet::indexed("s2", 2).unwrap(),
                Alphabet::indexed("w", 1).unwrap(),
                Alphabet::indexed("w3", 1).unwrap(),
            ],
            pmf,
        )
        .unwrap()
    }

    #[test]
    fn bit_pipe_rates_with_uniform_inputs() {
        let sources = uniform_pair_sources();
        let ch = bit_pipe_channel();
        let input = FactoredInputDist::uniform_for(&ch);
        let report = df_achievable_region(&sources, &ch, &input).unwrap();
        let want = [1.0, 1.0, 2.0, 2.0, 2.0, 3.0];
        for (c, w) in report.constraints.iter().zip(want) {
            assert_abs_diff_eq!(c.rate_bits, w, epsilon = 1e-9);
        }
    }

    #[test]
    fn perfect_destination_side_information_zeroes_dest_bounds() {
        // W = (S1,S2), W3 trivial: destination entropies all zero.
        let mut pmf = vec![0.0; 2 * 2 * 4 * 1];
        for s1 in 0..2 {
            for s2 in 0..2 {
                let w = 2 * s1 + s2;
                pmf[(s1 * 2 + s2) * 4 + w] = 0.25;
            }
        }
        let sources = JointSourceDist::from_sizes([2, 2, 4, 1], pmf).unwrap();
        let ch = bit_pipe_channel();
        let input = FactoredInputDist::uniform_for(&ch);
        let report = df_achievable_region(&sources, &ch, &input).unwrap();
        for c in &report.constraints {
            if matches!(
                c.constraint,
                Constraint::DestS1 | Constraint::DestS2 | Constraint::DestJoint
            ) {
                assert_eq!(c.kappa_bound, 0.0);
            }
        }
    }

    #[test]
    fn useless_channel_gives_infinite_kappa() {
        // Y and Y3 constant regardless of inputs.
        let kernel = vec![1.0; 8];
        let ch = DmChannel::from_sizes([2, 2, 2], [1, 1], kernel).unwrap();
        let sources = uniform_pair_sources();
        let input = FactoredInputDist::uniform_for(&ch);
        let report = df_achievable_region(&sources, &ch, &input).unwrap();
        assert!(report.kappa_star.is_infinite());
        assert!(!report.feasible(1e12));
    }

    #[test]
    fn constant_sources_make_kappa_zero_in_both_encodings() {
        let sources = JointSourceDist::from_sizes([1, 1, 1, 1], vec![1.0]).unwrap();
        let ch = bit_pipe_channel();
        let input = FactoredInputDist::uniform_for(&ch);
        let irregular = df_achievable_region(&sources, &ch, &input).unwrap();
        let regular = regular_encoding_region(&sources, &ch, &input, Scenario::Mabrc).unwrap();
        assert_eq!(irregular.kappa_star, 0.0);
        assert_eq!(regular.kappa_star, 0.0);
    }
}
