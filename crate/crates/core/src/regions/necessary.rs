use super::report::{BoundSense, Constraint, ConstraintReport, EntropyVector, RegionReport};
use crate::prob::{DmChannel, JointSourceDist};
use crate::Result;

// Variable indices inside channel.joint_with_input (x1, x2, x3, y, y3).
const X1: usize = 0;
const X2: usize = 1;
const X3: usize = 2;
const Y: usize = 3;
const Y3: usize = 4;

/// Necessary conditions at the destination for any achievable kappa:
/// `H <= kappa * I` for the three destination cuts, under the given joint
/// input pmf `p(x1, x2, x3)` (row-major, `x3` fastest).
///
/// These bounds hold for *some* input law, so the binding necessary bound is
/// the minimum of `kappa_star` over inputs; see
/// [`super::minimize_necessary_kappa`].
pub fn marc_necessary_region(
    sources: &JointSourceDist,
    channel: &DmChannel,
    input: &[f64],
) -> Result<RegionReport> {
    let entropies = EntropyVector::from_sources(sources)?;
    let joint = channel.joint_with_input(input)?;
    Ok(RegionReport::from_constraints(
        BoundSense::Necessary,
        vec![
            ConstraintReport::new(
                Constraint::DestS1,
                entropies.dest_s1,
                joint.mutual_information(&[X1, X3], &[Y], &[X2])?,
            ),
            ConstraintReport::new(
                Constraint::DestS2,
                entropies.dest_s2,
                joint.mutual_information(&[X2, X3], &[Y], &[X1])?,
            ),
            ConstraintReport::new(
                Constraint::DestJoint,
                entropies.dest_joint,
                joint.mutual_information(&[X1, X2, X3], &[Y], &[])?,
            ),
        ],
    ))
}

/// Necessary conditions for the MABRC: the destination cuts plus three relay
/// cuts `H(.|..,W3) <= kappa * I(.;Y3|..,X3)`.
pub fn mabrc_necessary_region(
    sources: &JointSourceDist,
    channel: &DmChannel,
    input: &[f64],
) -> Result<RegionReport> {
    let entropies = EntropyVector::from_sources(sources)?;
    let joint = channel.joint_with_input(input)?;
    let mut constraints = marc_necessary_region(sources, channel, input)?.constraints;
    constraints.push(ConstraintReport::new(
        Constraint::RelayS1,
        entropies.relay_s1,
        joint.mutual_information(&[X1], &[Y3], &[X2, X3])?,
    ));
    constraints.push(ConstraintReport::new(
        Constraint::RelayS2,
        entropies.relay_s2,
        joint.mutual_information(&[X2], &[Y3], &[X1, X3])?,
    ));
    constraints.push(ConstraintReport::new(
        Constraint::RelayJoint,
        entropies.relay_joint,
        joint.mutual_information(&[X1, X2], &[Y3], &[X3])?,
    ));
    Ok(RegionReport::from_constraints(BoundSense::Necessary, constraints))
}
