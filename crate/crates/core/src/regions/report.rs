use serde::{Deserialize, Serialize};

use crate::prob::JointSourceDist;
use crate::Result;

/// Values below this are treated as an exact zero when forming kappa bounds.
const ZERO_EPS: f64 = 1e-12;

/// Default strictness margin for the feasibility predicate.
pub const DEFAULT_FEASIBILITY_MARGIN: f64 = 1e-9;

/// Whether a report states sufficient (achievable) or necessary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSense {
    Achievable,
    Necessary,
}

/// One decoding constraint of a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    RelayS1,
    RelayS2,
    RelayJoint,
    DestS1,
    DestS2,
    DestJoint,
    MergedS1,
    MergedS2,
    MergedJoint,
}

impl Constraint {
    pub fn label(&self) -> &'static str {
        match self {
            Constraint::RelayS1 => "relay_s1",
            Constraint::RelayS2 => "relay_s2",
            Constraint::RelayJoint => "relay_joint",
            Constraint::DestS1 => "dest_s1",
            Constraint::DestS2 => "dest_s2",
            Constraint::DestJoint => "dest_joint",
            Constraint::MergedS1 => "merged_s1",
            Constraint::MergedS2 => "merged_s2",
            Constraint::MergedJoint => "merged_joint",
        }
    }
}

/// The six conditional source entropies appearing on the left-hand sides of
/// the decoding constraints (bits per source sample).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyVector {
    /// H(S1 | S2, W3)
    pub relay_s1: f64,
    /// H(S2 | S1, W3)
    pub relay_s2: f64,
    /// H(S1, S2 | W3)
    pub relay_joint: f64,
    /// H(S1 | S2, W)
    pub dest_s1: f64,
    /// H(S2 | S1, W)
    pub dest_s2: f64,
    /// H(S1, S2 | W)
    pub dest_joint: f64,
}

impl EntropyVector {
    pub fn from_sources(sources: &JointSourceDist) -> Result<Self> {
        let t = sources.table();
        const S1: usize = JointSourceDist::S1;
        const S2: usize = JointSourceDist::S2;
        const W: usize = JointSourceDist::W;
        const W3: usize = JointSourceDist::W3;
        Ok(EntropyVector {
            relay_s1: t.conditional_entropy(&[S1], &[S2, W3])?,
            relay_s2: t.conditional_entropy(&[S2], &[S1, W3])?,
            relay_joint: t.conditional_entropy(&[S1, S2], &[W3])?,
            dest_s1: t.conditional_entropy(&[S1], &[S2, W])?,
            dest_s2: t.conditional_entropy(&[S2], &[S1, W])?,
            dest_joint: t.conditional_entropy(&[S1, S2], &[W])?,
        })
    }

    /// Destination triple `(H(S1|S2,W), H(S2|S1,W), H(S1,S2|W))`.
    pub fn destination_triple(&self) -> [f64; 3] {
        [self.dest_s1, self.dest_s2, self.dest_joint]
    }

    /// Relay triple `(H(S1|S2,W3), H(S2|S1,W3), H(S1,S2|W3))`.
    pub fn relay_triple(&self) -> [f64; 3] {
        [self.relay_s1, self.relay_s2, self.relay_joint]
    }
}

/// The six mutual-information rates on the right-hand sides of the
/// decode-and-forward constraints (bits per channel use).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateVector {
    /// I(X1; Y3 | X2, V1, X3)
    pub relay_s1: f64,
    /// I(X2; Y3 | X1, V2, X3)
    pub relay_s2: f64,
    /// I(X1, X2; Y3 | V1, V2, X3)
    pub relay_joint: f64,
    /// I(X1, X3; Y | X2, V2)
    pub dest_s1: f64,
    /// I(X2, X3; Y | X1, V1)
    pub dest_s2: f64,
    /// I(X1, X2, X3; Y)
    pub dest_joint: f64,
}

/// Kappa bound implied by one constraint `H < kappa * I`.
///
/// Zero entropy never constrains (bound 0); positive entropy against zero
/// rate is unsatisfiable (bound infinity).
pub fn kappa_bound(entropy_bits: f64, rate_bits: f64) -> f64 {
    if entropy_bits <= ZERO_EPS {
        0.0
    } else if rate_bits <= ZERO_EPS {
        f64::INFINITY
    } else {
        entropy_bits / rate_bits
    }
}

/// Per-constraint evaluation: entropy, rate, and the implied kappa bound.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub constraint: Constraint,
    pub entropy_bits: f64,
    pub rate_bits: f64,
    pub kappa_bound: f64,
    /// True when both sides vanish and the constraint restricts nothing.
    pub vacuous: bool,
}

impl ConstraintReport {
    pub fn new(constraint: Constraint, entropy_bits: f64, rate_bits: f64) -> Self {
        ConstraintReport {
            constraint,
            entropy_bits,
            rate_bits,
            kappa_bound: kappa_bound(entropy_bits, rate_bits),
            vacuous: entropy_bits <= ZERO_EPS && rate_bits <= ZERO_EPS,
        }
    }
}

/// A full region evaluation: constraints, their kappa bounds, and the
/// binding bound `kappa_star`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionReport {
    pub sense: BoundSense,
    pub constraints: Vec<ConstraintReport>,
    pub kappa_star: f64,
}

impl RegionReport {
    pub fn from_constraints(sense: BoundSense, constraints: Vec<ConstraintReport>) -> Self {
        let kappa_star = constraints
            .iter()
            .map(|c| c.kappa_bound)
            .fold(0.0f64, f64::max);
        RegionReport {
            sense,
            constraints,
            kappa_star,
        }
    }

    /// Strict-inequality feasibility with the default margin.
    pub fn feasible(&self, kappa: f64) -> bool {
        self.feasible_with_margin(kappa, DEFAULT_FEASIBILITY_MARGIN)
    }

    /// `kappa > kappa_star + delta`; monotone in `kappa`.
    pub fn feasible_with_margin(&self, kappa: f64, delta: f64) -> bool {
        kappa > self.kappa_star + delta
    }

    pub fn constraint(&self, which: Constraint) -> Option<&ConstraintReport> {
        self.constraints.iter().find(|c| c.constraint == which)
    }

    /// CSV header matching [`RegionReport::csv_row`]: three columns per
    /// constraint (entropy, rate, bound) plus `kappa_star`.
    pub fn csv_header(&self) -> String {
        let mut cols = Vec::new();
        for c in &self.constraints {
            let l = c.constraint.label();
            cols.push(format!("h_{l}"));
            cols.push(format!("rate_{l}"));
            cols.push(format!("bound_{l}"));
        }
        cols.push("kappa_star".into());
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = Vec::new();
        for c in &self.constraints {
            cols.push(format!("{:.12}", c.entropy_bits));
            cols.push(format!("{:.12}", c.rate_bits));
            cols.push(format!("{:.12}", c.kappa_bound));
        }
        cols.push(format!("{:.12}", self.kappa_star));
        cols.join(",")
    }
}
