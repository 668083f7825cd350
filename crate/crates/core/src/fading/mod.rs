//! Ergodic rate regions for phase- and Rayleigh-fading Gaussian MARCs with
//! per-symbol power constraints and receiver channel state information.
//!
//! Inputs are i.i.d. zero-mean circular Gaussian at the declared powers with
//! decode-and-forward at the relay. The relay-decoding dominance conditions
//! decide whether the destination cut-set rates are simultaneously the
//! capacity region, in which case achievable and necessary kappa bounds
//! coincide.

mod expint;
mod rayleigh;

pub use expint::exp_integral_e1;
pub use rayleigh::{rayleigh_region, MonteCarloEstimate};

use serde::{Deserialize, Serialize};

use crate::prob::JointSourceDist;
use crate::regions::{kappa_bound, EntropyVector};
use crate::{Error, Result};

/// Fading law of the channel coefficients: fixed magnitude with uniform
/// phase, or circularly symmetric complex Gaussian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FadingKind {
    Phase,
    Rayleigh,
}

/// Attenuations and transmit powers of a fading Gaussian MARC.
///
/// Index convention for attenuations `a_li`: link from node `l` into node
/// `i`, with nodes 1 and 2 the transmitters, 3 the relay, and the receiver
/// implicit (so `a11`, `a21`, `a31` feed the destination and `a13`, `a23`
/// feed the relay).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FadingMarcConfig {
    pub a11: f64,
    pub a21: f64,
    pub a31: f64,
    pub a13: f64,
    pub a23: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub kind: FadingKind,
}

impl FadingMarcConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a11", self.a11),
            ("a21", self.a21),
            ("a31", self.a31),
            ("a13", self.a13),
            ("a23", self.a23),
            ("p1", self.p1),
            ("p2", self.p2),
            ("p3", self.p3),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Received-power products at the destination and the relay.
    pub(crate) fn gains(&self) -> Gains {
        Gains {
            s11: self.a11 * self.a11 * self.p1,
            s21: self.a21 * self.a21 * self.p2,
            s31: self.a31 * self.a31 * self.p3,
            s13: self.a13 * self.a13 * self.p1,
            s23: self.a23 * self.a23 * self.p2,
        }
    }

    fn expect_kind(&self, kind: FadingKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidParameter(format!(
                "config kind is {:?}, expected {kind:?}",
                self.kind
            )));
        }
        Ok(())
    }
}

pub(crate) struct Gains {
    pub s11: f64,
    pub s21: f64,
    pub s31: f64,
    pub s13: f64,
    pub s23: f64,
}

/// Result of a relay-dominance or entropy-dominance condition check:
/// `slack[i] = rhs_i - lhs_i`, so every slack nonnegative means the
/// conditions hold.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub slack: [f64; 3],
    /// Set when the third Rayleigh condition was evaluated by the
    /// equal-gain limit rule instead of the difference quotient.
    pub limit_rule_used: bool,
}

impl ConditionCheck {
    fn from_slack(slack: [f64; 3], limit_rule_used: bool) -> Self {
        ConditionCheck {
            holds: slack.iter().all(|&s| s >= -1e-12),
            slack,
            limit_rule_used,
        }
    }
}

/// Destination-cut rate triple of a fading region, with the relay-dominance
/// check that makes the triple the capacity region.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FadingRegion {
    /// Rate bound for the source-1 cut, bits per channel use.
    pub c1: f64,
    /// Rate bound for the source-2 cut.
    pub c2: f64,
    /// Rate bound for the sum cut.
    pub c_sum: f64,
    pub conditions_hold: bool,
    pub condition_slack: [f64; 3],
}

/// Relay-decoding dominance conditions for phase fading:
/// the relay must out-hear the destination on every cut.
pub fn phase_conditions(cfg: &FadingMarcConfig) -> Result<ConditionCheck> {
    cfg.validate()?;
    cfg.expect_kind(FadingKind::Phase)?;
    let g = cfg.gains();
    Ok(ConditionCheck::from_slack(
        [
            g.s13 - (g.s11 + g.s31),
            g.s23 - (g.s21 + g.s31),
            (g.s13 + g.s23) - (g.s11 + g.s21 + g.s31),
        ],
        false,
    ))
}

/// Destination-cut rates for phase fading: `log2(1 + received power)` per
/// cut.
pub fn phase_region(cfg: &FadingMarcConfig) -> Result<FadingRegion> {
    let check = phase_conditions(cfg)?;
    let g = cfg.gains();
    Ok(FadingRegion {
        c1: (1.0 + g.s11 + g.s31).log2(),
        c2: (1.0 + g.s21 + g.s31).log2(),
        c_sum: (1.0 + g.s11 + g.s21 + g.s31).log2(),
        conditions_hold: check.holds,
        condition_slack: check.slack,
    })
}

/// `x / (e^(1/x) E1(1/x))` is the relay-side ergodic-rate expression for a
/// single Rayleigh link of mean received power `x`, measured in nats
/// exponentiated away; `ergodic_gain` returns `e^(1/x) E1(1/x)` itself.
pub(crate) fn ergodic_gain(x: f64) -> Result<f64> {
    Ok((1.0 / x).exp() * exp_integral_e1(1.0 / x)?)
}

/// Relative half-width used both to detect the equal-gain case of the third
/// Rayleigh condition and as the perturbation of its limit rule.
const EQUAL_GAIN_REL: f64 = 1e-6;

/// Relay-decoding dominance conditions for Rayleigh fading.
///
/// A vanishing relay gain makes the affected condition fail outright (the
/// relay hears nothing). When the two relay gains coincide, the third
/// condition's difference quotient is evaluated as a symmetric-perturbation
/// limit and flagged.
pub fn rayleigh_conditions(cfg: &FadingMarcConfig) -> Result<ConditionCheck> {
    cfg.validate()?;
    cfg.expect_kind(FadingKind::Rayleigh)?;
    let g = cfg.gains();
    let lhs1 = 1.0 + g.s11 + g.s31;
    let lhs2 = 1.0 + g.s21 + g.s31;
    let lhs3 = 1.0 + g.s11 + g.s21 + g.s31;

    if g.s13 <= 0.0 || g.s23 <= 0.0 {
        let r1 = if g.s13 > 0.0 { g.s13 / ergodic_gain(g.s13)? } else { 0.0 };
        let r2 = if g.s23 > 0.0 { g.s23 / ergodic_gain(g.s23)? } else { 0.0 };
        return Ok(ConditionCheck::from_slack(
            [r1 - lhs1, r2 - lhs2, -lhs3],
            false,
        ));
    }

    let g13 = ergodic_gain(g.s13)?;
    let g23 = ergodic_gain(g.s23)?;
    let rhs1 = g.s13 / g13;
    let rhs2 = g.s23 / g23;

    let scale = g.s13.max(g.s23);
    let (rhs3, limit_rule) = if (g.s13 - g.s23).abs() <= EQUAL_GAIN_REL * scale {
        let mid = 0.5 * (g.s13 + g.s23);
        let h = EQUAL_GAIN_REL * mid;
        let slope = (ergodic_gain(mid + h)? - ergodic_gain(mid - h)?) / (2.0 * h);
        (1.0 / slope, true)
    } else {
        ((g.s23 - g.s13) / (g23 - g13), false)
    };

    Ok(ConditionCheck::from_slack(
        [rhs1 - lhs1, rhs2 - lhs2, rhs3 - lhs3],
        limit_rule,
    ))
}

/// Smallest kappa satisfying all three destination-cut constraints
/// `H <= kappa * C`; infinite when some entropy is positive against a zero
/// rate.
pub fn kappa_star(region: &FadingRegion, dest_entropies: [f64; 3]) -> f64 {
    [
        kappa_bound(dest_entropies[0], region.c1),
        kappa_bound(dest_entropies[1], region.c2),
        kappa_bound(dest_entropies[2], region.c_sum),
    ]
    .into_iter()
    .fold(0.0f64, f64::max)
}

/// Necessary-side kappa bound for phase fading from the same closed forms,
/// evaluated on an independent arithmetic path (natural logs).
pub fn phase_necessary_kappa(cfg: &FadingMarcConfig, dest_entropies: [f64; 3]) -> Result<f64> {
    cfg.validate()?;
    let g = cfg.gains();
    let ln2 = std::f64::consts::LN_2;
    let c = [
        (1.0 + g.s11 + g.s31).ln() / ln2,
        (1.0 + g.s21 + g.s31).ln() / ln2,
        (1.0 + g.s11 + g.s21 + g.s31).ln() / ln2,
    ];
    Ok([
        kappa_bound(dest_entropies[0], c[0]),
        kappa_bound(dest_entropies[1], c[1]),
        kappa_bound(dest_entropies[2], c[2]),
    ]
    .into_iter()
    .fold(0.0f64, f64::max))
}

/// Entropy dominance conditions for the MABRC: relay-side conditional
/// entropies must not exceed their destination-side counterparts.
pub fn mabrc_entropy_check(sources: &JointSourceDist) -> Result<ConditionCheck> {
    let ev = EntropyVector::from_sources(sources)?;
    Ok(ConditionCheck::from_slack(
        [
            ev.dest_s1 - ev.relay_s1,
            ev.dest_s2 - ev.relay_s2,
            ev.dest_joint - ev.relay_joint,
        ],
        false,
    ))
}

/// MABRC kappa bound: each cut must support the larger of the relay-side and
/// destination-side entropies. Equals the MARC [`kappa_star`] exactly when
/// the entropy dominance conditions hold.
pub fn mabrc_kappa_star(region: &FadingRegion, entropies: &EntropyVector) -> f64 {
    [
        kappa_bound(entropies.relay_s1.max(entropies.dest_s1), region.c1),
        kappa_bound(entropies.relay_s2.max(entropies.dest_s2), region.c2),
        kappa_bound(entropies.relay_joint.max(entropies.dest_joint), region.c_sum),
    ]
    .into_iter()
    .fold(0.0f64, f64::max)
}
