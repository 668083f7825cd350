use serde::{Deserialize, Serialize};

use super::{DmChannel, JointTable, CONSTRUCT_TOL, PRODUCT_TOL};
use crate::{Error, Result};

/// Channel input law that factors as
/// `p(v1) p(x1|v1) p(v2) p(x2|v2) p(x3|v1,v2)`.
///
/// `V1` and `V2` are the auxiliary variables carried by the relay codeword;
/// their alphabet sizes are chosen by the caller (the convenience
/// constructors default to `|Vi| = |Xi|`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactoredInputDist {
    pub p_v1: Vec<f64>,
    pub p_v2: Vec<f64>,
    /// `[v1][x1]`
    pub p_x1_given_v1: Vec<Vec<f64>>,
    /// `[v2][x2]`
    pub p_x2_given_v2: Vec<Vec<f64>>,
    /// `[v1][v2][x3]`
    pub p_x3_given_v1_v2: Vec<Vec<Vec<f64>>>,
}

fn check_pmf(context: &str, pmf: &[f64]) -> Result<()> {
    let mut sum = 0.0;
    for &p in pmf {
        if p < 0.0 || !p.is_finite() {
            return Err(Error::NegativeProbability { value: p });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > CONSTRUCT_TOL {
        return Err(Error::SliceNotNormalized {
            context: context.to_string(),
            sum,
            tol: CONSTRUCT_TOL,
        });
    }
    Ok(())
}

impl FactoredInputDist {
    pub fn validate(&self) -> Result<()> {
        check_pmf("p(v1)", &self.p_v1)?;
        check_pmf("p(v2)", &self.p_v2)?;
        if self.p_x1_given_v1.len() != self.p_v1.len() || self.p_x2_given_v2.len() != self.p_v2.len() {
            return Err(Error::AlphabetMismatch(
                "conditional rows do not match auxiliary alphabet sizes".into(),
            ));
        }
        for (v1, row) in self.p_x1_given_v1.iter().enumerate() {
            check_pmf(&format!("p(x1|v1={v1})"), row)?;
        }
        for (v2, row) in self.p_x2_given_v2.iter().enumerate() {
            check_pmf(&format!("p(x2|v2={v2})"), row)?;
        }
        if self.p_x3_given_v1_v2.len() != self.p_v1.len() {
            return Err(Error::AlphabetMismatch("p(x3|v1,v2) rows do not match |V1|".into()));
        }
        for (v1, rows) in self.p_x3_given_v1_v2.iter().enumerate() {
            if rows.len() != self.p_v2.len() {
                return Err(Error::AlphabetMismatch("p(x3|v1,v2) columns do not match |V2|".into()));
            }
            for (v2, row) in rows.iter().enumerate() {
                check_pmf(&format!("p(x3|v1={v1},v2={v2})"), row)?;
            }
        }
        Ok(())
    }

    /// All factors uniform, with `|Vi| = |Xi|` taken from the channel.
    pub fn uniform_for(channel: &DmChannel) -> Self {
        let [n1, n2, n3] = channel.input_sizes();
        Self::uniform(n1, n2, n1, n2, n3)
    }

    pub fn uniform(nv1: usize, nv2: usize, nx1: usize, nx2: usize, nx3: usize) -> Self {
        FactoredInputDist {
            p_v1: vec![1.0 / nv1 as f64; nv1],
            p_v2: vec![1.0 / nv2 as f64; nv2],
            p_x1_given_v1: vec![vec![1.0 / nx1 as f64; nx1]; nv1],
            p_x2_given_v2: vec![vec![1.0 / nx2 as f64; nx2]; nv2],
            p_x3_given_v1_v2: vec![vec![vec![1.0 / nx3 as f64; nx3]; nv2]; nv1],
        }
    }

    pub fn aux_sizes(&self) -> (usize, usize) {
        (self.p_v1.len(), self.p_v2.len())
    }

    pub fn input_sizes(&self) -> (usize, usize, usize) {
        (
            self.p_x1_given_v1.first().map_or(0, Vec::len),
            self.p_x2_given_v2.first().map_or(0, Vec::len),
            self.p_x3_given_v1_v2
                .first()
                .and_then(|r| r.first())
                .map_or(0, Vec::len),
        )
    }
}

/// Joint pmf over `(v1, v2, x1, x2, x3, y, y3)` induced by a factored input
/// law and the channel kernel.
pub fn induced_joint(channel: &DmChannel, input: &FactoredInputDist) -> Result<JointTable> {
    input.validate()?;
    let (nx1, nx2, nx3) = input.input_sizes();
    if [nx1, nx2, nx3] != channel.input_sizes() {
        return Err(Error::AlphabetMismatch(format!(
            "input law over ({nx1},{nx2},{nx3}) does not match channel inputs {:?}",
            channel.input_sizes()
        )));
    }
    let (nv1, nv2) = input.aux_sizes();
    let [ny, ny3] = channel.output_sizes();

    let mut probs = Vec::with_capacity(nv1 * nv2 * nx1 * nx2 * nx3 * ny * ny3);
    for v1 in 0..nv1 {
        for v2 in 0..nv2 {
            let p_vv = input.p_v1[v1] * input.p_v2[v2];
            for x1 in 0..nx1 {
                let p1 = input.p_x1_given_v1[v1][x1];
                for x2 in 0..nx2 {
                    let p2 = input.p_x2_given_v2[v2][x2];
                    for x3 in 0..nx3 {
                        let p_in = p_vv * p1 * p2 * input.p_x3_given_v1_v2[v1][v2][x3];
                        for y in 0..ny {
                            for y3 in 0..ny3 {
                                probs.push(p_in * channel.kernel_at(x1, x2, x3, y, y3));
                            }
                        }
                    }
                }
            }
        }
    }
    JointTable::with_tolerance(
        vec![
            "v1".into(),
            "v2".into(),
            "x1".into(),
            "x2".into(),
            "x3".into(),
            "y".into(),
            "y3".into(),
        ],
        vec![nv1, nv2, nx1, nx2, nx3, ny, ny3],
        probs,
        PRODUCT_TOL,
    )
}
