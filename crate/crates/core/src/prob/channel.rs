use serde::{Deserialize, Serialize};

use super::{Alphabet, JointTable, CONSTRUCT_TOL};
use crate::{Error, Result};

/// Discrete memoryless channel `p(y, y3 | x1, x2, x3)` with three inputs and
/// two outputs (`y` at the destination, `y3` at the relay).
///
/// The kernel is stored row-major over `(x1, x2, x3, y, y3)` with `y3`
/// fastest; every `(x1, x2, x3)` slice must sum to one.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "ChannelJson", into = "ChannelJson")]
pub struct DmChannel {
    inputs: [Alphabet; 3],
    outputs: [Alphabet; 2],
    kernel: Vec<f64>,
}

/// On-disk schema: symbol lists per terminal plus the flattened kernel,
/// row-major over `(x1, x2, x3, y, y3)` with `y3` fastest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelJson {
    pub x1: Vec<String>,
    pub x2: Vec<String>,
    pub x3: Vec<String>,
    pub y: Vec<String>,
    pub y3: Vec<String>,
    pub kernel: Vec<f64>,
}

impl ChannelJson {
    pub fn build(self) -> Result<DmChannel> {
        self.try_into()
    }
}

impl DmChannel {
    pub fn new(inputs: [Alphabet; 3], outputs: [Alphabet; 2], kernel: Vec<f64>) -> Result<Self> {
        let in_card: usize = inputs.iter().map(Alphabet::size).product();
        let out_card: usize = outputs.iter().map(Alphabet::size).product();
        if kernel.len() != in_card * out_card {
            return Err(Error::DimensionMismatch {
                expected: in_card * out_card,
                got: kernel.len(),
            });
        }
        for (slice_idx, slice) in kernel.chunks(out_card).enumerate() {
            let mut sum = 0.0;
            for &p in slice {
                if p < 0.0 || !p.is_finite() {
                    return Err(Error::NegativeProbability { value: p });
                }
                sum += p;
            }
            if (sum - 1.0).abs() > CONSTRUCT_TOL {
                return Err(Error::SliceNotNormalized {
                    context: format!("input triple #{slice_idx}"),
                    sum,
                    tol: CONSTRUCT_TOL,
                });
            }
        }
        Ok(Self { inputs, outputs, kernel })
    }

    pub fn from_sizes(input_sizes: [usize; 3], output_sizes: [usize; 2], kernel: Vec<f64>) -> Result<Self> {
        let inputs = [
            Alphabet::indexed("x1", input_sizes[0])?,
            Alphabet::indexed("x2", input_sizes[1])?,
            Alphabet::indexed("x3", input_sizes[2])?,
        ];
        let outputs = [
            Alphabet::indexed("y", output_sizes[0])?,
            Alphabet::indexed("y3", output_sizes[1])?,
        ];
        Self::new(inputs, outputs, kernel)
    }

    pub fn input_sizes(&self) -> [usize; 3] {
        [self.inputs[0].size(), self.inputs[1].size(), self.inputs[2].size()]
    }

    pub fn output_sizes(&self) -> [usize; 2] {
        [self.outputs[0].size(), self.outputs[1].size()]
    }

    pub fn inputs(&self) -> &[Alphabet; 3] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Alphabet; 2] {
        &self.outputs
    }

    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }

    #[inline]
    pub fn kernel_at(&self, x1: usize, x2: usize, x3: usize, y: usize, y3: usize) -> f64 {
        let [.., n2, n3] = self.input_sizes();
        let _ = n2;
        let [ny, ny3] = self.output_sizes();
        let idx = ((((x1 * self.inputs[1].size()) + x2) * n3 + x3) * ny + y) * ny3 + y3;
        self.kernel[idx]
    }

    /// Joint `p(x1, x2, x3, y, y3)` induced by an arbitrary input pmf
    /// `p(x1, x2, x3)` (flattened row-major, `x3` fastest).
    pub fn joint_with_input(&self, input: &[f64]) -> Result<JointTable> {
        let in_card: usize = self.inputs.iter().map(Alphabet::size).product();
        if input.len() != in_card {
            return Err(Error::DimensionMismatch {
                expected: in_card,
                got: input.len(),
            });
        }
        let out_card: usize = self.outputs.iter().map(Alphabet::size).product();
        let mut probs = Vec::with_capacity(in_card * out_card);
        for (slice, &px) in self.kernel.chunks(out_card).zip(input) {
            if px < 0.0 {
                return Err(Error::NegativeProbability { value: px });
            }
            probs.extend(slice.iter().map(|&k| k * px));
        }
        JointTable::with_tolerance(
            vec!["x1".into(), "x2".into(), "x3".into(), "y".into(), "y3".into()],
            vec![
                self.inputs[0].size(),
                self.inputs[1].size(),
                self.inputs[2].size(),
                self.outputs[0].size(),
                self.outputs[1].size(),
            ],
            probs,
            super::PRODUCT_TOL,
        )
    }
}

impl TryFrom<ChannelJson> for DmChannel {
    type Error = Error;

    fn try_from(j: ChannelJson) -> Result<Self> {
        let inputs = [
            Alphabet::new("x1", j.x1)?,
            Alphabet::new("x2", j.x2)?,
            Alphabet::new("x3", j.x3)?,
        ];
        let outputs = [Alphabet::new("y", j.y)?, Alphabet::new("y3", j.y3)?];
        Self::new(inputs, outputs, j.kernel)
    }
}

impl From<DmChannel> for ChannelJson {
    fn from(c: DmChannel) -> Self {
        ChannelJson {
            x1: c.inputs[0].symbols().to_vec(),
            x2: c.inputs[1].symbols().to_vec(),
            x3: c.inputs[2].symbols().to_vec(),
            y: c.outputs[0].symbols().to_vec(),
            y3: c.outputs[1].symbols().to_vec(),
            kernel: c.kernel,
        }
    }
}
