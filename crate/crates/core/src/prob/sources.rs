use serde::{Deserialize, Serialize};

use super::{Alphabet, JointTable};
use crate::{Error, Result};

/// Joint pmf over the two sources and the two side-information variables
/// `(S1, S2, W, W3)`.
///
/// `W` is the destination side information and `W3` the relay side
/// information. Variable order in the dense table is `(s1, s2, w, w3)`,
/// row-major with `w3` fastest.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SourcesJson", into = "SourcesJson")]
pub struct JointSourceDist {
    alphabets: [Alphabet; 4],
    table: JointTable,
}

/// On-disk schema: one symbol list per variable plus the flattened pmf,
/// row-major over `(s1, s2, w, w3)` with `w3` fastest.
///
/// Deserializing this struct never validates; call [`SourcesJson::build`] to
/// run the invariant checks and obtain the domain type.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SourcesJson {
    pub s1: Vec<String>,
    pub s2: Vec<String>,
    pub w: Vec<String>,
    pub w3: Vec<String>,
    pub pmf: Vec<f64>,
}

impl SourcesJson {
    pub fn build(self) -> Result<JointSourceDist> {
        self.try_into()
    }
}

impl JointSourceDist {
    pub const S1: usize = 0;
    pub const S2: usize = 1;
    pub const W: usize = 2;
    pub const W3: usize = 3;

    pub fn new(alphabets: [Alphabet; 4], pmf: Vec<f64>) -> Result<Self> {
        let table = JointTable::new(
            alphabets.iter().map(|a| a.name().to_string()).collect(),
            alphabets.iter().map(|a| a.size()).collect(),
            pmf,
        )?;
        Ok(Self { alphabets, table })
    }

    /// Builds from sizes with decimal symbol labels.
    pub fn from_sizes(sizes: [usize; 4], pmf: Vec<f64>) -> Result<Self> {
        let names = ["s1", "s2", "w", "w3"];
        let mut alphabets = Vec::with_capacity(4);
        for (name, &size) in names.iter().zip(&sizes) {
            alphabets.push(Alphabet::indexed(*name, size)?);
        }
        let alphabets: [Alphabet; 4] = alphabets.try_into().expect("length 4");
        Self::new(alphabets, pmf)
    }

    pub fn alphabets(&self) -> &[Alphabet; 4] {
        &self.alphabets
    }

    pub fn sizes(&self) -> [usize; 4] {
        [
            self.alphabets[0].size(),
            self.alphabets[1].size(),
            self.alphabets[2].size(),
            self.alphabets[3].size(),
        ]
    }

    pub fn table(&self) -> &JointTable {
        &self.table
    }

    /// Marginal over `(s1, s2, w)` — what the destination decoder sees.
    pub fn destination_view(&self) -> Result<JointTable> {
        self.table.marginal(&[Self::S1, Self::S2, Self::W])
    }

    /// Marginal over `(s1, s2, w3)` — what the relay decoder sees.
    pub fn relay_view(&self) -> Result<JointTable> {
        self.table.marginal(&[Self::S1, Self::S2, Self::W3])
    }
}

impl TryFrom<SourcesJson> for JointSourceDist {
    type Error = Error;

    fn try_from(j: SourcesJson) -> Result<Self> {
        let alphabets = [
            Alphabet::new("s1", j.s1)?,
            Alphabet::new("s2", j.s2)?,
            Alphabet::new("w", j.w)?,
            Alphabet::new("w3", j.w3)?,
        ];
        Self::new(alphabets, j.pmf)
    }
}

impl From<JointSourceDist> for SourcesJson {
    fn from(d: JointSourceDist) -> Self {
        SourcesJson {
            s1: d.alphabets[0].symbols().to_vec(),
            s2: d.alphabets[1].symbols().to_vec(),
            w: d.alphabets[2].symbols().to_vec(),
            w3: d.alphabets[3].symbols().to_vec(),
            pmf: d.table.probs().to_vec(),
        }
    }
}
