use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dense joint pmf over a tuple of named finite variables.
///
/// Storage is row-major with the last variable fastest. Entropies are in
/// bits, with the convention `0 log 0 = 0`; conditioning values of zero mass
/// contribute nothing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JointTable {
    names: Vec<String>,
    sizes: Vec<usize>,
    probs: Vec<f64>,
}

impl JointTable {
    pub fn new(names: Vec<String>, sizes: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(names, sizes, probs, super::CONSTRUCT_TOL)
    }

    pub fn with_tolerance(
        names: Vec<String>,
        sizes: Vec<usize>,
        probs: Vec<f64>,
        tol: f64,
    ) -> Result<Self> {
        if names.len() != sizes.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                got: sizes.len(),
            });
        }
        for (name, &size) in names.iter().zip(&sizes) {
            if size == 0 {
                return Err(Error::EmptyAlphabet { name: name.clone() });
            }
            if size > super::MAX_ALPHABET {
                return Err(Error::AlphabetTooLarge {
                    name: name.clone(),
                    size,
                    max: super::MAX_ALPHABET,
                });
            }
        }
        let expected: usize = sizes.iter().product();
        if probs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: probs.len(),
            });
        }
        let mut sum = 0.0;
        for &p in &probs {
            if p < 0.0 || !p.is_finite() {
                return Err(Error::NegativeProbability { value: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > tol {
            return Err(Error::NotNormalized { sum, tol });
        }
        Ok(Self { names, sizes, probs })
    }

    pub fn num_vars(&self) -> usize {
        self.sizes.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Row-major strides (last variable has stride 1).
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.sizes.len()];
        for i in (0..self.sizes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.sizes[i + 1];
        }
        strides
    }

    fn check_vars(&self, vars: &[usize]) -> Result<()> {
        for &v in vars {
            if v >= self.sizes.len() {
                return Err(Error::UnknownVariable {
                    index: v,
                    nvars: self.sizes.len(),
                });
            }
        }
        Ok(())
    }

    fn check_disjoint(groups: &[&[usize]]) -> Result<()> {
        for (i, a) in groups.iter().enumerate() {
            for b in &groups[i + 1..] {
                if a.iter().any(|v| b.contains(v)) {
                    return Err(Error::OverlappingGroups);
                }
            }
            for (j, v) in a.iter().enumerate() {
                if a[..j].contains(v) {
                    return Err(Error::OverlappingGroups);
                }
            }
        }
        Ok(())
    }

    /// Marginal over `keep` (output dimensions in the order given).
    pub fn marginal(&self, keep: &[usize]) -> Result<JointTable> {
        self.check_vars(keep)?;
        Self::check_disjoint(&[keep])?;
        let out_sizes: Vec<usize> = keep.iter().map(|&v| self.sizes[v]).collect();
        let out_len: usize = out_sizes.iter().product();
        let mut out = vec![0.0f64; out_len];

        let mut out_stride = vec![1usize; keep.len()];
        for i in (0..keep.len().saturating_sub(1)).rev() {
            out_stride[i] = out_stride[i + 1] * out_sizes[i + 1];
        }

        let mut coords = vec![0usize; self.sizes.len()];
        for &p in &self.probs {
            if p > 0.0 {
                let mut idx = 0usize;
                for (k, &v) in keep.iter().enumerate() {
                    idx += coords[v] * out_stride[k];
                }
                out[idx] += p;
            }
            // odometer increment
            for d in (0..self.sizes.len()).rev() {
                coords[d] += 1;
                if coords[d] < self.sizes[d] {
                    break;
                }
                coords[d] = 0;
            }
        }
        JointTable::with_tolerance(
            keep.iter().map(|&v| self.names[v].clone()).collect(),
            out_sizes,
            out,
            super::PRODUCT_TOL,
        )
    }

    /// Conditional entropy `H(targets | conditioning)` in bits.
    pub fn conditional_entropy(&self, targets: &[usize], conditioning: &[usize]) -> Result<f64> {
        if targets.is_empty() {
            return Err(Error::InvalidParameter("empty target group".into()));
        }
        self.check_vars(targets)?;
        self.check_vars(conditioning)?;
        Self::check_disjoint(&[targets, conditioning])?;

        let mut tc: Vec<usize> = targets.to_vec();
        tc.extend_from_slice(conditioning);
        let m_tc = self.marginal(&tc)?;
        if conditioning.is_empty() {
            let mut h = 0.0;
            for &p in m_tc.probs() {
                if p > 0.0 {
                    h -= p * p.log2();
                }
            }
            return Ok(h);
        }
        let m_c = self.marginal(conditioning)?;

        // Positions of the conditioning variables inside m_tc's dimensions.
        let cond_dims: Vec<usize> = (targets.len()..tc.len()).collect();
        let mut c_stride = vec![1usize; conditioning.len()];
        for i in (0..conditioning.len().saturating_sub(1)).rev() {
            c_stride[i] = c_stride[i + 1] * m_c.sizes[i + 1];
        }

        let mut h = 0.0;
        let mut coords = vec![0usize; m_tc.sizes.len()];
        for &p in m_tc.probs() {
            if p > 0.0 {
                let mut cidx = 0usize;
                for (k, &d) in cond_dims.iter().enumerate() {
                    cidx += coords[d] * c_stride[k];
                }
                let pc = m_c.probs[cidx];
                h -= p * (p / pc).log2();
            }
            for d in (0..m_tc.sizes.len()).rev() {
                coords[d] += 1;
                if coords[d] < m_tc.sizes[d] {
                    break;
                }
                coords[d] = 0;
            }
        }
        Ok(h)
    }

    /// Conditional mutual information `I(a; b | c)` in bits.
    ///
    /// Computed as `H(a|c) - H(a|b,c)`; tiny negative rounding residue is
    /// clamped to zero.
    pub fn mutual_information(&self, a: &[usize], b: &[usize], c: &[usize]) -> Result<f64> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidParameter("empty mutual-information group".into()));
        }
        self.check_vars(a)?;
        self.check_vars(b)?;
        self.check_vars(c)?;
        Self::check_disjoint(&[a, b, c])?;
        let mut bc: Vec<usize> = b.to_vec();
        bc.extend_from_slice(c);
        let i = self.conditional_entropy(a, c)? - self.conditional_entropy(a, &bc)?;
        Ok(i.max(0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn binary_pair(p_flip: f64) -> JointTable {
        // X uniform bit, Y = X xor Bern(p_flip)
        let mut probs = vec![0.0; 4];
        for x in 0..2 {
            for y in 0..2 {
                probs[x * 2 + y] = 0.5 * if x == y { 1.0 - p_flip } else { p_flip };
            }
        }
        JointTable::new(vec!["x".into(), "y".into()], vec![2, 2], probs).unwrap()
    }

    fn h2(p: f64) -> f64 {
        if p <= 0.0 || p >= 1.0 {
            0.0
        } else {
            -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
        }
    }

    #[test]
    fn independent_uniform_bits() {
        let t = binary_pair(0.5);
        assert_abs_diff_eq!(t.conditional_entropy(&[0], &[1]).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.mutual_information(&[0], &[1], &[]).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn copy_has_zero_conditional_entropy() {
        let t = binary_pair(0.0);
        assert_abs_diff_eq!(t.conditional_entropy(&[0], &[1]).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.mutual_information(&[0], &[1], &[]).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn bsc_entropy_matches_binary_entropy_function() {
        let t = binary_pair(0.1);
        assert_abs_diff_eq!(t.conditional_entropy(&[0], &[1]).unwrap(), h2(0.1), epsilon = 1e-12);
        let t = binary_pair(0.11);
        assert_abs_diff_eq!(
            t.mutual_information(&[0], &[1], &[]).unwrap(),
            1.0 - h2(0.11),
            epsilon = 1e-12
        );
    }

    #[test]
    fn overlapping_groups_rejected() {
        let t = binary_pair(0.1);
        assert!(t.conditional_entropy(&[0], &[0]).is_err());
        assert!(t.mutual_information(&[0], &[1], &[1]).is_err());
        assert!(t.conditional_entropy(&[0, 0], &[]).is_err());
    }

    #[test]
    fn unnormalized_rejected() {
        let err = JointTable::new(vec!["x".into()], vec![2], vec![0.5, 0.6]);
        assert!(matches!(err, Err(Error::NotNormalized { .. })));
        let err = JointTable::new(vec!["x".into()], vec![2], vec![-0.1, 1.1]);
        assert!(matches!(err, Err(Error::NegativeProbability { .. })));
    }
}
