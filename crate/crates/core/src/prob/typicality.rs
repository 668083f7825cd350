use super::JointTable;
use crate::{Error, Result};

/// Strong-typicality membership test.
///
/// `sequences` holds one symbol sequence per variable of `reference`, all of
/// the same length `m >= 1`. The tuple is epsilon-strongly typical when, for
/// every joint symbol `a`, the empirical frequency satisfies
/// `|N(a)/m - p(a)| <= epsilon`, and no symbol of zero reference probability
/// occurs.
pub fn is_strongly_typical(
    sequences: &[&[usize]],
    reference: &JointTable,
    epsilon: f64,
) -> Result<bool> {
    if sequences.len() != reference.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: reference.num_vars(),
            got: sequences.len(),
        });
    }
    if epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let m = sequences.first().map_or(0, |s| s.len());
    if m == 0 {
        return Err(Error::InvalidParameter("sequences must be nonempty".into()));
    }
    for s in sequences {
        if s.len() != m {
            return Err(Error::LengthMismatch {
                first: m,
                other: s.len(),
            });
        }
    }
    let sizes = reference.sizes();
    let strides = reference.strides();
    let mut counts = vec![0u32; reference.probs().len()];
    for k in 0..m {
        let mut idx = 0usize;
        for (v, seq) in sequences.iter().enumerate() {
            let sym = seq[k];
            if sym >= sizes[v] {
                return Err(Error::SymbolOutOfRange {
                    var: v,
                    symbol: sym,
                    size: sizes[v],
                });
            }
            idx += sym * strides[v];
        }
        counts[idx] += 1;
    }
    let mf = m as f64;
    for (&n, &p) in counts.iter().zip(reference.probs()) {
        if p == 0.0 {
            if n > 0 {
                return Ok(false);
            }
            continue;
        }
        if (n as f64 / mf - p).abs() > epsilon {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_mass() -> JointTable {
        JointTable::new(vec!["x".into()], vec![2], vec![1.0, 0.0]).unwrap()
    }

    #[test]
    fn constant_sequence_against_point_mass() {
        let t = point_mass();
        let seq = vec![0usize; 7];
        for eps in [1e-6, 0.1, 1.0] {
            assert!(is_strongly_typical(&[&seq], &t, eps).unwrap());
        }
    }

    #[test]
    fn zero_probability_symbol_excluded() {
        let t = point_mass();
        let seq = vec![0, 0, 1, 0];
        assert!(!is_strongly_typical(&[&seq], &t, 10.0).unwrap());
    }

    #[test]
    fn deviation_threshold_is_sharp() {
        // i.i.d. uniform bit pair, m = 10, empirical freqs (0.6, 0.4) on the
        // diagonal cells: deviation 0.1 from 0.5... built as two sequences.
        let t = JointTable::new(
            vec!["a".into(), "b".into()],
            vec![2, 2],
            vec![0.5, 0.0, 0.0, 0.5],
        )
        .unwrap();
        let a: Vec<usize> = vec![0, 0, 0, 0, 0, 0, 1, 1, 1, 1];
        let b = a.clone();
        assert!(is_strongly_typical(&[&a, &b], &t, 0.1).unwrap());
        assert!(!is_strongly_typical(&[&a, &b], &t, 0.0999).unwrap());
    }

    #[test]
    fn length_mismatch_rejected() {
        let t = JointTable::new(
            vec!["a".into(), "b".into()],
            vec![2, 2],
            vec![0.25; 4],
        )
        .unwrap();
        let a = vec![0, 1];
        let b = vec![0, 1, 0];
        assert!(is_strongly_typical(&[&a, &b], &t, 0.1).is_err());
    }
}
