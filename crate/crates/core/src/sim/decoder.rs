use crate::prob::JointTable;

/// Outcome of an exhaustive unique-typical-pair search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DecodeOutcome {
    Unique { seq1: u64, seq2: u64 },
    /// Zero or at least two typical candidate pairs.
    NotUnique,
}

/// Candidate sequences of one user: integer encodings plus their unpacked
/// symbol digits (little-endian, position fastest).
pub(crate) struct CandidateSet {
    pub indices: Vec<u64>,
    digits: Vec<u8>,
    m: usize,
}

impl CandidateSet {
    pub fn from_filter(m: usize, alphabet: usize, count: u64, mut keep: impl FnMut(u64) -> bool) -> Self {
        let mut indices = Vec::new();
        let mut digits = Vec::new();
        for seq in 0..count {
            if keep(seq) {
                indices.push(seq);
                let mut rem = seq;
                for _ in 0..m {
                    digits.push((rem % alphabet as u64) as u8);
                    rem /= alphabet as u64;
                }
            }
        }
        CandidateSet { indices, digits, m }
    }

    #[inline]
    fn digits_of(&self, pos: usize) -> &[u8] {
        &self.digits[pos * self.m..(pos + 1) * self.m]
    }
}

/// Exhaustive strong-typicality decoder for one hop: finds the unique pair
/// of candidate sequences jointly typical with the observed side-information
/// sequence, if there is exactly one.
pub(crate) struct PairDecoder {
    m: usize,
    n2: usize,
    nw: usize,
    /// Inclusive upper count bound per joint cell; `-1` encodes a
    /// zero-probability cell that must never occur.
    hi: Vec<i32>,
    /// Cells with a positive lower bound, checked after counting.
    lower_checks: Vec<(u32, i32)>,
}

impl PairDecoder {
    /// `reference` is the joint pmf over `(s1, s2, w)` in row-major order
    /// with `w` fastest.
    pub fn new(reference: &JointTable, m: usize, epsilon: f64) -> Self {
        let sizes = reference.sizes();
        let (n1, n2, nw) = (sizes[0], sizes[1], sizes[2]);
        let mf = m as f64;
        let _ = n1;
        let mut hi = Vec::with_capacity(n1 * n2 * nw);
        let mut lower_checks = Vec::new();
        for (cell, &p) in reference.probs().iter().enumerate() {
            if p == 0.0 {
                hi.push(-1);
                continue;
            }
            // Derive the integer count window from the very predicate
            // `|n/m - p| <= eps` used by `is_strongly_typical`, so the two
            // routes can never disagree on a boundary count.
            let mut lo_c = -1i32;
            let mut hi_c = -1i32;
            for n in 0..=(m as i32) {
                if (f64::from(n) / mf - p).abs() <= epsilon {
                    if lo_c < 0 {
                        lo_c = n;
                    }
                    hi_c = n;
                }
            }
            if lo_c < 0 {
                // No admissible count: every sequence is atypical here.
                hi.push(m as i32);
                lower_checks.push((cell as u32, m as i32 + 1));
                continue;
            }
            hi.push(hi_c);
            if lo_c > 0 {
                lower_checks.push((cell as u32, lo_c));
            }
        }
        PairDecoder { m, n2, nw, hi, lower_checks }
    }

    pub fn decode(
        &self,
        cand1: &CandidateSet,
        cand2: &CandidateSet,
        w_seq: &[u8],
    ) -> DecodeOutcome {
        debug_assert_eq!(w_seq.len(), self.m);
        let mut counts = vec![0i32; self.hi.len()];
        let mut touched: Vec<u32> = Vec::with_capacity(self.m);
        let mut found: Option<(u64, u64)> = None;

        // Partial cell index contributed by s1 and w, reused across user-2
        // candidates.
        let mut base = vec![0u32; self.m];
        'outer: for (i1, &seq1) in cand1.indices.iter().enumerate() {
            let d1 = cand1.digits_of(i1);
            for k in 0..self.m {
                base[k] = (d1[k] as u32 * self.n2 as u32 + 0) * self.nw as u32 + w_seq[k] as u32;
            }
            'pairs: for (i2, &seq2) in cand2.indices.iter().enumerate() {
                let d2 = cand2.digits_of(i2);
                let mut ok = true;
                for k in 0..self.m {
                    let cell = (base[k] + d2[k] as u32 * self.nw as u32) as usize;
                    let hi = self.hi[cell];
                    if hi < 0 {
                        ok = false;
                        break;
                    }
                    let c = counts[cell] + 1;
                    if c > hi {
                        ok = false;
                        counts[cell] = c;
                        touched.push(cell as u32);
                        break;
                    }
                    counts[cell] = c;
                    touched.push(cell as u32);
                }
                if ok {
                    for &(cell, lo) in &self.lower_checks {
                        if counts[cell as usize] < lo {
                            ok = false;
                            break;
                        }
                    }
                }
                for &cell in &touched {
                    counts[cell as usize] = 0;
                }
                touched.clear();
                if ok {
                    if found.is_some() {
                        found = None;
                        break 'outer;
                    }
                    found = Some((seq1, seq2));
                    // No early break on the first hit: a second hit anywhere
                    // must be able to demote the result.
                    continue 'pairs;
                }
            }
        }
        match found {
            Some((seq1, seq2)) => DecodeOutcome::Unique { seq1, seq2 },
            None => DecodeOutcome::NotUnique,
        }
    }
}
