//! Shared oracles and instances for the integration suites.
//!
//! The oracles are written straight from raw definitions against flat
//! probability arrays, independent of the library's table machinery.

#![allow(dead_code)]

use std::collections::HashMap;

use marc_core::{DmChannel, JointSourceDist};

/// Brute-force probability oracle over a dense joint pmf.
pub struct RawJoint {
    pub sizes: Vec<usize>,
    pub probs: Vec<f64>,
}

impl RawJoint {
    pub fn new(sizes: Vec<usize>, probs: Vec<f64>) -> Self {
        assert_eq!(sizes.iter().product::<usize>(), probs.len());
        RawJoint { sizes, probs }
    }

    fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut c = vec![0usize; self.sizes.len()];
        for d in (0..self.sizes.len()).rev() {
            c[d] = idx % self.sizes[d];
            idx /= self.sizes[d];
        }
        c
    }

    fn key(coords: &[usize], vars: &[usize]) -> Vec<usize> {
        vars.iter().map(|&v| coords[v]).collect()
    }

    fn marginal_map(&self, vars: &[usize]) -> HashMap<Vec<usize>, f64> {
        let mut m = HashMap::new();
        for (idx, &p) in self.probs.iter().enumerate() {
            if p > 0.0 {
                *m.entry(Self::key(&self.coords(idx), vars)).or_insert(0.0) += p;
            }
        }
        m
    }

    /// `H(targets | cond)` by direct summation of `-p log2 p(t|c)`.
    pub fn conditional_entropy(&self, targets: &[usize], cond: &[usize]) -> f64 {
        let mut tc: Vec<usize> = targets.to_vec();
        tc.extend_from_slice(cond);
        let m_tc = self.marginal_map(&tc);
        let m_c = self.marginal_map(cond);
        let mut h = 0.0;
        for (key, &p) in &m_tc {
            if p > 0.0 {
                let pc = if cond.is_empty() {
                    1.0
                } else {
                    m_c[&key[targets.len()..].to_vec()]
                };
                h -= p * (p / pc).log2();
            }
        }
        h
    }

    /// `I(a; b | c)` by direct summation of
    /// `p(a,b,c) log2( p(a,b|c) / (p(a|c) p(b|c)) )`.
    pub fn mutual_information(&self, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
        let mut abc: Vec<usize> = a.to_vec();
        abc.extend_from_slice(b);
        abc.extend_from_slice(c);
        let mut ac: Vec<usize> = a.to_vec();
        ac.extend_from_slice(c);
        let mut bc: Vec<usize> = b.to_vec();
        bc.extend_from_slice(c);
        let m_abc = self.marginal_map(&abc);
        let m_ac = self.marginal_map(&ac);
        let m_bc = self.marginal_map(&bc);
        let m_c = self.marginal_map(c);
        let mut i = 0.0;
        for (key, &p) in &m_abc {
            if p > 0.0 {
                let ka: Vec<usize> = key[..a.len()]
                    .iter()
                    .chain(&key[a.len() + b.len()..])
                    .copied()
                    .collect();
                let kb: Vec<usize> = key[a.len()..].to_vec();
                let kc = key[a.len() + b.len()..].to_vec();
                let pc = if c.is_empty() { 1.0 } else { m_c[&kc] };
                i += p * ((p * pc) / (m_ac[&ka] * m_bc[&kb])).log2();
            }
        }
        i
    }
}

/// Adaptive-Simpson quadrature of `exp(-q)/q` on `[x, x + 120]`; the tail
/// beyond the cutoff is negligible at the tolerances used here.
pub fn e1_quadrature(x: f64) -> f64 {
    assert!(x > 0.0);
    let f = |q: f64| (-q).exp() / q;
    adaptive_simpson(&f, x, x + 120.0, 1e-14 * f(x).max(1e-300), 64)
}

fn simpson_rule(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    adaptive_step(f, a, fa, b, fb, m, fm, simpson_rule(a, b, fa, fm, fb), tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson_rule(a, m, fa, flm, fm);
    let right = simpson_rule(m, b, fm, frm, fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
}

/// Binary entropy in bits.
pub fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// DSBS sources `S1 ~ Bern(1/2)`, `S2 = S1 xor Bern(q)`, destination side
/// information `W = S2 xor Bern(qw)`, relay side information `W3 = W`.
pub fn dsbs_shared_side_info(q: f64, qw: f64) -> JointSourceDist {
    let mut pmf = vec![0.0; 2 * 2 * 2 * 2];
    for s1 in 0..2usize {
        for s2 in 0..2usize {
            for w in 0..2usize {
                let p = 0.5
                    * if s1 == s2 { 1.0 - q } else { q }
                    * if w == s2 { 1.0 - qw } else { qw };
                let w3 = w;
                pmf[((s1 * 2 + s2) * 2 + w) * 2 + w3] = p;
            }
        }
    }
    JointSourceDist::from_sizes([2, 2, 2, 2], pmf).unwrap()
}

/// DSBS sources with `W = S2 xor Bern(qw)` and perfect relay side
/// information `W3 = (S1, S2)`.
pub fn dsbs_perfect_relay(q: f64, qw: f64) -> JointSourceDist {
    let mut pmf = vec![0.0; 2 * 2 * 2 * 4];
    for s1 in 0..2usize {
        for s2 in 0..2usize {
            for w in 0..2usize {
                let p = 0.5
                    * if s1 == s2 { 1.0 - q } else { q }
                    * if w == s2 { 1.0 - qw } else { qw };
                let w3 = 2 * s1 + s2;
                pmf[((s1 * 2 + s2) * 2 + w) * 4 + w3] = p;
            }
        }
    }
    JointSourceDist::from_sizes([2, 2, 2, 4], pmf).unwrap()
}

/// DSBS sources with trivial side information at both decoders.
pub fn dsbs_no_side_info(q: f64) -> JointSourceDist {
    let mut pmf = vec![0.0; 4];
    for s1 in 0..2usize {
        for s2 in 0..2usize {
            pmf[s1 * 2 + s2] = 0.5 * if s1 == s2 { 1.0 - q } else { q };
        }
    }
    JointSourceDist::from_sizes([2, 2, 1, 1], pmf).unwrap()
}

/// Orthogonal noiseless pipes: `Y = (X1, X2, X3)`, `Y3 = (X1, X2)`.
pub fn bit_pipe_channel() -> DmChannel {
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

/// Noiseless 3-bit pipe to the destination, binary symmetric pipes of
/// crossover `p` from each transmitter to the relay.
pub fn bit_pipe_noisy_relay(p: f64) -> DmChannel {
    let mut kernel = vec![0.0; 8 * 8 * 4];
    for x1 in 0..2usize {
        for x2 in 0..2usize {
            for x3 in 0..2usize {
                let y = 4 * x1 + 2 * x2 + x3;
                for b1 in 0..2usize {
                    for b2 in 0..2usize {
                        let y3 = 2 * b1 + b2;
                        let pr = if b1 == x1 { 1.0 - p } else { p }
                            * if b2 == x2 { 1.0 - p } else { p };
                        kernel[(((x1 * 2 + x2) * 2 + x3) * 8 + y) * 4 + y3] = pr;
                    }
                }
            }
        }
    }
    DmChannel::from_sizes([2, 2, 2], [8, 4], kernel).unwrap()
}

/// Noiseless 3-bit pipe to the destination, deaf relay.
pub fn identity_channel_deaf_relay() -> DmChannel {
    let mut kernel = vec![0.0; 8 * 8];
    for x1 in 0..2usize {
        for x2 in 0..2usize {
            for x3 in 0..2usize {
                let y = 4 * x1 + 2 * x2 + x3;
                kernel[((x1 * 2 + x2) * 2 + x3) * 8 + y] = 1.0;
            }
        }
    }
    DmChannel::from_sizes([2, 2, 2], [8, 1], kernel).unwrap()
}
