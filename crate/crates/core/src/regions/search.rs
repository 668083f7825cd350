use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::achievable::Scenario;
use super::necessary::{mabrc_necessary_region, marc_necessary_region};
use crate::prob::{DmChannel, JointSourceDist};
use crate::{Error, Result};

/// Largest per-input alphabet accepted by the search.
const MAX_SEARCH_ALPHABET: usize = 8;

/// Cap on the number of coarse-grid points evaluated before local search.
const GRID_POINT_CAP: usize = 20_000;

/// Outcome of [`minimize_necessary_kappa`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConverseSearchResult {
    /// Minimizing joint input pmf over `(x1, x2, x3)`, row-major.
    pub best_input: Vec<f64>,
    /// Smallest necessary kappa bound found (an upper estimate of the true
    /// binding necessary bound).
    pub best_kappa: f64,
    /// Best value reached by each restart, in restart order.
    pub restart_bests: Vec<f64>,
    /// Best value over the coarse grid pass, when one ran.
    pub grid_best: Option<f64>,
    pub evaluations: u64,
    pub seed: u64,
}

fn evaluate(
    sources: &JointSourceDist,
    channel: &DmChannel,
    scenario: Scenario,
    input: &[f64],
) -> Result<f64> {
    let report = match scenario {
        Scenario::Marc => marc_necessary_region(sources, channel, input)?,
        Scenario::Mabrc => mabrc_necessary_region(sources, channel, input)?,
    };
    Ok(report.kappa_star)
}

/// Coordinate-pair descent on the probability simplex: repeatedly moves mass
/// between cells with a geometrically shrinking step.
fn local_descent(
    sources: &JointSourceDist,
    channel: &DmChannel,
    scenario: Scenario,
    p: &mut Vec<f64>,
    evals: &mut u64,
) -> Result<f64> {
    let mut best = evaluate(sources, channel, scenario, p)?;
    *evals += 1;
    let dim = p.len();
    let mut step = 0.25f64;
    while step > 1e-9 {
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..dim {
                for j in 0..dim {
                    if i == j || p[i] <= 0.0 {
                        continue;
                    }
                    let delta = step.min(p[i]);
                    p[i] = (p[i] - delta).max(0.0);
                    p[j] += delta;
                    let v = evaluate(sources, channel, scenario, p)?;
                    *evals += 1;
                    if v < best - 1e-15 {
                        best = v;
                        improved = true;
                    } else {
                        p[j] -= delta;
                        p[i] += delta;
                    }
                }
            }
        }
        step *= 0.5;
    }
    Ok(best)
}

/// Enumerates all compositions of `total` into `dim` nonnegative parts,
/// invoking `f` with each normalized pmf exactly once.
pub(crate) fn for_each_grid_point<F: FnMut(&[f64]) -> Result<()>>(
    dim: usize,
    total: usize,
    f: &mut F,
) -> Result<()> {
    if dim == 1 {
        return f(&[1.0]);
    }
    let mut counts = vec![0usize; dim];
    counts[0] = total;
    let mut point = vec![0f64; dim];
    loop {
        for (x, &c) in point.iter_mut().zip(counts.iter()) {
            *x = c as f64 / total as f64;
        }
        f(&point)?;
        if counts[dim - 1] == total {
            return Ok(());
        }
        let i = counts[..dim - 1]
            .iter()
            .position(|&c| c > 0)
            .expect("some interior count is positive");
        let head = counts[i];
        counts[i] = 0;
        counts[i + 1] += 1;
        counts[0] = head - 1;
    }
}

fn grid_point_count(dim: usize, resolution: usize) -> usize {
    // C(resolution + dim - 1, dim - 1), saturating.
    let mut acc: u128 = 1;
    for k in 1..dim {
        acc = acc.saturating_mul((resolution + k) as u128) / k as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Minimizes the necessary kappa bound over joint input pmfs `p(x1,x2,x3)`
/// by a coarse grid pass followed by multi-start projected coordinate
/// descent (`budget` restarts, seeded deterministically from `seed`).
///
/// Restarts run in parallel; ties are broken by restart index, so the result
/// is reproducible for a fixed seed regardless of thread count. The returned
/// value never exceeds the bound at any input the search visited.
pub fn minimize_necessary_kappa(
    sources: &JointSourceDist,
    channel: &DmChannel,
    scenario: Scenario,
    budget: usize,
    seed: u64,
) -> Result<ConverseSearchResult> {
    if budget == 0 {
        return Err(Error::InvalidParameter("search budget must be at least 1".into()));
    }
    let sizes = channel.input_sizes();
    for (i, &s) in sizes.iter().enumerate() {
        if s > MAX_SEARCH_ALPHABET {
            return Err(Error::InvalidParameter(format!(
                "input alphabet x{} has {s} symbols; search supports at most {MAX_SEARCH_ALPHABET}",
                i + 1
            )));
        }
    }
    let dim: usize = sizes.iter().product();

    // Coarse grid pass at the finest resolution within the point cap.
    let mut grid_best: Option<(f64, Vec<f64>)> = None;
    let mut evals: u64 = 0;
    let mut resolution = 8usize;
    while resolution > 1 && grid_point_count(dim, resolution) > GRID_POINT_CAP {
        resolution /= 2;
    }
    if grid_point_count(dim, resolution) <= GRID_POINT_CAP {
        let mut best = f64::INFINITY;
        let mut best_p = vec![0.0; dim];
        for_each_grid_point(dim, resolution, &mut |p: &[f64]| {
            let v = evaluate(sources, channel, scenario, p)?;
            evals += 1;
            if v < best {
                best = v;
                best_p.copy_from_slice(p);
            }
            Ok(())
        })?;
        grid_best = Some((best, best_p));
    }

    // Restart 0 polishes the grid optimum; the rest start from random
    // Dirichlet(1) draws on per-restart RNG streams.
    let restarts: Vec<Result<(f64, Vec<f64>, u64)>> = (0..budget)
        .into_par_iter()
        .map(|r| {
            let mut local_evals = 0u64;
            let mut p = if r == 0 {
                if let Some((_, ref gp)) = grid_best {
                    gp.clone()
                } else {
                    vec![1.0 / dim as f64; dim]
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(r as u64);
                let mut draw: Vec<f64> = (0..dim)
                    .map(|_| -(1.0 - rng.gen::<f64>()).ln())
                    .collect();
                let total: f64 = draw.iter().sum();
                draw.iter_mut().for_each(|x| *x /= total);
                draw
            };
            let best = local_descent(sources, channel, scenario, &mut p, &mut local_evals)?;
            Ok((best, p, local_evals))
        })
        .collect();

    let mut restart_bests = Vec::with_capacity(budget);
    let mut best_kappa = f64::INFINITY;
    let mut best_input = vec![1.0 / dim as f64; dim];
    for r in restarts {
        let (v, p, e) = r?;
        evals += e;
        restart_bests.push(v);
        if v < best_kappa {
            best_kappa = v;
            best_input = p;
        }
    }
    if let Some((gv, ref gp)) = grid_best {
        if gv < best_kappa {
            best_kappa = gv;
            best_input = gp.clone();
        }
    }

    Ok(ConverseSearchResult {
        best_input,
        best_kappa,
        restart_bests,
        grid_best: grid_best.map(|(v, _)| v),
        evaluations: evals,
        seed,
    })
}
