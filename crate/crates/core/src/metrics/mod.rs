//! Distances on barcodes with a fixed number of bars, where every bar is
//! matched to a bar and never to the diagonal.
//!
//! ```
//! use barcode_strata::{metrics, Barcode};
//!
//! // Two barcodes whose bars all sit within 0.01 of the diagonal. A
//! // matching that may send bars to the diagonal would cost at most 0.01;
//! // here the bars must be matched to each other.
//! let a = Barcode::from_pairs(&[(0.0, 0.01), (1.0, 1.01)]).unwrap();
//! let b = Barcode::from_pairs(&[(5.0, 5.01), (9.0, 9.01)]).unwrap();
//! let d = metrics::modified_bottleneck(&a, &b).unwrap();
//! assert_eq!(d.distance, 8.0);
//! assert!(d.matching.is_identity());
//! ```

mod assignment;
mod matching;

use rayon::prelude::*;
use serde::Serialize;

use crate::barcode::{Bar, Barcode};
use crate::error::{ensure_same_len, Error, Result};
use crate::permutation::Permutation;

/// Largest `n` for the exhaustive routes over `S_n`.
pub const MAX_EXHAUSTIVE_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    /// Modified bottleneck.
    LInf,
    /// Modified Wasserstein.
    L2,
}

/// Optimal distance and an optimal `γ`, bar `i` matched to bar `γ(i)`.
/// Among optimal matchings `γ` is lexicographically smallest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingResult {
    pub distance: f64,
    pub matching: Permutation,
}

fn linf(a: &Bar, b: &Bar) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

fn sq_l2(a: &Bar, b: &Bar) -> f64 {
    let (x, y) = (a.birth - b.birth, a.death - b.death);
    x * x + y * y
}

/// Value of the objective on a given matching.
pub fn evaluate(a: &Barcode, b: &Barcode, gamma: &Permutation, norm: Norm) -> Result<f64> {
    ensure_same_len(a.len(), b.len())?;
    ensure_same_len(a.len(), gamma.len())?;
    Ok(evaluate_unchecked(
        a.bars(),
        b.bars(),
        gamma.zero_based(),
        norm,
    ))
}

fn evaluate_unchecked(a: &[Bar], b: &[Bar], gamma: &[usize], norm: Norm) -> f64 {
    let pairs = a.iter().zip(gamma).map(|(x, &j)| (x, &b[j]));
    match norm {
        Norm::LInf => pairs.map(|(x, y)| linf(x, y)).fold(0.0, f64::max),
        Norm::L2 => pairs.map(|(x, y)| sq_l2(x, y)).sum::<f64>().sqrt(),
    }
}

/// `min_γ max_i ‖(b_i, d_i) − (b'_{γ(i)}, d'_{γ(i)})‖_∞`, by binary search
/// over the `n²` pairwise costs with a perfect-matching test at each
/// threshold.
pub fn modified_bottleneck(a: &Barcode, b: &Barcode) -> Result<MatchingResult> {
    ensure_same_len(a.len(), b.len())?;
    let n = a.len();
    let cost: Vec<Vec<f64>> = a
        .bars()
        .iter()
        .map(|x| b.bars().iter().map(|y| linf(x, y)).collect())
        .collect();
    let mut candidates: Vec<f64> = cost.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let feasible = |t: f64| matching::perfect_matching(n, |i, j| cost[i][j] <= t);
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = candidates[lo];
    let m = feasible(t).expect("the largest cost admits every matching");
    let gamma = matching::lex_smallest(n, |i, j| cost[i][j] <= t, m);
    Ok(MatchingResult {
        distance: t,
        matching: Permutation::from_zero_based_unchecked(gamma),
    })
}

/// `min_γ (Σ_i ‖(b_i, d_i) − (b'_{γ(i)}, d'_{γ(i)})‖₂²)^{1/2}`, by the
/// Hungarian method on squared costs.
pub fn modified_wasserstein(a: &Barcode, b: &Barcode) -> Result<MatchingResult> {
    ensure_same_len(a.len(), b.len())?;
    let n = a.len();
    let cost: Vec<Vec<f64>> = a
        .bars()
        .iter()
        .map(|x| b.bars().iter().map(|y| sq_l2(x, y)).collect())
        .collect();
    let sol = assignment::solve(&cost);
    let scale = cost.iter().flatten().fold(1.0f64, |m, &c| m.max(c));
    let slack = 1e-12 * scale;
    // optimal matchings are exactly the perfect matchings on tight edges
    let tight = |i: usize, j: usize| cost[i][j] - sol.u[i] - sol.v[j] <= slack;
    let gamma = matching::lex_smallest(n, tight, sol.row_to_col);
    Ok(MatchingResult {
        distance: evaluate_unchecked(a.bars(), b.bars(), &gamma, Norm::L2),
        matching: Permutation::from_zero_based_unchecked(gamma),
    })
}

pub fn modified_distance(a: &Barcode, b: &Barcode, norm: Norm) -> Result<MatchingResult> {
    match norm {
        Norm::LInf => modified_bottleneck(a, b),
        Norm::L2 => modified_wasserstein(a, b),
    }
}

fn require_exhaustive(n: usize) -> Result<()> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::OutOfRange {
            n,
            min: 1,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    Ok(())
}

/// Exhaustive minimum over all `n!` matchings, first optimum in
/// lexicographic order. Refuses `n > 8`.
pub fn brute_force(a: &Barcode, b: &Barcode, norm: Norm) -> Result<MatchingResult> {
    ensure_same_len(a.len(), b.len())?;
    require_exhaustive(a.len())?;
    let mut best: Option<MatchingResult> = None;
    for gamma in Permutation::all(a.len()) {
        let d = evaluate_unchecked(a.bars(), b.bars(), gamma.zero_based(), norm);
        if best.as_ref().is_none_or(|r| d < r.distance) {
            best = Some(MatchingResult {
                distance: d,
                matching: gamma,
            });
        }
    }
    Ok(best.expect("S_n is nonempty"))
}

/// Distance between the `S_n`-orbits of `(b, d)` and `(b', d')` in `ℝ²ⁿ`:
/// the minimum over `γ` of the plain `l∞` or `l₂` distance from `(b, d)` to
/// `γ·(b', d')`. Refuses `n > 8`.
pub fn quotient_distance(a: &Barcode, b: &Barcode, norm: Norm) -> Result<f64> {
    ensure_same_len(a.len(), b.len())?;
    require_exhaustive(a.len())?;
    let x: Vec<f64> = a.births().into_iter().chain(a.deaths()).collect();
    let (births, deaths) = (b.births(), b.deaths());
    let mut best = f64::INFINITY;
    for gamma in Permutation::all(a.len()) {
        let y: Vec<f64> = gamma
            .act_on_vector(&births)?
            .into_iter()
            .chain(gamma.act_on_vector(&deaths)?)
            .collect();
        let diffs = x.iter().zip(&y).map(|(p, q)| (p - q).abs());
        let d = match norm {
            Norm::LInf => diffs.fold(0.0, f64::max),
            Norm::L2 => diffs.map(|t| t * t).sum::<f64>().sqrt(),
        };
        best = best.min(d);
    }
    Ok(best)
}

/// Symmetric matrix of pairwise distances; pairs are computed in parallel.
pub fn distance_matrix(barcodes: &[Barcode], norm: Norm) -> Result<Vec<Vec<f64>>> {
    if let Some(first) = barcodes.first() {
        for b in barcodes {
            ensure_same_len(first.len(), b.len())?;
        }
    }
    let k = barcodes.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| modified_distance(&barcodes[i], &barcodes[j], norm).map(|r| r.distance))
        .collect::<Result<_>>()?;
    let mut out = vec![vec![0.0; k]; k];
    for (&(i, j), d) in pairs.iter().zip(values) {
        out[i][j] = d;
        out[j][i] = d;
    }
    Ok(out)
}
