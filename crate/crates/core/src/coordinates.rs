//! Coxeter-complex coordinates on `ℝⁿ`.
//!
//! Every `x` splits orthogonally as `x̄·e + v_x` with `e = (1,…,1)` and
//! `v_x` in the sum-zero hyperplane `V`. The mean `x̄`, the radius `‖v_x‖`
//! and the unit direction `v_x / ‖v_x‖` recover `x`; the direction lies on
//! the sphere of `V` triangulated by the hyperplanes `x_i = x_j`, i.e. on
//! `Σ(S_n)`, and the face it lies in is the coset of permutations that sort
//! `x` weakly.
//!
//! The radius is `(Σ (x_i − x̄)²)^{1/2}` with no `1/√n` factor, even though
//! the barcode literature calls it a standard deviation.

use serde::{Deserialize, Serialize};

use crate::coxeter::{Coset, ParabolicSubgroup};
use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// Tie tolerance for exact equality.
pub const EXACT: f64 = 0.0;

const UNIT_TOL: f64 = 1e-12;

fn require_dim(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        Err(Error::OutOfRange {
            n: x.len(),
            min: 2,
            max: usize::MAX,
        })
    } else {
        Ok(())
    }
}

/// Mean and radius. Sums run over a sorted copy so the result is exactly
/// invariant under permuting `x`; a constant vector gets radius exactly 0.
pub(crate) fn mean_and_radius(x: &[f64]) -> (f64, f64) {
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.first() == sorted.last() {
        return (sorted[0], 0.0);
    }
    let mean = sorted.iter().sum::<f64>() / x.len() as f64;
    let radius = sorted
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        .sqrt();
    (mean, radius)
}

/// `p(x) = (x̄, ‖v_x‖)`.
pub fn project(x: &[f64]) -> Result<(f64, f64)> {
    require_dim(x)?;
    Ok(mean_and_radius(x))
}

/// `q(x) = (x − x̄e) / ‖x − x̄e‖`; undefined on the diagonal line.
pub fn direction(x: &[f64]) -> Result<Vec<f64>> {
    require_dim(x)?;
    direction_of(x).ok_or(Error::Degenerate)
}

pub(crate) fn direction_of(x: &[f64]) -> Option<Vec<f64>> {
    let (mean, radius) = mean_and_radius(x);
    (radius > 0.0).then(|| x.iter().map(|v| (v - mean) / radius).collect())
}

/// The coset `{ρ : x_{ρ(1)} ≤ … ≤ x_{ρ(n)}}`, the lowest-dimensional face
/// of `Σ(S_n)` containing the direction of `x`. With `tol > 0`, values are
/// first merged by single linkage at distance `tol`.
///
/// A constant `x` gives the whole group, the empty face.
pub fn face_of(x: &[f64], tol: f64) -> Coset {
    let n = x.len();
    assert!(n >= 1, "face_of needs at least one coordinate");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let gens: Vec<bool> = order
        .windows(2)
        .map(|w| {
            let (lo, hi) = (x[w[0]], x[w[1]]);
            lo == hi || hi - lo <= tol
        })
        .collect();
    let sub = ParabolicSubgroup::from_mask(n, gens);
    let rho = Permutation::from_zero_based_unchecked(order);
    let rep = sub.canonical_rep_unchecked(&rho);
    Coset::from_canonical(rep, sub)
}

/// `(x̄, ‖v_x‖, direction, face)`; direction and face are absent exactly
/// when the radius is 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeCoordinates {
    pub mean: f64,
    pub radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<Coset>,
}

impl ConeCoordinates {
    pub fn decompose(x: &[f64], tol: f64) -> Result<Self> {
        require_dim(x)?;
        let (mean, radius) = mean_and_radius(x);
        if radius == 0.0 {
            return Ok(Self {
                mean,
                radius,
                direction: None,
                face: None,
            });
        }
        Ok(Self {
            mean,
            radius,
            direction: Some(x.iter().map(|v| (v - mean) / radius).collect()),
            face: Some(face_of(x, tol)),
        })
    }

    /// `x̄·e + ‖v_x‖·direction`, after checking the coordinates are
    /// well formed for `ℝⁿ`.
    pub fn reconstruct(&self, n: usize) -> Result<Vec<f64>> {
        let bad = |m: String| Err(Error::MalformedCoordinates(m));
        if n < 2 {
            return bad(format!("dimension {n} < 2"));
        }
        if !self.mean.is_finite() || !self.radius.is_finite() || self.radius < 0.0 {
            return bad(format!("mean {} / radius {}", self.mean, self.radius));
        }
        match (&self.direction, &self.face) {
            (None, None) if self.radius == 0.0 => Ok(vec![self.mean; n]),
            (Some(dir), Some(face)) if self.radius > 0.0 => {
                if dir.len() != n || face.n() != n {
                    return bad(format!("expected length {n}"));
                }
                let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
                let sum: f64 = dir.iter().sum();
                if (norm - 1.0).abs() > UNIT_TOL || sum.abs() > UNIT_TOL {
                    return bad(format!("direction has norm {norm} and sum {sum}"));
                }
                let exact = face_of(dir, EXACT);
                if !(face.is_superset_of(&exact) || exact.is_superset_of(face)) {
                    return bad("face does not match the direction".into());
                }
                Ok(dir.iter().map(|d| self.mean + self.radius * d).collect())
            }
            _ => bad("radius, direction and face disagree on degeneracy".into()),
        }
    }
}
