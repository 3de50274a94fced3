//! Elements of the symmetric group in one-line notation.
//!
//! Storage is 0-based, but everything that faces a user (display, parsing,
//! serialization, [`Permutation::new`]) is 1-based, so `[4132]` reads the
//! usual one-line way: `σ(1) = 4, σ(2) = 1, σ(3) = 3, σ(4) = 2`.
//!
//! Products follow function composition, `(p ∘ q)(i) = p(q(i))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_len, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based one-line notation.
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(Error::InvalidPermutation(format!(
                "{one_line:?} contains 0; one-line notation is 1-based"
            )));
        }
        Self::from_zero_based(one_line.into_iter().map(|v| v - 1).collect())
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{:?} is not a bijection of 1..={n}",
                    images.iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub(crate) fn from_zero_based_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_zero_based(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "S_0 is not supported");
        Self {
            images: (0..n).collect(),
        }
    }

    /// The longest element `[n (n-1) ... 1]`.
    pub fn reversal(n: usize) -> Self {
        assert!(n >= 1, "S_0 is not supported");
        Self {
            images: (0..n).rev().collect(),
        }
    }

    /// The simple reflection `(i, i+1)`, with `1 <= i < n`.
    pub fn adjacent_transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidPermutation(format!(
                "adjacent transposition ({i},{}) does not exist in S_{n}",
                i + 1
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// Always false; S_0 cannot be constructed.
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        ensure_same_len(self.len(), other.len())?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Left action on coordinates: `(γ·x)_i = x_{γ⁻¹(i)}`, i.e. the entry
    /// at position `j` moves to position `γ(j)`.
    pub fn act_on_vector<T: Copy>(&self, x: &[T]) -> Result<Vec<T>> {
        ensure_same_len(self.len(), x.len())?;
        Ok(self.act_unchecked(x))
    }

    pub(crate) fn act_unchecked<T: Copy>(&self, x: &[T]) -> Vec<T> {
        let inv = self.inverse();
        inv.images.iter().map(|&j| x[j]).collect()
    }

    /// Number of pairs `i < j` with `σ(i) > σ(j)`; also the Coxeter length.
    pub fn inversions(&self) -> u64 {
        // Fenwick tree over values, scanning right to left.
        let n = self.len();
        let mut tree = vec![0u64; n + 1];
        let mut count = 0;
        for &v in self.images.iter().rev() {
            let mut k = v;
            while k > 0 {
                count += tree[k];
                k &= k - 1;
            }
            let mut k = v + 1;
            while k <= n {
                tree[k] += 1;
                k += k & k.wrapping_neg();
            }
        }
        count
    }

    pub fn length(&self) -> u64 {
        self.inversions()
    }

    /// Number of positions `i` with `σ(i) > σ(i+1)`.
    pub fn descents(&self) -> usize {
        self.images.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Right multiplication by `(i, i+1)`: swaps the entries at positions
    /// `i` and `i+1` (1-based).
    pub(crate) fn swap_positions(&mut self, i: usize) {
        self.images.swap(i - 1, i);
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> SymmetricGroupIter {
        assert!(n >= 1, "S_0 is not supported");
        SymmetricGroupIter {
            next: Some((0..n).collect()),
        }
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(one_line: Vec<usize>) -> Result<Self> {
        Permutation::new(one_line)
    }
}

/// Compact `[4132]` when every entry is a single digit, `[10,2,...]` otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() < 10 { "" } else { "," };
        let body: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", body.join(sep))
    }
}

/// Accepts `4132`, `[4132]`, `4,1,3,2` and `[4, 1, 3, 2]`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let bad = || Error::InvalidPermutation(format!("cannot parse {s:?}"));
        let values: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

pub struct SymmetricGroupIter {
    next: Option<Vec<usize>>,
}

impl Iterator for SymmetricGroupIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
