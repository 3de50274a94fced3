//! Standard parabolic subgroups of `S_n`, their left cosets, and the Coxeter
//! complex `Σ(S_n)` whose faces are those cosets.
//!
//! A parabolic subgroup is named by a set of adjacent transpositions; index
//! `i` stands for `(i, i+1)`. Its maximal runs of consecutive indices cut
//! `{1..n}` into blocks of consecutive positions, and the subgroup is the
//! product of the symmetric groups on those blocks.

use std::collections::{HashSet, VecDeque};
use std::ops::Range;

use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_len, Error, Result};
use crate::permutation::{factorial, Permutation};

/// Largest `n` for which [`CoxeterComplex::enumerate`] and
/// [`ChamberGraph::build`] run.
pub const MAX_COMPLEX_N: usize = 6;

/// Default cap on the number of elements listed by
/// [`ParabolicSubgroup::elements`] (`8!`).
pub const DEFAULT_SUBGROUP_CAP: u128 = 40_320;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSubgroup {
    n: usize,
    // gens[i - 1] is true iff (i, i+1) is a generator.
    gens: Vec<bool>,
}

impl ParabolicSubgroup {
    pub fn new(n: usize, generators: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParabolic("S_0 is not supported".into()));
        }
        let mut gens = vec![false; n - 1];
        for i in generators {
            if i == 0 || i >= n {
                return Err(Error::InvalidParabolic(format!(
                    "generator {i} is not an adjacent transposition of S_{n}"
                )));
            }
            gens[i - 1] = true;
        }
        Ok(Self { n, gens })
    }

    pub(crate) fn from_mask(n: usize, gens: Vec<bool>) -> Self {
        debug_assert_eq!(gens.len(), n.saturating_sub(1));
        Self { n, gens }
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_mask(n, vec![false; n.saturating_sub(1)])
    }

    pub fn full(n: usize) -> Self {
        Self::from_mask(n, vec![true; n.saturating_sub(1)])
    }

    /// Every parabolic subgroup of `S_n`, one per subset of generators.
    pub fn all(n: usize) -> Vec<Self> {
        let r = n.saturating_sub(1);
        assert!(r < 32, "2^{r} parabolic subgroups is too many to list");
        (0u32..1 << r)
            .map(|mask| Self::from_mask(n, (0..r).map(|i| mask >> i & 1 == 1).collect()))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Generator indices in increasing order.
    pub fn generators(&self) -> Vec<usize> {
        (1..self.n).filter(|&i| self.gens[i - 1]).collect()
    }

    pub fn has_generator(&self, i: usize) -> bool {
        i >= 1 && i < self.n && self.gens[i - 1]
    }

    pub fn rank(&self) -> usize {
        self.gens.iter().filter(|&&g| g).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    /// Blocks of 0-based positions permuted by the subgroup, in order.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 0..self.n {
            if i + 1 == self.n || !self.gens[i] {
                blocks.push(start..i + 1);
                start = i + 1;
            }
        }
        blocks
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.blocks()
            .iter()
            .try_fold(1u128, |acc, b| acc.checked_mul(factorial(b.len())))
            .unwrap_or(u128::MAX)
    }

    /// `self ⊆ other`, which for standard parabolics is inclusion of
    /// generating sets.
    pub fn is_subgroup_of(&self, other: &ParabolicSubgroup) -> bool {
        self.n == other.n && self.gens.iter().zip(&other.gens).all(|(&a, &b)| !a || b)
    }

    /// Whether `γ` permutes every block into itself.
    pub fn contains(&self, gamma: &Permutation) -> bool {
        if gamma.len() != self.n {
            return false;
        }
        let images = gamma.zero_based();
        self.blocks()
            .iter()
            .all(|b| b.clone().all(|i| b.contains(&images[i])))
    }

    /// Closure of the generators under composition.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let size = self.order();
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        let generators: Vec<usize> = self.generators();
        let id = Permutation::identity(self.n);
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(g) = queue.pop_front() {
            for &i in &generators {
                let mut h = g.clone();
                h.swap_positions(i);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
            out.push(g);
        }
        out.sort();
        Ok(out)
    }

    /// The block-increasing member of `τP`; it is also the unique member of
    /// minimal length.
    pub fn canonical_rep(&self, tau: &Permutation) -> Result<Permutation> {
        ensure_same_len(self.n, tau.len())?;
        Ok(self.canonical_rep_unchecked(tau))
    }

    pub(crate) fn canonical_rep_unchecked(&self, tau: &Permutation) -> Permutation {
        let mut images = tau.zero_based().to_vec();
        for b in self.blocks() {
            images[b].sort_unstable();
        }
        Permutation::from_zero_based_unchecked(images)
    }

    pub(crate) fn is_block_increasing(&self, tau: &Permutation) -> bool {
        let images = tau.zero_based();
        (0..self.n.saturating_sub(1)).all(|i| !self.gens[i] || images[i] < images[i + 1])
    }
}

impl Serialize for ParabolicSubgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators().serialize(s)
    }
}

/// A left coset `τP`, stored by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    rep: Permutation,
    subgroup: ParabolicSubgroup,
}

impl Coset {
    pub fn new(tau: &Permutation, subgroup: ParabolicSubgroup) -> Result<Self> {
        let rep = subgroup.canonical_rep(tau)?;
        Ok(Self { rep, subgroup })
    }

    pub(crate) fn from_canonical(rep: Permutation, subgroup: ParabolicSubgroup) -> Self {
        debug_assert!(subgroup.is_block_increasing(&rep));
        Self { rep, subgroup }
    }

    /// The chamber `{σ}`.
    pub fn chamber(sigma: Permutation) -> Self {
        let subgroup = ParabolicSubgroup::trivial(sigma.len());
        Self {
            rep: sigma,
            subgroup,
        }
    }

    /// `S_n` itself, the (−1)-dimensional face.
    pub fn whole_group(n: usize) -> Self {
        Self {
            rep: Permutation::identity(n),
            subgroup: ParabolicSubgroup::full(n),
        }
    }

    pub fn rep(&self) -> &Permutation {
        &self.rep
    }

    pub fn subgroup(&self) -> &ParabolicSubgroup {
        &self.subgroup
    }

    pub fn n(&self) -> usize {
        self.subgroup.n
    }

    /// `|S ∖ T| − 1`.
    pub fn dim(&self) -> isize {
        (self.n() as isize - 1) - self.subgroup.rank() as isize - 1
    }

    pub fn contains(&self, rho: &Permutation) -> bool {
        rho.len() == self.n() && self.subgroup.canonical_rep_unchecked(rho) == self.rep
    }

    /// `self ⊇ other` as sets of permutations.
    pub fn is_superset_of(&self, other: &Coset) -> bool {
        other.subgroup.is_subgroup_of(&self.subgroup) && self.contains(&other.rep)
    }

    /// `γ·τP = (γτ)P`.
    pub fn act_left(&self, gamma: &Permutation) -> Result<Coset> {
        Coset::new(&gamma.compose(&self.rep)?, self.subgroup.clone())
    }

    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let mut out: Vec<Permutation> = self
            .subgroup
            .elements(cap)?
            .iter()
            .map(|g| self.rep.compose_unchecked(g))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Serialized as `{rep, generators}`.
impl Serialize for Coset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Coset", 2)?;
        st.serialize_field("rep", &self.rep)?;
        st.serialize_field("generators", &self.subgroup)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Coset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rep: Permutation,
            generators: Vec<usize>,
        }
        let raw = Raw::deserialize(d)?;
        let sub = ParabolicSubgroup::new(raw.rep.len(), raw.generators)
            .map_err(serde::de::Error::custom)?;
        Coset::new(&raw.rep, sub).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub coset: Coset,
    pub dim: isize,
}

/// Serialized flat as `{rep, generators, dim}`.
impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Face", 3)?;
        st.serialize_field("rep", &self.coset.rep)?;
        st.serialize_field("generators", &self.coset.subgroup)?;
        st.serialize_field("dim", &self.dim)?;
        st.end()
    }
}

impl Face {
    pub fn new(coset: Coset) -> Self {
        let dim = coset.dim();
        Self { coset, dim }
    }
}

fn check_complex_n(n: usize) -> Result<()> {
    if (2..=MAX_COMPLEX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            n,
            min: 2,
            max: MAX_COMPLEX_N,
        })
    }
}

/// The full face poset of `Σ(S_n)`, including the empty face `S_n`.
#[derive(Debug, Clone)]
pub struct CoxeterComplex {
    n: usize,
    faces: Vec<Face>,
}

impl CoxeterComplex {
    pub fn enumerate(n: usize) -> Result<Self> {
        check_complex_n(n)?;
        let group: Vec<Permutation> = Permutation::all(n).collect();
        let mut faces: Vec<Face> = ParabolicSubgroup::all(n)
            .into_iter()
            .flat_map(|p| {
                group
                    .iter()
                    .filter(|tau| p.is_block_increasing(tau))
                    .map(|tau| Face::new(Coset::from_canonical(tau.clone(), p.clone())))
                    .collect::<Vec<_>>()
            })
            .collect();
        faces.sort_by(|a, b| {
            (a.dim, a.coset.subgroup.generators(), &a.coset.rep).cmp(&(
                b.dim,
                b.coset.subgroup.generators(),
                &b.coset.rep,
            ))
        });
        Ok(Self { n, faces })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// `faces[i] ≤ faces[j]`, i.e. `faces[i] ⊇ faces[j]` as cosets.
    pub fn face_leq(&self, i: usize, j: usize) -> bool {
        self.faces[i].coset.is_superset_of(&self.faces[j].coset)
    }

    /// Pairs `(i, j)` with `faces[i] < faces[j]` and dimensions differing by one.
    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            for (j, g) in self.faces.iter().enumerate() {
                if g.dim == f.dim + 1 && self.face_leq(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Face counts indexed by `dim + 1`, from the empty face up to chambers.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for f in &self.faces {
            counts[(f.dim + 1) as usize] += 1;
        }
        counts
    }

    /// Alternating sum over the non-empty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .skip(1)
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// Codimension-one faces of the chamber `{σ}`: the cosets `σ⟨(i,i+1)⟩`.
pub fn chamber_facets(sigma: &Permutation) -> Vec<Coset> {
    let n = sigma.len();
    (1..n)
        .map(|i| Coset::new(sigma, ParabolicSubgroup::new(n, [i]).unwrap()).unwrap())
        .collect()
}

/// Chambers of `Σ(S_n)` joined when they differ by right multiplication by a
/// simple reflection. Edge weights record that reflection.
#[derive(Debug, Clone)]
pub struct ChamberGraph {
    graph: UnGraph<Permutation, usize>,
}

impl ChamberGraph {
    pub fn build(n: usize) -> Result<Self> {
        check_complex_n(n)?;
        let mut graph = UnGraph::new_undirected();
        let nodes: Vec<(Permutation, NodeIndex)> = Permutation::all(n)
            .map(|p| {
                let idx = graph.add_node(p.clone());
                (p, idx)
            })
            .collect();
        let lookup: std::collections::HashMap<&Permutation, NodeIndex> =
            nodes.iter().map(|(p, i)| (p, *i)).collect();
        for (p, a) in &nodes {
            for i in 1..n {
                let mut q = p.clone();
                q.swap_positions(i);
                let b = lookup[&q];
                if a.index() < b.index() {
                    graph.add_edge(*a, b, i);
                }
            }
        }
        Ok(Self { graph })
    }

    pub fn graph(&self) -> &UnGraph<Permutation, usize> {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.graph
            .node_indices()
            .map(|v| self.graph.neighbors(v).count())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        petgraph::algo::connected_components(&self.graph) == 1
    }

    pub fn adjacent(&self, a: &Permutation, b: &Permutation) -> bool {
        let find = |p: &Permutation| self.graph.node_indices().find(|&i| &self.graph[i] == p);
        match (find(a), find(b)) {
            (Some(x), Some(y)) => self.graph.contains_edge(x, y),
            _ => false,
        }
    }
}
