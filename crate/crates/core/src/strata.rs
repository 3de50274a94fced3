//! Marked double cosets `(P₁, P₁σP₂, P₂)`, the poset they form, and the
//! equivalent description by `S_n`-orbits of coset pairs.
//!
//! The stratum of a barcode is the marked double coset built from the
//! parabolics that fix its births and deaths and the permutations that sort
//! them. Strata are closed and handled intensionally: `q_leq(s, t)` says the
//! closed stratum `s` lies inside the closed stratum `t`.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::barcode::Barcode;
use crate::coxeter::{Coset, ParabolicSubgroup};
use crate::error::{ensure_same_len, Error, Result};
use crate::permutation::Permutation;

/// Default cap on `|P₁|·|P₂|` for listing the elements of a double coset.
pub const DEFAULT_DOUBLE_COSET_CAP: u128 = 1_000_000;

/// `(P₁, P₁σP₂, P₂)`, stored with the unique minimal-length element of the
/// double coset as its representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedDoubleCoset {
    left: ParabolicSubgroup,
    rep: Permutation,
    right: ParabolicSubgroup,
}

/// Minimal element of `left·σ·right`.
///
/// Alternately removes every right descent inside the blocks of `right`
/// (sorting values within position blocks) and every left descent inside the
/// blocks of `left` (making each block of consecutive values appear in
/// increasing positional order). Each pass is a run of length-reducing
/// multiplications by simple reflections; at the fixed point there is no
/// descent left on either side, which characterises the minimal element.
pub fn minimal_double_coset_rep(
    left: &ParabolicSubgroup,
    sigma: &Permutation,
    right: &ParabolicSubgroup,
) -> Result<Permutation> {
    ensure_same_len(left.n(), sigma.len())?;
    ensure_same_len(right.n(), sigma.len())?;
    let right_blocks = right.blocks();
    let left_blocks = left.blocks();
    let mut images = sigma.zero_based().to_vec();
    let mut positions = vec![0; images.len()];
    loop {
        let mut changed = false;
        for b in &right_blocks {
            let block = &mut images[b.clone()];
            if block.windows(2).any(|w| w[0] > w[1]) {
                block.sort_unstable();
                changed = true;
            }
        }
        for (pos, &v) in images.iter().enumerate() {
            positions[v] = pos;
        }
        for b in &left_blocks {
            let block = &mut positions[b.clone()];
            if block.windows(2).any(|w| w[0] > w[1]) {
                block.sort_unstable();
                changed = true;
                for (offset, &pos) in block.iter().enumerate() {
                    images[pos] = b.start + offset;
                }
            }
        }
        if !changed {
            return Ok(Permutation::from_zero_based_unchecked(images));
        }
    }
}

impl MarkedDoubleCoset {
    pub fn new(
        left: ParabolicSubgroup,
        sigma: &Permutation,
        right: ParabolicSubgroup,
    ) -> Result<Self> {
        let rep = minimal_double_coset_rep(&left, sigma, &right)?;
        Ok(Self { left, rep, right })
    }

    /// `(S_n, S_n, S_n)`, below every other element.
    pub fn bottom(n: usize) -> Self {
        Self {
            left: ParabolicSubgroup::full(n),
            rep: Permutation::identity(n),
            right: ParabolicSubgroup::full(n),
        }
    }

    /// The top-dimensional stratum of strict barcodes with permutation `σ`.
    pub fn strict(sigma: Permutation) -> Self {
        let n = sigma.len();
        Self {
            left: ParabolicSubgroup::trivial(n),
            rep: sigma,
            right: ParabolicSubgroup::trivial(n),
        }
    }

    pub fn n(&self) -> usize {
        self.rep.len()
    }

    pub fn left(&self) -> &ParabolicSubgroup {
        &self.left
    }

    pub fn rep(&self) -> &Permutation {
        &self.rep
    }

    pub fn right(&self) -> &ParabolicSubgroup {
        &self.right
    }

    /// Dimensions of the two Coxeter-complex faces, `(n−2−|T₁|, n−2−|T₂|)`.
    pub fn dim_pair(&self) -> (isize, isize) {
        let top = self.n() as isize - 2;
        (
            top - self.left.rank() as isize,
            top - self.right.rank() as isize,
        )
    }

    pub fn is_singleton(&self) -> bool {
        self.left.is_trivial() && self.right.is_trivial()
    }

    /// Membership in `P₁·rep·P₂`, decided by canonicalising `σ'`.
    pub fn contains(&self, sigma: &Permutation) -> bool {
        sigma.len() == self.n()
            && minimal_double_coset_rep(&self.left, sigma, &self.right).unwrap() == self.rep
    }

    /// `{γ₁·rep·γ₂}` without repeats, in lexicographic order. Refused when
    /// `|P₁|·|P₂|` exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let size = self.left.order().saturating_mul(self.right.order());
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        let lefts = self.left.elements(cap)?;
        let rights = self.right.elements(cap)?;
        let mut out = BTreeSet::new();
        for a in &lefts {
            let a_rep = a.compose_unchecked(&self.rep);
            for b in &rights {
                out.insert(a_rep.compose_unchecked(b));
            }
        }
        Ok(out.into_iter().collect())
    }
}

impl Serialize for MarkedDoubleCoset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MarkedDoubleCoset", 4)?;
        st.serialize_field("left_generators", &self.left.generators())?;
        st.serialize_field("rep", &self.rep)?;
        st.serialize_field("right_generators", &self.right.generators())?;
        st.serialize_field("dim_pair", &self.dim_pair())?;
        st.end()
    }
}

/// `a ≤ b` in the marked double coset poset: `P₁ ⊇ P₁'`, `P₂ ⊇ P₂'` and
/// `P₁σP₂ ⊇ P₁'σ'P₂'`.
pub fn q_leq(a: &MarkedDoubleCoset, b: &MarkedDoubleCoset) -> bool {
    b.left.is_subgroup_of(&a.left) && b.right.is_subgroup_of(&a.right) && a.contains(&b.rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Less,
    Greater,
    Incomparable,
}

impl Comparison {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::Equal => "equal",
            Comparison::Less => "leq",
            Comparison::Greater => "geq",
            Comparison::Incomparable => "incomparable",
        }
    }
}

pub fn compare(a: &MarkedDoubleCoset, b: &MarkedDoubleCoset) -> Comparison {
    match (q_leq(a, b), q_leq(b, a)) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => Comparison::Incomparable,
    }
}

/// Every element of the marked double coset poset for `S_n`.
pub fn enumerate_q(n: usize) -> Vec<MarkedDoubleCoset> {
    let group: Vec<Permutation> = Permutation::all(n).collect();
    let parabolics = ParabolicSubgroup::all(n);
    let mut out = BTreeSet::new();
    for left in &parabolics {
        for right in &parabolics {
            for sigma in &group {
                out.insert(MarkedDoubleCoset::new(left.clone(), sigma, right.clone()).unwrap());
            }
        }
    }
    out.into_iter().collect()
}

/// The orbit `S_n·(τ₁P₁, τ₂P₂)` of a pair of cosets under the diagonal left
/// action.
///
/// Stored in normal form: translated so the first coset is `P₁` itself, and
/// then, among the translates by `P₁` (which fix `P₁`), the one whose second
/// coset contains the minimal element of `P₁τ₁⁻¹τ₂P₂`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitPair {
    left: Coset,
    right: Coset,
}

impl OrbitPair {
    pub fn new(left: Coset, right: Coset) -> Result<Self> {
        ensure_same_len(left.n(), right.n())?;
        let shift = left.rep().inverse();
        let sigma = shift.compose_unchecked(right.rep());
        let p1 = left.subgroup().clone();
        let p2 = right.subgroup().clone();
        let min = minimal_double_coset_rep(&p1, &sigma, &p2)?;
        Ok(Self {
            left: Coset::new(&Permutation::identity(left.n()), p1)?,
            right: Coset::new(&min, p2)?,
        })
    }

    pub fn left(&self) -> &Coset {
        &self.left
    }

    pub fn right(&self) -> &Coset {
        &self.right
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    /// Order on orbits, by direct search: some `γ` with `τ₁P₁ ⊇ γτ₁'P₁'`
    /// and `τ₂P₂ ⊇ γτ₂'P₂'`. Only `γ ∈ τ₁P₁τ₁'⁻¹` can satisfy the first
    /// condition, so only those are tried.
    pub fn leq_by_search(&self, other: &OrbitPair) -> bool {
        if self.n() != other.n()
            || !other.left.subgroup().is_subgroup_of(self.left.subgroup())
            || !other.right.subgroup().is_subgroup_of(self.right.subgroup())
        {
            return false;
        }
        let shift = other.left.rep().inverse();
        let candidates = self.left.elements(u128::MAX).expect("uncapped");
        candidates.iter().any(|rho| {
            let gamma = rho.compose_unchecked(&shift);
            let l = other.left.act_left(&gamma).unwrap();
            let r = other.right.act_left(&gamma).unwrap();
            self.left.is_superset_of(&l) && self.right.is_superset_of(&r)
        })
    }
}

/// `S_n·(τ₁P₁, τ₂P₂) ↦ (P₁, P₁τ₁⁻¹τ₂P₂, P₂)`.
pub fn phi(p: &OrbitPair) -> MarkedDoubleCoset {
    let sigma = p.left.rep().inverse().compose_unchecked(p.right.rep());
    MarkedDoubleCoset::new(
        p.left.subgroup().clone(),
        &sigma,
        p.right.subgroup().clone(),
    )
    .unwrap()
}

/// `(P₁, P₁σP₂, P₂) ↦ S_n·(P₁, σP₂)`.
pub fn psi(d: &MarkedDoubleCoset) -> OrbitPair {
    let left = Coset::new(&Permutation::identity(d.n()), d.left.clone()).unwrap();
    let right = Coset::new(&d.rep, d.right.clone()).unwrap();
    OrbitPair::new(left, right).unwrap()
}

/// Every orbit of coset pairs for `S_n`, built from all pairs of faces of
/// `Σ(S_n)` without going through double cosets.
pub fn enumerate_orbit_pairs(n: usize) -> Vec<OrbitPair> {
    let group: Vec<Permutation> = Permutation::all(n).collect();
    let faces: BTreeSet<Coset> = ParabolicSubgroup::all(n)
        .into_iter()
        .flat_map(|p| {
            group
                .iter()
                .map(|t| Coset::new(t, p.clone()).unwrap())
                .collect::<Vec<_>>()
        })
        .collect();
    // Fixing the first coset's representative to the identity loses nothing:
    // every orbit meets such pairs.
    let mut out = BTreeSet::new();
    for a in faces.iter().filter(|c| c.rep().is_identity()) {
        for b in &faces {
            out.insert(OrbitPair::new(a.clone(), b.clone()).unwrap());
        }
    }
    out.into_iter().collect()
}

/// The lowest-dimensional stratum containing `B`: `(P_b, D_B, P_d)`.
pub fn stratum_of(barcode: &Barcode, tol: f64) -> MarkedDoubleCoset {
    barcode.double_coset(tol)
}

/// Whether the closed stratum `s` contains `B`, i.e. `B`'s own stratum lies
/// below `s`.
pub fn contains(s: &MarkedDoubleCoset, barcode: &Barcode, tol: f64) -> bool {
    s.n() == barcode.len() && q_leq(&stratum_of(barcode, tol), s)
}

/// Same predicate, decided geometrically: some relabelling `γ` puts the
/// birth vector in the closed cone over `γτ₁P₁` and the death vector in the
/// closed cone over `γτ₂P₂`, where `S_n·(τ₁P₁, τ₂P₂) = ψ(s)`.
///
/// A vector lies in the closed cone over the face `F` exactly when its own
/// sorting coset contains `F`.
pub fn contains_by_orbit(s: &MarkedDoubleCoset, barcode: &Barcode, tol: f64) -> bool {
    if s.n() != barcode.len() {
        return false;
    }
    let pair = psi(s);
    let births = barcode.birth_face(tol);
    let deaths = barcode.death_face(tol);
    if !pair.left().subgroup().is_subgroup_of(births.subgroup())
        || !pair.right().subgroup().is_subgroup_of(deaths.subgroup())
    {
        return false;
    }
    // γ·τ₁ must land in the birth coset, so γ ranges over births·τ₁⁻¹.
    let tau1_inv = pair.left().rep().inverse();
    let Ok(candidates) = births.elements(u128::MAX) else {
        return false;
    };
    candidates.iter().any(|rho| {
        let gamma = rho.compose_unchecked(&tau1_inv);
        deaths.contains(&gamma.compose_unchecked(pair.right().rep()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordinates::EXACT;
    use crate::coxeter::DEFAULT_SUBGROUP_CAP;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn para(n: usize, gens: &[usize]) -> ParabolicSubgroup {
        ParabolicSubgroup::new(n, gens.iter().copied()).unwrap()
    }

    fn example_dc() -> MarkedDoubleCoset {
        MarkedDoubleCoset::new(para(4, &[3]), &p("2341"), para(4, &[1])).unwrap()
    }

    fn example_barcode() -> Barcode {
        Barcode::from_pairs(&[(1.0, 10.0), (2.0, 5.0), (4.0, 5.0), (4.0, 7.0)]).unwrap()
    }

    fn brute_force_min(
        left: &ParabolicSubgroup,
        sigma: &Permutation,
        right: &ParabolicSubgroup,
    ) -> Permutation {
        let lefts = left.elements(DEFAULT_SUBGROUP_CAP).unwrap();
        let rights = right.elements(DEFAULT_SUBGROUP_CAP).unwrap();
        lefts
            .iter()
            .flat_map(|a| {
                rights
                    .iter()
                    .map(move |b| a.compose(sigma).unwrap().compose(b).unwrap())
            })
            .min_by(|x, y| (x.length(), x).cmp(&(y.length(), y)))
            .unwrap()
    }

    #[test]
    fn double_coset_of_the_worked_example() {
        let d = example_dc();
        assert_eq!(d.rep(), &p("2341"));
        assert_eq!(
            d.elements(DEFAULT_DOUBLE_COSET_CAP).unwrap(),
            vec![p("2341"), p("2431"), p("3241"), p("4231")]
        );
        assert_eq!(d.dim_pair(), (1, 1));
    }

    #[test]
    fn membership_examples() {
        let d = example_dc();
        assert!(d.contains(&p("3241")));
        assert!(d.contains(&p("4231")));
        assert!(!d.contains(&p("1234")));
        let s = MarkedDoubleCoset::strict(p("4132"));
        for q in Permutation::all(4) {
            assert_eq!(s.contains(&q), q == p("4132"));
        }
    }

    #[test]
    fn minimal_rep_matches_brute_force_in_s4() {
        for left in ParabolicSubgroup::all(4) {
            for right in ParabolicSubgroup::all(4) {
                for sigma in Permutation::all(4) {
                    let got = minimal_double_coset_rep(&left, &sigma, &right).unwrap();
                    assert_eq!(got, brute_force_min(&left, &sigma, &right));
                }
            }
        }
    }

    #[test]
    fn elements_cap() {
        let d = MarkedDoubleCoset::bottom(8);
        assert!(matches!(
            d.elements(DEFAULT_DOUBLE_COSET_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn q_leq_examples() {
        let d = example_dc();
        assert!(q_leq(&d, &d));
        assert!(q_leq(&MarkedDoubleCoset::bottom(4), &d));
        assert!(q_leq(&d, &MarkedDoubleCoset::strict(p("3241"))));
        assert!(!q_leq(&d, &MarkedDoubleCoset::strict(p("1234"))));
        assert!(!q_leq(&MarkedDoubleCoset::strict(p("3241")), &d));
        assert_eq!(
            compare(&d, &MarkedDoubleCoset::strict(p("3241"))),
            Comparison::Less
        );
    }

    #[test]
    fn marked_cosets_differ_when_parabolics_differ() {
        // In S_2, P σ P = S_2 for P = S_2; (S_2, S_2, S_2) differs from (S_2, S_2, 1).
        let full = ParabolicSubgroup::full(2);
        let triv = ParabolicSubgroup::trivial(2);
        let a = MarkedDoubleCoset::new(full.clone(), &p("12"), full.clone()).unwrap();
        let b = MarkedDoubleCoset::new(full.clone(), &p("12"), triv).unwrap();
        assert_eq!(a.elements(10).unwrap(), b.elements(10).unwrap());
        assert_ne!(a, b);
    }

    #[test]
    fn q_is_a_partial_order() {
        for n in 1..=4 {
            let q = enumerate_q(n);
            for a in &q {
                assert!(q_leq(a, a));
                for b in &q {
                    if a != b && q_leq(a, b) {
                        assert!(!q_leq(b, a));
                    }
                    if n <= 3 {
                        for c in &q {
                            if q_leq(a, b) && q_leq(b, c) {
                                assert!(q_leq(a, c));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi_psi_round_trip_in_s3() {
        let q = enumerate_q(3);
        let pairs = enumerate_orbit_pairs(3);
        assert_eq!(q.len(), pairs.len());
        for d in &q {
            assert_eq!(&phi(&psi(d)), d);
        }
        for pr in &pairs {
            assert_eq!(&psi(&phi(pr)), pr);
        }
        for a in &q {
            for b in &q {
                assert_eq!(q_leq(a, b), psi(a).leq_by_search(&psi(b)), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn phi_of_worked_example() {
        let b = example_barcode();
        let pair = OrbitPair::new(b.birth_face(EXACT), b.death_face(EXACT)).unwrap();
        assert_eq!(phi(&pair), example_dc());
        let diag = Coset::new(&p("2413"), para(4, &[2])).unwrap();
        let d = phi(&OrbitPair::new(diag.clone(), diag).unwrap());
        assert_eq!(
            d,
            MarkedDoubleCoset::new(para(4, &[2]), &p("1234"), para(4, &[2])).unwrap()
        );
    }

    #[test]
    fn orbit_pair_normal_form_is_orbit_invariant() {
        let a = Coset::new(&p("3142"), para(4, &[1])).unwrap();
        let b = Coset::new(&p("2413"), para(4, &[3])).unwrap();
        let base = OrbitPair::new(a.clone(), b.clone()).unwrap();
        for gamma in Permutation::all(4) {
            let moved =
                OrbitPair::new(a.act_left(&gamma).unwrap(), b.act_left(&gamma).unwrap()).unwrap();
            assert_eq!(moved, base);
        }
    }

    #[test]
    fn stratum_examples() {
        assert_eq!(stratum_of(&example_barcode(), EXACT), example_dc());
        let strict =
            Barcode::from_pairs(&[(3.0, 4.0), (1.0, 7.0), (0.0, 5.0), (2.0, 6.0)]).unwrap();
        assert_eq!(
            stratum_of(&strict, EXACT),
            MarkedDoubleCoset::strict(p("4132"))
        );
        let single = Barcode::from_pairs(&[(0.0, 1.0)]).unwrap();
        assert_eq!(stratum_of(&single, EXACT), MarkedDoubleCoset::bottom(1));
    }

    #[test]
    fn contains_examples() {
        let b = example_barcode();
        let own = stratum_of(&b, EXACT);
        assert!(contains(&own, &b, EXACT));
        assert!(contains_by_orbit(&own, &b, EXACT));
        let chamber = MarkedDoubleCoset::strict(p("1234"));
        assert!(!contains(&chamber, &b, EXACT));
        assert!(!contains_by_orbit(&chamber, &b, EXACT));
        // every chamber over the double coset contains the barcode
        for sigma in own.elements(100).unwrap() {
            let s = MarkedDoubleCoset::strict(sigma);
            assert!(contains(&s, &b, EXACT));
            assert!(contains_by_orbit(&s, &b, EXACT));
        }
        // the bottom stratum only holds barcodes with one birth and one death value
        assert!(!contains(&MarkedDoubleCoset::bottom(4), &b, EXACT));
        let flat = Barcode::from_pairs(&[(0.0, 1.0), (0.0, 1.0)]).unwrap();
        assert!(contains(&MarkedDoubleCoset::bottom(2), &flat, EXACT));
    }

    #[test]
    fn algebraic_and_orbit_containment_agree_in_s3() {
        let q = enumerate_q(3);
        let values = [0.0, 1.0, 2.0];
        for b0 in values {
            for b1 in values {
                for b2 in values {
                    for shift in [[3.0, 3.0, 3.0], [5.0, 4.0, 3.0], [3.0, 4.0, 4.0]] {
                        let bars = [
                            (b0, b0 + shift[0]),
                            (b1, b1 + shift[1]),
                            (b2, b2 + shift[2]),
                        ];
                        let barcode = Barcode::from_pairs(&bars).unwrap();
                        for s in &q {
                            assert_eq!(
                                contains(s, &barcode, EXACT),
                                contains_by_orbit(s, &barcode, EXACT),
                                "{bars:?} in {s:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}
