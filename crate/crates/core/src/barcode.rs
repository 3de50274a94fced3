//! Barcodes with a fixed number of bars and their permutation invariants.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::coordinates::{direction_of, face_of, mean_and_radius};
use crate::coxeter::{Coset, ParabolicSubgroup};
use crate::error::{ensure_same_len, Error, Result};
use crate::permutation::Permutation;
use crate::strata::MarkedDoubleCoset;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Bar {
    pub birth: f64,
    pub death: f64,
}

impl From<[f64; 2]> for Bar {
    fn from([birth, death]: [f64; 2]) -> Self {
        Bar { birth, death }
    }
}

impl From<Bar> for [f64; 2] {
    fn from(bar: Bar) -> Self {
        [bar.birth, bar.death]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A nonempty list of bars with finite `birth < death`. The order of the
/// bars is an indexing; every invariant below ignores it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Bar>", into = "Vec<Bar>")]
pub struct Barcode {
    bars: Vec<Bar>,
}

impl TryFrom<Vec<Bar>> for Barcode {
    type Error = Error;

    fn try_from(bars: Vec<Bar>) -> Result<Self> {
        Barcode::new(bars)
    }
}

impl From<Barcode> for Vec<Bar> {
    fn from(b: Barcode) -> Self {
        b.bars
    }
}

impl Barcode {
    /// Validates every bar; `InvalidBar::index` is 1-based.
    pub fn new(bars: Vec<Bar>) -> Result<Self> {
        if bars.is_empty() {
            return Err(Error::EmptyBarcode);
        }
        for (i, bar) in bars.iter().enumerate() {
            if !(bar.birth.is_finite() && bar.death.is_finite() && bar.birth < bar.death) {
                return Err(Error::InvalidBar {
                    index: i + 1,
                    birth: bar.birth,
                    death: bar.death,
                });
            }
        }
        Ok(Self { bars })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(birth, death)| Bar { birth, death })
                .collect(),
        )
    }

    pub fn from_births_deaths(births: &[f64], deaths: &[f64]) -> Result<Self> {
        ensure_same_len(births.len(), deaths.len())?;
        Self::new(
            births
                .iter()
                .zip(deaths)
                .map(|(&birth, &death)| Bar { birth, death })
                .collect(),
        )
    }

    pub fn parse<R: Read>(mut source: R, format: Format) -> Result<Self> {
        let mut text = String::new();
        source.read_to_string(&mut text)?;
        match format {
            Format::Csv => Self::parse_csv(&text),
            Format::Json => Self::new(serde_json::from_str::<Vec<Bar>>(&text)?),
        }
    }

    /// One `birth,death` row per line; `#` starts a comment.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut bars = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let [b, d] = fields[..] else {
                return Err(parse_err(format!(
                    "expected 2 fields, found {}",
                    fields.len()
                )));
            };
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| parse_err(format!("{s:?}: {e}")))
            };
            let bar = Bar {
                birth: num(b)?,
                death: num(d)?,
            };
            if !(bar.birth.is_finite() && bar.death.is_finite() && bar.birth < bar.death) {
                return Err(parse_err(
                    Error::InvalidBar {
                        index: bars.len() + 1,
                        birth: bar.birth,
                        death: bar.death,
                    }
                    .to_string(),
                ));
            }
            bars.push(bar);
        }
        Self::new(bars)
    }

    pub fn to_csv(&self) -> String {
        self.bars
            .iter()
            .map(|b| format!("{},{}\n", b.birth, b.death))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite floats always serialize")
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    /// Always false; kept for the usual `len` pairing.
    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn births(&self) -> Vec<f64> {
        self.bars.iter().map(|b| b.birth).collect()
    }

    pub fn deaths(&self) -> Vec<f64> {
        self.bars.iter().map(|b| b.death).collect()
    }

    /// `γ·B`: bar `i` of the result is bar `γ⁻¹(i)` of `B`.
    pub fn reindexed(&self, gamma: &Permutation) -> Result<Barcode> {
        Ok(Self {
            bars: gamma.act_on_vector(&self.bars)?,
        })
    }

    /// Bars sorted by birth, then death. Two barcodes are equal as
    /// multisets iff their sorted forms are equal.
    pub fn sorted(&self) -> Barcode {
        let mut bars = self.bars.clone();
        bars.sort_by(|a, b| {
            a.birth
                .total_cmp(&b.birth)
                .then(a.death.total_cmp(&b.death))
        });
        Self { bars }
    }

    /// The weak-sorting coset `τ_b·P_b` of the births.
    pub fn birth_face(&self, tol: f64) -> Coset {
        face_of(&self.births(), tol)
    }

    pub fn death_face(&self, tol: f64) -> Coset {
        face_of(&self.deaths(), tol)
    }

    /// Block-increasing permutation sorting the births.
    pub fn tau_b(&self, tol: f64) -> Permutation {
        self.birth_face(tol).rep().clone()
    }

    pub fn tau_d(&self, tol: f64) -> Permutation {
        self.death_face(tol).rep().clone()
    }

    /// `(P_b, P_d)`: the parabolics generated by ties among the sorted
    /// births and deaths.
    pub fn parabolics(&self, tol: f64) -> (ParabolicSubgroup, ParabolicSubgroup) {
        (
            self.birth_face(tol).subgroup().clone(),
            self.death_face(tol).subgroup().clone(),
        )
    }

    pub fn is_strict(&self, tol: f64) -> bool {
        let (pb, pd) = self.parabolics(tol);
        pb.is_trivial() && pd.is_trivial()
    }

    /// `σ_B = τ_b⁻¹τ_d`, defined only when births and deaths are each
    /// pairwise distinct.
    pub fn sigma(&self, tol: f64) -> Result<Permutation> {
        if !self.is_strict(tol) {
            return Err(Error::NotStrict);
        }
        Ok(self
            .tau_b(tol)
            .inverse()
            .compose_unchecked(&self.tau_d(tol)))
    }

    /// `(P_b, P_b τ_b⁻¹τ_d P_d, P_d)`.
    pub fn double_coset(&self, tol: f64) -> MarkedDoubleCoset {
        let births = self.birth_face(tol);
        let deaths = self.death_face(tol);
        let sigma = births.rep().inverse().compose_unchecked(deaths.rep());
        MarkedDoubleCoset::new(births.subgroup().clone(), &sigma, deaths.subgroup().clone())
            .expect("faces of one barcode have equal size")
    }

    pub fn region(&self, tol: f64) -> RegionDescriptor {
        let (mean_birth, dev_birth) = mean_and_radius(&self.births());
        let (mean_death, dev_death) = mean_and_radius(&self.deaths());
        RegionDescriptor {
            mean_birth,
            mean_death,
            dev_birth,
            dev_death,
            stratum: self.double_coset(tol),
        }
    }

    /// The means, radii and a canonical point of the orbit of direction
    /// pairs. The point is obtained by ordering the bars by birth, then
    /// death, then index.
    pub fn coxeter_coordinates(&self, tol: f64) -> FiveData {
        let sorted = self.sorted();
        FiveData {
            region: self.region(tol),
            birth_direction: direction_of(&sorted.births()),
            death_direction: direction_of(&sorted.deaths()),
        }
    }

    /// Same means and radii up to `tol` and the same stratum, with ties
    /// detected at `tol` as well.
    pub fn same_region(&self, other: &Barcode, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let (a, b) = (self.region(tol), other.region(tol));
        (a.mean_birth - b.mean_birth).abs() <= tol
            && (a.mean_death - b.mean_death).abs() <= tol
            && (a.dev_birth - b.dev_birth).abs() <= tol
            && (a.dev_death - b.dev_death).abs() <= tol
            && a.stratum == b.stratum
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionDescriptor {
    pub mean_birth: f64,
    pub mean_death: f64,
    pub dev_birth: f64,
    pub dev_death: f64,
    pub stratum: MarkedDoubleCoset,
}

/// Means, radii and orbit representative of a barcode. A direction is
/// absent when the corresponding values are all equal.
#[derive(Debug, Clone, PartialEq)]
pub struct FiveData {
    pub region: RegionDescriptor,
    pub birth_direction: Option<Vec<f64>>,
    pub death_direction: Option<Vec<f64>>,
}

impl FiveData {
    pub fn n(&self) -> usize {
        self.region.stratum.n()
    }

    /// Rebuilds a barcode in the orbit, indexed by the representative.
    pub fn reconstruct(&self) -> Result<Barcode> {
        let n = self.n();
        let r = &self.region;
        let rebuild = |mean: f64, radius: f64, dir: &Option<Vec<f64>>| -> Result<Vec<f64>> {
            match dir {
                None => Ok(vec![mean; n]),
                Some(d) => {
                    ensure_same_len(d.len(), n)?;
                    Ok(d.iter().map(|v| mean + radius * v).collect())
                }
            }
        };
        let births = rebuild(r.mean_birth, r.dev_birth, &self.birth_direction)?;
        let deaths = rebuild(r.mean_death, r.dev_death, &self.death_direction)?;
        Barcode::from_births_deaths(&births, &deaths)
    }
}
