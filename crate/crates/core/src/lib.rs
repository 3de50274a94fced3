//! Stratification of barcode space by the Coxeter complex of `S_n`.
//!
//! A barcode with `n` bars is a point `(b, d)` of `ℝⁿ × ℝⁿ` up to
//! simultaneous permutation of coordinates. Sorting births and deaths
//! attaches to it a pair of faces of `Σ(S_n)`, and the relative position of
//! the two faces, a marked parabolic double coset, names the stratum the
//! barcode lies in.

pub mod barcode;
pub mod coordinates;
pub mod coxeter;
pub mod error;
pub mod metrics;
pub mod permutation;
pub mod random;
pub mod strata;

pub use barcode::{Bar, Barcode, FiveData, Format, RegionDescriptor};
pub use coordinates::{direction, face_of, project, ConeCoordinates, EXACT};
pub use coxeter::{ChamberGraph, Coset, CoxeterComplex, Face, ParabolicSubgroup};
pub use error::{Error, Result};
pub use metrics::{MatchingResult, Norm};
pub use permutation::Permutation;
pub use strata::{compare, q_leq, Comparison, MarkedDoubleCoset, OrbitPair};
