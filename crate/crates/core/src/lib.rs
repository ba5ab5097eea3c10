//! Almost Gorenstein classification of Hibi rings from poset combinatorics.
//!
//! A finite distributive lattice `H` is recovered from its poset `P` of
//! join-irreducibles; the Hibi ring `R_k(H)` is then described entirely by
//! order-reversing maps on `P⁺ = P ∪ {∞}`. This crate computes the ring's
//! invariants by counting such maps, decides the almost Gorenstein property
//! both from the shape of `P` and from an independent homological test, and
//! applies the same machinery to ladder determinantal rings of 2-minors.

pub mod classify;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod ladder;
pub mod lattice;
pub mod poset;
pub mod report;
pub mod verify;

pub use classify::{classify, Classification, ClassificationKind, ShapeWitness};
pub use error::{Error, Result};
pub use invariants::{Hibi, HibiReport, OrderReversingMap};
pub use ladder::{Ladder, LadderClassification};
pub use lattice::LatticePoset;
pub use poset::{AugmentedPoset, Poset, PosetSpec};
pub use report::{AnalysisReport, LadderReport};
pub use verify::{sweep, SweepReport};
