//! Exact computations around 2-transitive actions: Coxeter groups and their
//! parabolic double cosets, type `A_k` buildings over prime fields, weight
//! lattices of simple root systems, and the classification tables as data.

#![allow(clippy::needless_range_loop)]

pub mod building;
pub mod catalog;
pub mod coset;
pub mod coxeter;
pub mod perm;
pub mod rep;
pub mod scalar;

pub use building::{Building, BuildingError, BuildingReport, Flag, Permutation};
pub use catalog::{Catalog, CatalogEntry, CatalogError, Query, SpiralParameter};
pub use coset::{
    Classification, ClassifyEntry, CosetError, DoubleCosetDecomposition, Violation, WeightOrbit,
};
pub use coxeter::{Bond, CoxeterDiagram, DiagramError, FiniteType, GroupOrder, Word, WordError};
pub use perm::PermutationGroup;
pub use rep::{IrrepSum, RealType, RepError, RootDatum, Weight};
pub use scalar::{AlgebraicScalar, Scalar};
