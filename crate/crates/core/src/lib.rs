//! Combinatorial calculus for dihedral and replete bar constructions of
//! affine monoids carrying an order-2 automorphism.
//!
//! The crate is organized bottom-up:
//! - `matrix`, `lp`: exact integer and rational linear algebra,
//! - `monoid`: affine monoids with involution and their operations,
//! - `simplicial`, `nerves`: truncated simplicial/dihedral sets and the bar
//!   constructions built from monoids,
//! - `homology`: chain complexes and integral homology over the integers,
//! - `cube`: cubical diagrams and total (co)fibers,
//! - `verify`: the registry of named identity checks.

pub mod error;
pub mod lp;
pub mod matrix;

pub mod cube;
pub mod homology;
pub mod monoid;
pub mod monoidset;
pub mod nerves;
pub mod report;
pub mod simpchecks;
pub mod simplicial;
pub mod strict;
pub mod verify;

pub use error::{Error, Result};
pub use report::{CheckReport, Status};
