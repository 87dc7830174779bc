//! Finite effect algebras: validation, compatibility, blocks, centers and
//! exhaustive checking of structural theorems on small models.

pub mod algebra;
pub mod classes;
pub mod construct;
pub mod dot;
pub mod element;
pub mod families;
pub mod format;
pub mod iso;
pub mod structure;
pub mod verify;

pub use algebra::{Axiom, AxiomViolation, BuildError, DomainError, EffectAlgebra};
pub use element::{ElementId, ElementSet, MAX_ELEMENTS};
pub use families::{Budget, SearchError};
