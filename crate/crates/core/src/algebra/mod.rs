//! Finite grading groups, rings and modules as explicit operation tables.
//!
//! Elements are opaque indices into the tables; labels exist for display and
//! for parsing structure files. Every constructor that takes a descriptor
//! validates all axioms exhaustively before returning.

pub mod group;
pub mod module;
pub mod ring;
mod validate;

pub use group::{make_group, GradingGroup, GroupDescriptor};
pub use module::{make_module, FiniteModule, ModuleDescriptor, ModuleKind};
pub use ring::{make_ring, FiniteRing, RingDescriptor, RingKind};
pub use validate::{validate_axioms, AxiomFailure, Validate, ValidationReport};
