//! Verification engine for finite G-graded commutative rings and modules.
//!
//! The crate builds finite rings, modules and gradings as explicit tables,
//! implements the graded ideal/submodule operator calculus, classifies graded
//! submodules (second, strongly 2-absorbing second, 2-absorbing coprimary)
//! and ideals (prime, primary, 2-absorbing, 2-absorbing primary), and checks
//! the structural results about 2-absorbing coprimary submodules instance by
//! instance over a corpus of small structures.

pub mod algebra;
pub mod classifiers;
pub mod cli;
pub mod constructions;
pub mod elemset;
pub mod error;
pub mod format;
pub mod grading;
pub mod harness;
pub mod subobjects;

pub use elemset::ElemSet;
pub use error::{Error, Result};
