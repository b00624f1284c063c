//! Exact group-algebra decompositions of Jacobians of compact Riemann
//! surfaces with a finite group of automorphisms.
//!
//! A group action is described by discrete data: a permutation group, the
//! orbit genus and a generating vector. From it the crate computes the
//! character table (exactly, over cyclotomic fields), the dimensions of the
//! isotypical factors of the Jacobian, the induced decompositions of the
//! Jacobians of quotient curves, and tests collections of subgroups for
//! admissibility.

pub mod characters;
pub mod covering;
pub mod cyclotomic;
pub mod decomposition;
pub mod error;
pub mod group;
pub mod scenario;

pub use error::{Error, Result};
