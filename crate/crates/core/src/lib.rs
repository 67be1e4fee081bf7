//! Companionship graphs of knots and links.
//!
//! Links are described by splice diagrams: trees whose vertices carry
//! Seifert-fibred or hyperbolic link labels and whose edges record splicing.
//! The crate reduces diagrams to a normal form, decides equivalence through
//! canonical strings, validates knot trees, and computes Alexander
//! polynomials and Gromov norms.

pub mod atomdb;
pub mod cli;
pub mod diagram;
pub mod dsl;
pub mod engine;
pub mod error;
pub mod invariants;
pub mod links;

pub use atomdb::{AtomDb, AtomRecord};
pub use diagram::SpliceDiagram;
pub use error::{Error, Result};
pub use links::LinkLabel;
