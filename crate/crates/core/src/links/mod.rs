//! Atomic link labels: Seifert links, key-chains, unlinks and database atoms.

pub mod brunnian;
pub mod descriptor;
pub mod label;
pub mod seifert;
pub mod slope;

pub use brunnian::{BrunnianSet, IndexSet};
pub use descriptor::{Embeddability, SeifertManifoldDescriptor};
pub use label::{AtomRef, Deleted, KeyChain, LinkLabel};
pub use seifert::{CompMap, SeifertParam, Stars};
pub use slope::Slope;
