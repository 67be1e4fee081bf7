//! Invariants computed from companionship graphs.

pub mod alexander;
pub mod gromov;
pub mod laurent;

pub use alexander::{alexander, torus_knot_alexander};
pub use gromov::gromov_norm;
pub use laurent::LaurentPoly;
