//! Splicing, reduction to normal form, and knot trees.

pub mod knot;
pub mod rewrite;
pub mod splice;

pub use knot::{
    admissible, cable, connected_sum, enumerate_knot_trees, validate_knot_tree, whitehead_double,
    KnotTreeReport, KnotTreeViolation, ROOT,
};
pub use rewrite::{all_normal_forms, applicable_rewrites, apply_rewrite, reduce, Rewrite};
pub use splice::{join, splice, splice_with_renames};
