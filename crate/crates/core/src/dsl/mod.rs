//! Expression language for building links and knot trees, e.g.
//! `sum(T(2,3), cable(2,5, atom(F8)))`.

pub mod ast;
pub mod eval;
pub mod parser;

pub use ast::{Arg, Kind, Node, Pos, Selector, Target};
pub use eval::eval;
pub use parser::parse;

use crate::atomdb::AtomDb;
use crate::diagram::SpliceDiagram;
use crate::error::{Error, Result};
use crate::links::LinkLabel;

/// Parses and evaluates `text`.
pub fn evaluate(text: &str, db: &AtomDb) -> Result<SpliceDiagram> {
    eval(&parse(text)?, db)
}

/// Parses a single label literal such as `S(2,4|*1)`, `H(3;neg=1)` or `atom(W)`.
pub fn parse_label(text: &str, db: &AtomDb) -> Result<LinkLabel> {
    let node = parse(text)?;
    eval::literal_label(&node, db)?.ok_or_else(|| Error::Syntax {
        line: node.pos.line,
        col: node.pos.col,
        message: format!("expected a link label, found {node}"),
    })
}
