use super::ast::{Arg, Kind, Node, Selector, Target};
use crate::atomdb::AtomDb;
use crate::diagram::{ops, SpliceDiagram};
use crate::engine::{self, ROOT};
use crate::error::{Error, Result};
use crate::links::{AtomRef, KeyChain, LinkLabel, SeifertParam, Stars};

/// The label of a literal node, or `None` for constructors.
pub(crate) fn literal_label(node: &Node, db: &AtomDb) -> Result<Option<LinkLabel>> {
    Ok(Some(match &node.kind {
        Kind::Torus(p, q) => LinkLabel::torus(*p, *q)?,
        Kind::Seifert { p, q, star1, star2 } => LinkLabel::Seifert(SeifertParam::new(
            *p,
            *q,
            Stars {
                star1: *star1,
                star2: *star2,
            },
        )?),
        Kind::KeyChain { keys, neg } => LinkLabel::KeyChain(KeyChain::new(
            u32::try_from(*keys).map_err(|_| Error::InvalidParameter(format!("H({keys})")))?,
            u32::try_from(neg.unwrap_or(0)).map_err(|_| Error::InvalidParameter(format!("neg={neg:?}")))?,
        )?),
        Kind::Unknot => LinkLabel::unknot(),
        Kind::Unlink(n) => {
            LinkLabel::Unlink(u32::try_from(*n).map_err(|_| Error::InvalidParameter(format!("U({n})")))?)
        }
        Kind::Atom(name) => LinkLabel::Atom(AtomRef(db.lookup(name)?)),
        _ => return Ok(None),
    }))
}

fn at(node: &Node, e: Error) -> Error {
    match e {
        Error::At { .. } | Error::Syntax { .. } | Error::UnknownSelector { .. } => e,
        other => Error::At {
            line: node.pos.line,
            col: node.pos.col,
            source: Box::new(other),
        },
    }
}

struct Eval<'a> {
    db: &'a AtomDb,
}

impl Eval<'_> {
    fn node(&self, node: &Node) -> Result<SpliceDiagram> {
        self.node_inner(node).map_err(|e| at(node, e))
    }

    fn node_inner(&self, node: &Node) -> Result<SpliceDiagram> {
        if let Some(label) = literal_label(node, self.db)? {
            return engine::reduce(&SpliceDiagram::single("v0", label), self.db);
        }
        match &node.kind {
            Kind::Splice(a, b) => {
                let (d1, l1) = self.operand(a)?;
                let (d2, l2) = self.operand(b)?;
                engine::splice(&d1, &l1, &d2, &l2, self.db)
            }
            Kind::Sum(xs) => {
                let ds = xs.iter().map(|x| self.node(x)).collect::<Result<Vec<_>>>()?;
                engine::connected_sum(&ds, self.db)
            }
            Kind::Cable(p, q, x) => engine::cable(*p, *q, &self.node(x)?, self.db),
            Kind::Whitehead(x) => engine::whitehead_double(&self.node(x)?, self.db),
            Kind::Delete(x, target) => {
                let d = self.node(x)?;
                let label = match target {
                    Target::Sel(s) => s.label(),
                    Target::Label(l) => l.clone(),
                };
                engine::reduce(&ops::delete_component(&d, &label, self.db)?, self.db)
            }
            _ => unreachable!("literals handled above"),
        }
    }

    fn operand(&self, a: &Arg) -> Result<(SpliceDiagram, String)> {
        let d = self.node(&a.expr)?;
        let label = match &a.sel {
            Some(s) => selected(&d, s).map_err(|e| at(&a.expr, e))?,
            None => match d.externals().len() {
                1 => d.externals().keys().next().unwrap().clone(),
                n => {
                    return Err(at(
                        &a.expr,
                        Error::InvalidParameter(format!(
                            "splice operand {} has {n} external components; add a selector",
                            a.expr
                        )),
                    ))
                }
            },
        };
        Ok((d, label))
    }
}

fn selected(d: &SpliceDiagram, s: &Selector) -> Result<String> {
    let l = s.label();
    d.external(&l)?;
    Ok(l)
}

/// Evaluates a parsed expression to a reduced, oriented diagram. A result
/// with a single external component has it relabelled `*`.
pub fn eval(node: &Node, db: &AtomDb) -> Result<SpliceDiagram> {
    let mut d = Eval { db }.node(node)?;
    if d.externals().len() == 1 {
        let l = d.externals().keys().next().unwrap().clone();
        if l != ROOT {
            d.rename_external(&l, ROOT.into());
        }
    }
    Ok(d)
}
