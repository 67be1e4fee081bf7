//! Alexander polynomials of knot trees, multiplicative over the tree:
//! `Δ(v) = Δ_{L₀}(t) · Π Δ(child)(t^{lk})`.

use super::LaurentPoly;
use crate::diagram::{Port, SpliceDiagram};
use crate::engine::validate_knot_tree;
use crate::error::{Error, Result};
use crate::links::slope::gcd;
use crate::links::LinkLabel;

/// `(t^{pq} − 1)(t − 1) / ((t^p − 1)(t^q − 1))`, taken with `|p|, |q|`.
pub fn torus_knot_alexander(p: i64, q: i64) -> Result<LaurentPoly> {
    if p == 0 || q == 0 || gcd(p, q) != 1 {
        return Err(Error::InvalidParameter(format!("T({p},{q}) is not a knot")));
    }
    let (p, q) = (p.abs(), q.abs());
    let one = LaurentPoly::one();
    let x = |n: i64| &LaurentPoly::monomial(1, n) - &one;
    let num = &x(p * q) * &x(1);
    let den = &x(p) * &x(q);
    Ok(num.div_exact(&den)?.normalized())
}

/// Alexander polynomial of the distinguished component of a tree label.
fn vertex_alexander(label: &LinkLabel, up: &str) -> Result<LaurentPoly> {
    if label.is_unknot() {
        return Ok(LaurentPoly::one());
    }
    match label {
        LinkLabel::Seifert(s) => {
            let pres = match s.components().into_iter().find(|c| c != up) {
                None => *s,
                Some(input) => s
                    .star1_presentation(&input)
                    .ok_or_else(|| Error::InvalidParameter(format!("{label} is not a cable label")))?
                    .0,
            };
            torus_knot_alexander(pres.p(), pres.q())
        }
        LinkLabel::KeyChain(_) | LinkLabel::Unlink(_) => Ok(LaurentPoly::one()),
        LinkLabel::Atom(a) => a.record().alexander(up),
    }
}

/// Normalized Alexander polynomial of a valid knot tree.
pub fn alexander(d: &SpliceDiagram) -> Result<LaurentPoly> {
    let report = validate_knot_tree(d)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidParameter(format!("not a valid knot tree: {v}")));
    }
    let ext = d.externals().values().next().unwrap();
    Ok(subtree(d, &ext.end.vertex, &ext.end.comp, None)?.normalized())
}

fn subtree(d: &SpliceDiagram, v: &str, up: &str, parent: Option<&str>) -> Result<LaurentPoly> {
    let label = d.label(v)?;
    let mut poly = vertex_alexander(label, up)?;
    for (comp, port) in d.ports(v) {
        let Port::Edge { id, side } = port else { continue };
        if Some(id.as_str()) == parent {
            continue;
        }
        let child = &d.edges()[&id].ends[1 - side];
        let lk = label.linking_number(up, &comp)?;
        let sub = subtree(d, &child.vertex, &child.comp, Some(&id))?;
        poly = &poly * &sub.substitute_power(lk);
    }
    Ok(poly)
}
