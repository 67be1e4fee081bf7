use std::collections::{BTreeMap, BTreeSet};

use super::rewrite::reduce;
use crate::atomdb::AtomDb;
use crate::diagram::{brunnian_contains, Edge, SpliceDiagram};
use crate::error::{Error, Result};
use crate::links::IndexSet;

/// Joins `d1` and `d2` by one new edge between externals `a1` and `a2`,
/// without reducing. Ids of `d2` clashing with `d1` are renamed: vertices
/// and edges get fresh ids, externals get primes appended. Returns the
/// joined diagram, the new edge id and the external renaming of `d2`.
pub fn join(
    d1: &SpliceDiagram,
    a1: &str,
    d2: &SpliceDiagram,
    a2: &str,
) -> Result<(SpliceDiagram, String, BTreeMap<String, String>)> {
    let x1 = d1.external(a1)?.clone();
    let x2 = d2.external(a2)?.clone();
    let mut taken: BTreeSet<String> = d1
        .edges()
        .keys()
        .chain(d1.externals().keys())
        .cloned()
        .collect();
    let d1_verts: BTreeSet<String> = d1.vertices().keys().cloned().collect();
    let mut vtaken: BTreeSet<String> = d1_verts.iter().chain(d2.vertices().keys()).cloned().collect();
    let mut vmap = BTreeMap::new();
    for v in d2.vertices().keys() {
        let id = if d1_verts.contains(v) {
            fresh("v", &vtaken)
        } else {
            v.clone()
        };
        vtaken.insert(id.clone());
        vmap.insert(v.clone(), id);
    }
    // externals keep their names where possible, so they claim names first
    let mut xmap = BTreeMap::new();
    for l in d2.externals().keys() {
        let mut id = l.clone();
        while taken.contains(&id) {
            id.push('\'');
        }
        taken.insert(id.clone());
        xmap.insert(l.clone(), id);
    }
    let d2_edges: BTreeSet<String> = d2.edges().keys().cloned().collect();
    let mut emap = BTreeMap::new();
    for e in d2.edges().keys() {
        let id = if taken.contains(e) {
            let avoid: BTreeSet<String> = taken.union(&d2_edges).cloned().collect();
            fresh("e", &avoid)
        } else {
            e.clone()
        };
        taken.insert(id.clone());
        emap.insert(e.clone(), id);
    }
    let moved = d2.renamed(&vmap, &emap, &xmap);
    let new_edge = fresh("e", &taken);

    let mut out = d1.clone();
    out.remove_external(a1);
    for (v, l) in moved.vertices() {
        out.insert_vertex(v.clone(), l.clone());
    }
    for e in moved.edges().values() {
        out.insert_edge(e.clone());
    }
    for (l, x) in moved.externals() {
        if *l != xmap[a2] {
            out.insert_external(l.clone(), x.end.clone(), x.sign);
        }
    }
    let end2 = moved.external(&xmap[a2])?.end.clone();
    let mut e = Edge::new(new_edge.clone(), x1.end, end2);
    e.signs = [x1.sign, x2.sign];
    out.insert_edge(e);
    out.check()?;
    Ok((out, new_edge, xmap))
}

fn fresh(prefix: &str, taken: &BTreeSet<String>) -> String {
    (0..)
        .map(|i| format!("{prefix}{i}"))
        .find(|id| !taken.contains(id))
        .unwrap()
}

/// Splices `d1` along `a1` with `d2` along `a2` and reduces. At least one of
/// the two components must be unknotted (`{a} ∈ Ū`).
pub fn splice(
    d1: &SpliceDiagram,
    a1: &str,
    d2: &SpliceDiagram,
    a2: &str,
    db: &AtomDb,
) -> Result<SpliceDiagram> {
    Ok(splice_with_renames(d1, a1, d2, a2, db)?.0)
}

/// As [`splice`], also returning how `d2`'s external labels were renamed.
pub fn splice_with_renames(
    d1: &SpliceDiagram,
    a1: &str,
    d2: &SpliceDiagram,
    a2: &str,
    db: &AtomDb,
) -> Result<(SpliceDiagram, BTreeMap<String, String>)> {
    d1.external(a1)?;
    d2.external(a2)?;
    let single = |a: &str| IndexSet::from([a.to_owned()]);
    if !brunnian_contains(d1, &single(a1)) && !brunnian_contains(d2, &single(a2)) {
        return Err(Error::PreconditionBrunnian(a1.to_owned(), a2.to_owned()));
    }
    let (joined, _, xmap) = join(d1, a1, d2, a2)?;
    Ok((reduce(&joined, db)?, xmap))
}
