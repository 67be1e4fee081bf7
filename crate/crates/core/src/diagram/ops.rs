//! Companions, splitting and deletion.

use std::collections::{BTreeMap, BTreeSet};

use super::{End, External, Port, SpliceDiagram};
use crate::atomdb::AtomDb;
use crate::error::{Error, Result};
use crate::links::Deleted;

/// The companion link of a connected vertex set: the sub-diagram on `verts`
/// with every cut edge promoted to an external under its own id.
pub fn companion(d: &SpliceDiagram, verts: &BTreeSet<String>) -> Result<SpliceDiagram> {
    for v in verts {
        d.label(v)?;
    }
    let Some(first) = verts.iter().next() else {
        return Err(Error::Disconnected);
    };
    if d.reach(first, Some(verts), None) != *verts {
        return Err(Error::Disconnected);
    }
    let mut out = SpliceDiagram::default();
    for v in verts {
        out.vertices.insert(v.clone(), d.vertices[v].clone());
    }
    for e in d.edges.values() {
        let inside = [0, 1].map(|s| verts.contains(&e.ends[s].vertex));
        match inside {
            [true, true] => {
                out.edges.insert(e.id.clone(), e.clone());
            }
            [true, false] | [false, true] => {
                let side = if inside[0] { 0 } else { 1 };
                out.externals.insert(
                    e.id.clone(),
                    External {
                        end: e.ends[side].clone(),
                        sign: e.signs[side],
                    },
                );
            }
            _ => {}
        }
    }
    for (l, x) in &d.externals {
        if verts.contains(&x.end.vertex) {
            out.externals.insert(l.clone(), x.clone());
        }
    }
    Ok(out)
}

/// Replaces a split vertex by one vertex per split component; edges and
/// externals are carried over unchanged.
pub fn split_at(d: &SpliceDiagram, v: &str) -> Result<SpliceDiagram> {
    let parts = d
        .label(v)?
        .split_parts()
        .ok_or_else(|| Error::NotSplit(v.to_owned()))?;
    let mut out = d.clone();
    let ports = out.ports(v);
    out.remove_vertex(v);
    for (label, map) in parts {
        let id = out.fresh_id(&format!("{v}_"));
        out.insert_vertex(id.clone(), label);
        for (old, new) in map {
            if let Some(port) = ports.get(&old) {
                out.attach(port, End::new(id.clone(), new), None);
            }
        }
    }
    Ok(out)
}

/// Deletes the component behind external label `a`. The result may violate
/// the companionship-graph conditions and is meant to be reduced.
pub fn delete_component(d: &SpliceDiagram, a: &str, db: &AtomDb) -> Result<SpliceDiagram> {
    let ext = d.external(a)?.clone();
    let mut out = d.clone();
    out.remove_external(a);
    delete_detached(&mut out, &ext.end, db)?;
    Ok(out)
}

/// Removes component `end` from its vertex label. Its port must already be
/// detached.
pub(crate) fn delete_detached(d: &mut SpliceDiagram, end: &End, db: &AtomDb) -> Result<()> {
    let v = end.vertex.as_str();
    match d.label(v)?.delete(&end.comp)? {
        Deleted::Empty => {
            d.remove_vertex(v);
        }
        Deleted::Label(label, map) => d.relabel(v, label, &map),
        Deleted::AtomSublink { atom, keep } => {
            let expr = db.resolve_sublink(&atom, &keep)?;
            let sub = crate::dsl::evaluate(&expr, db)?;
            if sub.externals.len() != keep.len() {
                return Err(Error::InvalidParameter(format!(
                    "sublink expression {expr:?} of atom({atom}) has {} components, expected {}",
                    sub.externals.len(),
                    keep.len()
                )));
            }
            substitute(d, v, &sub, keep.iter().cloned().collect())?;
        }
    }
    Ok(())
}

/// Replaces vertex `v` by diagram `sub`, whose externals (sorted) take over
/// the ports of `v`'s components `comps` (sorted).
pub(crate) fn substitute(
    d: &mut SpliceDiagram,
    v: &str,
    sub: &SpliceDiagram,
    comps: Vec<String>,
) -> Result<()> {
    let ports = d.ports(v);
    d.remove_vertex(v);
    let mut taken = BTreeSet::new();
    let mut fresh = |prefix: &str, d: &SpliceDiagram| {
        let id = d.fresh_id_avoiding(prefix, &taken);
        taken.insert(id.clone());
        id
    };
    let vmap: BTreeMap<String, String> =
        sub.vertices.keys().map(|id| (id.clone(), fresh("v", d))).collect();
    let emap: BTreeMap<String, String> =
        sub.edges.keys().map(|id| (id.clone(), fresh("e", d))).collect();
    let moved = sub.renamed(&vmap, &emap, &BTreeMap::new());
    for (id, label) in moved.vertices {
        d.insert_vertex(id, label);
    }
    for (_, e) in moved.edges {
        d.insert_edge(e);
    }
    for (x, comp) in moved.externals.values().zip(comps) {
        let port: Port = ports
            .get(&comp)
            .cloned()
            .ok_or_else(|| Error::UnknownComponent(v.to_owned(), comp.clone()))?;
        let sign = d.port_sign(&port) * x.sign;
        d.attach(&port, x.end.clone(), Some(sign));
    }
    Ok(())
}
