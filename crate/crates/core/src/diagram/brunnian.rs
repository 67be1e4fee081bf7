//! Strong Brunnian sets of diagrams by recursive edge splitting, edge
//! orientations derived from them, and the local vertex conditions.

use std::collections::BTreeSet;

use super::{End, Orientation, SpliceDiagram};
use crate::error::{Error, Result};
use crate::links::{BrunnianSet, IndexSet};

/// A connected set of vertices of `d`. Its index set consists of the
/// externals at those vertices plus the ids of edges leaving the set.
struct Part<'a> {
    d: &'a SpliceDiagram,
    verts: BTreeSet<String>,
}

impl<'a> Part<'a> {
    /// The end inside the part named by an index `x`.
    fn resolve(&self, x: &str) -> Option<End> {
        if let Some(ext) = self.d.externals.get(x) {
            return self.verts.contains(&ext.end.vertex).then(|| ext.end.clone());
        }
        let e = self.d.edges.get(x)?;
        let inside: Vec<&End> = e.ends.iter().filter(|end| self.verts.contains(&end.vertex)).collect();
        match inside.as_slice() {
            [one] => Some((*one).clone()),
            _ => None,
        }
    }

    fn internal_edges(&self) -> impl Iterator<Item = &'a super::Edge> + '_ {
        self.d.edges.values().filter(|e| {
            self.verts.contains(&e.ends[0].vertex) && self.verts.contains(&e.ends[1].vertex)
        })
    }

    /// An internal edge at a leaf of the part, to keep one side trivial.
    fn leaf_edge(&self) -> Option<&'a super::Edge> {
        let internal: Vec<_> = self.internal_edges().collect();
        for v in &self.verts {
            let at: Vec<_> = internal
                .iter()
                .filter(|e| e.ends.iter().any(|end| &end.vertex == v))
                .collect();
            if at.len() == 1 {
                return Some(at[0]);
            }
        }
        internal.first().copied()
    }

    fn contains(&self, b: &IndexSet, split: Option<&str>) -> bool {
        if self.verts.len() == 1 {
            let v = self.verts.iter().next().unwrap();
            let mut comps = IndexSet::new();
            for x in b {
                match self.resolve(x) {
                    Some(end) => {
                        comps.insert(end.comp);
                    }
                    None => return false,
                }
            }
            return self.d.vertices[v].brunnian_contains(&comps);
        }
        let edge = match split.and_then(|s| self.d.edges.get(s)) {
            Some(e) => e,
            None => self.leaf_edge().expect("a connected part with two vertices has an edge"),
        };
        let side0 = self.d.reach(&edge.ends[0].vertex, Some(&self.verts), Some(&edge.id));
        let side1: BTreeSet<String> = self.verts.difference(&side0).cloned().collect();
        let p0 = Part { d: self.d, verts: side0 };
        let p1 = Part { d: self.d, verts: side1 };
        let mut b0 = IndexSet::new();
        let mut b1 = IndexSet::new();
        for x in b {
            if p0.resolve(x).is_some() {
                b0.insert(x.clone());
            } else if p1.resolve(x).is_some() {
                b1.insert(x.clone());
            } else {
                return false;
            }
        }
        let with = |s: &IndexSet| {
            let mut s = s.clone();
            s.insert(edge.id.clone());
            s
        };
        (p0.contains(&with(&b0), None) && p1.contains(&b1, None))
            || (p0.contains(&b0, None) && p1.contains(&with(&b1), None))
    }
}

fn contains_in(d: &SpliceDiagram, b: &IndexSet, split: Option<&str>) -> bool {
    if !b.iter().all(|x| d.externals.contains_key(x)) {
        return false;
    }
    // a split link is an unlink iff each split piece is
    d.connected_components().into_iter().all(|verts| {
        let part = Part { d, verts };
        let local: IndexSet = b.iter().filter(|x| part.resolve(x).is_some()).cloned().collect();
        let here = split.filter(|s| {
            d.edges
                .get(*s)
                .is_some_and(|e| part.verts.contains(&e.ends[0].vertex))
        });
        part.contains(&local, here)
    })
}

/// Is the sublink on external labels `b` an unlink?
pub fn brunnian_contains(d: &SpliceDiagram, b: &IndexSet) -> bool {
    contains_in(d, b, None)
}

fn enumerate(d: &SpliceDiagram, split: Option<&str>) -> BrunnianSet {
    let labels: Vec<String> = d.externals.keys().cloned().collect();
    let mut out = BrunnianSet::new(labels.iter().cloned().collect());
    let n = labels.len();
    assert!(n < 24, "Brunnian enumeration over {n} external labels");
    let mut masks: Vec<u32> = (1u32..(1 << n)).collect();
    masks.sort_by_key(|m| m.count_ones());
    let mut members = BTreeSet::new();
    for m in masks {
        // sublinks of unlinks are unlinks, so only extend known members
        let closed = (0..n)
            .filter(|i| m & (1 << i) != 0)
            .all(|i| {
                let sub = m & !(1 << i);
                sub == 0 || members.contains(&sub)
            });
        if !closed {
            continue;
        }
        let set: IndexSet = (0..n).filter(|i| m & (1 << i) != 0).map(|i| labels[i].clone()).collect();
        if contains_in(d, &set, split) {
            members.insert(m);
            out.insert(set);
        }
    }
    out
}

/// Strong Brunnian set of the link a diagram represents, over its
/// external labels.
pub fn global_brunnian(d: &SpliceDiagram) -> BrunnianSet {
    enumerate(d, None)
}

/// As [`global_brunnian`], with the first split forced at `edge`.
pub fn global_brunnian_split_at(d: &SpliceDiagram, edge: &str) -> Result<BrunnianSet> {
    d.edge(edge)?;
    Ok(enumerate(d, Some(edge)))
}

/// Whether `{e}` is an unlink on each side of edge `e`: `(end 0 side, end 1 side)`.
pub fn edge_unknotted_sides(d: &SpliceDiagram, id: &str) -> Result<(bool, bool)> {
    let single: IndexSet = std::iter::once(id.to_owned()).collect();
    let mut out = [false; 2];
    for (side, slot) in out.iter_mut().enumerate() {
        let part = Part {
            d,
            verts: d.side_vertices(id, side)?,
        };
        *slot = part.contains(&single, None);
    }
    Ok((out[0], out[1]))
}

pub fn derived_orientation(d: &SpliceDiagram, id: &str) -> Result<Orientation> {
    match edge_unknotted_sides(d, id)? {
        (false, true) => Ok(Orientation::To1),
        (true, false) => Ok(Orientation::To0),
        (true, true) => Ok(Orientation::Unoriented),
        (false, false) => Err(Error::NotRealizable(id.to_owned())),
    }
}

/// Fills in every edge orientation; stored orientations are checked.
pub fn derive_orientations(d: &SpliceDiagram) -> Result<SpliceDiagram> {
    let mut out = d.clone();
    for e in d.edges.values() {
        let derived = derived_orientation(d, &e.id)?;
        if let Some(stored) = e.orient {
            if stored != derived {
                return Err(Error::OrientationMismatch {
                    edge: e.id.clone(),
                    stored: stored.as_str().into(),
                    derived: derived.as_str().into(),
                });
            }
        }
        out.set_orientation(&e.id, Some(derived));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalViolation {
    pub vertex: String,
    /// 1: in-edges are not an unlink; 2: an out-edge completes an unlink;
    /// 3: an unoriented edge does not complete an unlink.
    pub condition: u8,
    pub witness: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidityReport {
    pub violations: Vec<LocalViolation>,
    pub unmarked: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.unmarked.is_empty()
    }
}

/// Checks the local Brunnian conditions at every vertex against stored
/// orientations. Unmarked edges are listed but otherwise ignored.
pub fn validate_local_brunnian(d: &SpliceDiagram) -> ValidityReport {
    let mut report = ValidityReport::default();
    for e in d.edges.values() {
        if e.orient.is_none() {
            report.unmarked.push(e.id.clone());
        }
    }
    for (v, label) in &d.vertices {
        let (mut a1, mut a2, mut a3) = (IndexSet::new(), Vec::new(), Vec::new());
        for (e, side) in d.incident(v) {
            let comp = e.ends[side].comp.clone();
            match e.orient {
                Some(Orientation::Unoriented) => a3.push(comp),
                Some(o) if o == Orientation::toward(side) => {
                    a1.insert(comp);
                }
                Some(_) => a2.push(comp),
                None => {}
            }
        }
        let mut flag = |condition, witness| {
            report.violations.push(LocalViolation {
                vertex: v.clone(),
                condition,
                witness,
            })
        };
        if !label.brunnian_contains(&a1) {
            flag(1, a1.clone());
        }
        for a in a2 {
            let mut s = a1.clone();
            s.insert(a);
            if label.brunnian_contains(&s) {
                flag(2, s);
            }
        }
        for a in a3 {
            let mut s = a1.clone();
            s.insert(a);
            if !label.brunnian_contains(&s) {
                flag(3, s);
            }
        }
    }
    report
}
