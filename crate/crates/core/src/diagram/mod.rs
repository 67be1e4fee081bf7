//! Splice diagrams: acyclic, partially directed multigraphs whose vertices
//! carry link labels and whose edges join one component of each endpoint.
//!
//! Edge ids and external labels share one namespace — when a subgraph is cut
//! out, the cut edges become externals under their own ids.

pub mod brunnian;
pub mod canon;
pub mod dot;
pub mod json;
pub mod ops;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::links::{CompMap, IndexSet, LinkLabel};

pub use brunnian::{
    brunnian_contains, derive_orientations, global_brunnian, global_brunnian_split_at,
    validate_local_brunnian, LocalViolation, ValidityReport,
};
pub use canon::{canonical_form, equivalent};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub vertex: String,
    pub comp: String,
}

impl End {
    pub fn new(vertex: impl Into<String>, comp: impl Into<String>) -> Self {
        End {
            vertex: vertex.into(),
            comp: comp.into(),
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.vertex, self.comp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Unoriented,
    /// Directed toward `ends[0]`.
    To0,
    /// Directed toward `ends[1]`.
    To1,
}

impl Orientation {
    pub fn toward(side: usize) -> Self {
        if side == 0 {
            Orientation::To0
        } else {
            Orientation::To1
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Unoriented => Orientation::Unoriented,
            Orientation::To0 => Orientation::To1,
            Orientation::To1 => Orientation::To0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Unoriented => "none",
            Orientation::To0 => "to0",
            Orientation::To1 => "to1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub ends: [End; 2],
    /// `None` while unmarked; see [`derive_orientations`].
    pub orient: Option<Orientation>,
    /// Orientation markers of the two spliced components.
    pub signs: [i8; 2],
}

impl Edge {
    pub fn new(id: impl Into<String>, a: End, b: End) -> Self {
        Edge {
            id: id.into(),
            ends: [a, b],
            orient: None,
            signs: [1, 1],
        }
    }

    pub fn oriented(mut self, o: Orientation) -> Self {
        self.orient = Some(o);
        self
    }

    pub fn side_of(&self, vertex: &str) -> Option<usize> {
        self.ends.iter().position(|e| e.vertex == vertex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct External {
    pub end: End,
    pub sign: i8,
}

/// What consumes a vertex component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    Edge { id: String, side: usize },
    External(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpliceDiagram {
    vertices: BTreeMap<String, LinkLabel>,
    edges: BTreeMap<String, Edge>,
    externals: BTreeMap<String, External>,
}

impl SpliceDiagram {
    pub fn build(
        vertices: Vec<(String, LinkLabel)>,
        edges: Vec<Edge>,
        externals: Vec<(String, End)>,
    ) -> Result<Self> {
        let mut d = SpliceDiagram::default();
        for (id, label) in vertices {
            if d.vertices.insert(id.clone(), label).is_some() {
                return Err(Error::DuplicateLabel(id));
            }
        }
        for e in edges {
            if d.edges.contains_key(&e.id) {
                return Err(Error::DuplicateLabel(e.id));
            }
            d.edges.insert(e.id.clone(), e);
        }
        for (label, end) in externals {
            if d.externals.contains_key(&label) || d.edges.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            d.externals.insert(label, External { end, sign: 1 });
        }
        d.check()?;
        Ok(d)
    }

    /// One vertex whose components are all external under their own names.
    pub fn single(vertex: &str, label: LinkLabel) -> Self {
        let externals = label
            .components()
            .into_iter()
            .map(|c| {
                let end = End::new(vertex, c.clone());
                (c, External { end, sign: 1 })
            })
            .collect();
        let mut d = SpliceDiagram::default();
        d.vertices.insert(vertex.to_owned(), label);
        d.externals = externals;
        d
    }

    /// Verifies the structural invariants: every component consumed exactly
    /// once, ids unique, underlying graph a forest.
    pub fn check(&self) -> Result<()> {
        let mut used: BTreeMap<&End, String> = BTreeMap::new();
        let ends = self
            .edges
            .values()
            .flat_map(|e| e.ends.iter().map(move |end| (end, e.id.clone())))
            .chain(self.externals.iter().map(|(l, x)| (&x.end, l.clone())));
        for (end, owner) in ends {
            let label = self
                .vertices
                .get(&end.vertex)
                .ok_or_else(|| Error::UnknownVertex(end.vertex.clone()))?;
            if !label.has_component(&end.comp) {
                return Err(Error::DanglingComponent(format!(
                    "{owner} refers to {end}, but {label} has no component {:?}",
                    end.comp
                )));
            }
            if let Some(prev) = used.insert(end, owner.clone()) {
                return Err(Error::DanglingComponent(format!(
                    "{end} is used by both {prev} and {owner}"
                )));
            }
        }
        for (id, label) in &self.vertices {
            for c in label.components() {
                let end = End::new(id.clone(), c);
                if !used.contains_key(&end) {
                    return Err(Error::DanglingComponent(format!("{end} is not consumed")));
                }
            }
        }
        for id in self.externals.keys() {
            if self.edges.contains_key(id) {
                return Err(Error::DuplicateLabel(id.clone()));
            }
        }
        // union-find for cycles
        let mut parent: BTreeMap<&str, &str> =
            self.vertices.keys().map(|v| (v.as_str(), v.as_str())).collect();
        fn root<'a>(p: &BTreeMap<&'a str, &'a str>, mut v: &'a str) -> &'a str {
            while p[v] != v {
                v = p[v];
            }
            v
        }
        for e in self.edges.values() {
            let a = root(&parent, &e.ends[0].vertex);
            let b = root(&parent, &e.ends[1].vertex);
            if a == b {
                return Err(Error::Cycle(e.id.clone()));
            }
            parent.insert(a, b);
        }
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeMap<String, LinkLabel> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<String, Edge> {
        &self.edges
    }

    pub fn externals(&self) -> &BTreeMap<String, External> {
        &self.externals
    }

    pub fn external_labels(&self) -> IndexSet {
        self.externals.keys().cloned().collect()
    }

    pub fn label(&self, v: &str) -> Result<&LinkLabel> {
        self.vertices
            .get(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_owned()))
    }

    pub fn edge(&self, id: &str) -> Result<&Edge> {
        self.edges.get(id).ok_or_else(|| Error::UnknownEdge(id.to_owned()))
    }

    pub fn external(&self, label: &str) -> Result<&External> {
        self.externals
            .get(label)
            .ok_or_else(|| Error::UnknownExternal(label.to_owned()))
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Component → consumer, for every component of `v`.
    pub fn ports(&self, v: &str) -> BTreeMap<String, Port> {
        let mut out = BTreeMap::new();
        for e in self.edges.values() {
            for (side, end) in e.ends.iter().enumerate() {
                if end.vertex == v {
                    out.insert(
                        end.comp.clone(),
                        Port::Edge {
                            id: e.id.clone(),
                            side,
                        },
                    );
                }
            }
        }
        for (l, x) in &self.externals {
            if x.end.vertex == v {
                out.insert(x.end.comp.clone(), Port::External(l.clone()));
            }
        }
        out
    }

    pub fn port(&self, end: &End) -> Option<Port> {
        self.ports(&end.vertex).remove(&end.comp)
    }

    /// Edges at `v` as `(edge, side of v)`.
    pub fn incident(&self, v: &str) -> Vec<(&Edge, usize)> {
        let mut out = Vec::new();
        for e in self.edges.values() {
            for side in 0..2 {
                if e.ends[side].vertex == v {
                    out.push((e, side));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: &str) -> usize {
        self.incident(v).len()
    }

    /// Vertices reachable from `start` inside `within` without crossing
    /// `avoid`.
    pub(crate) fn reach(
        &self,
        start: &str,
        within: Option<&BTreeSet<String>>,
        avoid: Option<&str>,
    ) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([start.to_owned()]);
        seen.insert(start.to_owned());
        while let Some(v) = queue.pop_front() {
            for (e, side) in self.incident(&v) {
                if Some(e.id.as_str()) == avoid {
                    continue;
                }
                let w = &e.ends[1 - side].vertex;
                if within.is_some_and(|s| !s.contains(w)) {
                    continue;
                }
                if seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
        }
        seen
    }

    /// The vertex set on the `side` of edge `id` (the tree containing
    /// `ends[side]` once the edge is cut).
    pub fn side_vertices(&self, id: &str, side: usize) -> Result<BTreeSet<String>> {
        let e = self.edge(id)?;
        Ok(self.reach(&e.ends[side].vertex, None, Some(id)))
    }

    /// Vertex sets of the connected components, ordered by least vertex id.
    pub fn connected_components(&self) -> Vec<BTreeSet<String>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices.keys() {
            if seen.contains(v) {
                continue;
            }
            let comp = self.reach(v, None, None);
            seen.extend(comp.iter().cloned());
            out.push(comp);
        }
        out
    }

    pub fn vertex_of_external(&self, label: &str) -> Result<&str> {
        Ok(&self.external(label)?.end.vertex)
    }

    // ---- mutation helpers used by the engine; callers restore invariants ----

    pub(crate) fn fresh_id(&self, prefix: &str) -> String {
        self.fresh_id_avoiding(prefix, &BTreeSet::new())
    }

    pub(crate) fn fresh_id_avoiding(&self, prefix: &str, avoid: &BTreeSet<String>) -> String {
        (0..)
            .map(|i| format!("{prefix}{i}"))
            .find(|c| {
                !self.vertices.contains_key(c)
                    && !self.edges.contains_key(c)
                    && !self.externals.contains_key(c)
                    && !avoid.contains(c)
            })
            .unwrap()
    }

    pub(crate) fn insert_vertex(&mut self, id: String, label: LinkLabel) {
        self.vertices.insert(id, label);
    }

    pub(crate) fn remove_vertex(&mut self, id: &str) -> Option<LinkLabel> {
        self.vertices.remove(id)
    }

    pub(crate) fn insert_edge(&mut self, e: Edge) {
        self.edges.insert(e.id.clone(), e);
    }

    pub(crate) fn remove_edge(&mut self, id: &str) -> Option<Edge> {
        self.edges.remove(id)
    }

    #[cfg(test)]
    pub(crate) fn edge_mut(&mut self, id: &str) -> Option<&mut Edge> {
        self.edges.get_mut(id)
    }

    pub(crate) fn insert_external(&mut self, label: String, end: End, sign: i8) {
        self.externals.insert(label, External { end, sign });
    }

    pub(crate) fn remove_external(&mut self, label: &str) -> Option<External> {
        self.externals.remove(label)
    }

    pub(crate) fn set_external_sign(&mut self, label: &str, sign: i8) {
        if let Some(x) = self.externals.get_mut(label) {
            x.sign = sign;
        }
    }

    /// Points `port` at `end`, keeping its sign unless `sign` is given.
    pub(crate) fn attach(&mut self, port: &Port, end: End, sign: Option<i8>) {
        match port {
            Port::Edge { id, side } => {
                let e = self.edges.get_mut(id).expect("port edge exists");
                e.ends[*side] = end;
                if let Some(s) = sign {
                    e.signs[*side] = s;
                }
            }
            Port::External(l) => {
                let x = self.externals.get_mut(l).expect("port external exists");
                x.end = end;
                if let Some(s) = sign {
                    x.sign = s;
                }
            }
        }
    }

    pub(crate) fn port_sign(&self, port: &Port) -> i8 {
        match port {
            Port::Edge { id, side } => self.edges[id].signs[*side],
            Port::External(l) => self.externals[l].sign,
        }
    }

    /// Relabels vertex `v`, renaming its ports by `map` (old → new
    /// component). Ports of components absent from `map` must already have
    /// been detached.
    pub(crate) fn relabel(&mut self, v: &str, label: LinkLabel, map: &CompMap) {
        for (comp, port) in self.ports(v) {
            let new = map
                .get(&comp)
                .unwrap_or_else(|| panic!("component {comp} of {v} has no image"))
                .clone();
            self.attach(&port, End::new(v, new), None);
        }
        self.vertices.insert(v.to_owned(), label);
    }

    pub(crate) fn rename_external(&mut self, from: &str, to: String) {
        if let Some(x) = self.externals.remove(from) {
            self.externals.insert(to, x);
        }
    }

    pub fn clear_orientations(&mut self) {
        for e in self.edges.values_mut() {
            e.orient = None;
        }
    }

    pub(crate) fn set_orientation(&mut self, id: &str, o: Option<Orientation>) {
        if let Some(e) = self.edges.get_mut(id) {
            e.orient = o;
        }
    }

    /// Renames every vertex and edge id through `vmap`/`emap` (ids absent
    /// from the maps are kept).
    pub fn renamed(
        &self,
        vmap: &BTreeMap<String, String>,
        emap: &BTreeMap<String, String>,
        xmap: &BTreeMap<String, String>,
    ) -> Self {
        let rv = |v: &String| vmap.get(v).cloned().unwrap_or_else(|| v.clone());
        let re = |e: &End| End::new(rv(&e.vertex), e.comp.clone());
        SpliceDiagram {
            vertices: self.vertices.iter().map(|(k, l)| (rv(k), l.clone())).collect(),
            edges: self
                .edges
                .values()
                .map(|e| {
                    let id = emap.get(&e.id).cloned().unwrap_or_else(|| e.id.clone());
                    let ne = Edge {
                        id: id.clone(),
                        ends: [re(&e.ends[0]), re(&e.ends[1])],
                        orient: e.orient,
                        signs: e.signs,
                    };
                    (id, ne)
                })
                .collect(),
            externals: self
                .externals
                .iter()
                .map(|(l, x)| {
                    let nl = xmap.get(l).cloned().unwrap_or_else(|| l.clone());
                    (
                        nl,
                        External {
                            end: re(&x.end),
                            sign: x.sign,
                        },
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for SpliceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, label) in &self.vertices {
            writeln!(f, "vertex {id}: {label}")?;
        }
        for e in self.edges.values() {
            let arrow = match e.orient {
                None => "?-?",
                Some(Orientation::Unoriented) => "---",
                Some(Orientation::To0) => "<--",
                Some(Orientation::To1) => "-->",
            };
            writeln!(f, "edge {}: {} {arrow} {}", e.id, e.ends[0], e.ends[1])?;
        }
        for (l, x) in &self.externals {
            writeln!(f, "external {l}: {}", x.end)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkLabel {
        LinkLabel::torus(2, 3).unwrap()
    }

    #[test]
    fn single_vertex() {
        let d = SpliceDiagram::build(
            vec![("v".into(), trefoil())],
            vec![],
            vec![("*".into(), End::new("v", "f0"))],
        )
        .unwrap();
        assert_eq!(d.external_labels().len(), 1);
    }

    #[test]
    fn dangling_component() {
        let err = SpliceDiagram::build(
            vec![("a".into(), trefoil()), ("b".into(), trefoil())],
            vec![Edge::new("e", End::new("a", "f0"), End::new("b", "s1"))],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DanglingComponent(_)));
    }

    #[test]
    fn cycle() {
        let u3 = || LinkLabel::Unlink(2);
        let err = SpliceDiagram::build(
            vec![("a".into(), u3()), ("b".into(), u3()), ("c".into(), u3())],
            vec![
                Edge::new("x", End::new("a", "u0"), End::new("b", "u0")),
                Edge::new("y", End::new("b", "u1"), End::new("c", "u0")),
                Edge::new("z", End::new("c", "u1"), End::new("a", "u1")),
            ],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
    }

    #[test]
    fn duplicate_labels() {
        let err = SpliceDiagram::build(
            vec![("a".into(), LinkLabel::Unlink(2))],
            vec![],
            vec![("x".into(), End::new("a", "u0")), ("x".into(), End::new("a", "u1"))],
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("x".into()));
    }
}
