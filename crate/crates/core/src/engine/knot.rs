//! Knot trees: validation against the admissible-label list, the standard
//! satellite constructions, and exhaustive enumeration.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::splice::{join, splice};
use crate::atomdb::AtomDb;
use crate::diagram::{self, Orientation, Port, SpliceDiagram};
use crate::error::{Error, Result};
use crate::links::label::KEYRING;
use crate::links::slope::gcd;
use crate::links::{AtomRef, IndexSet, KeyChain, LinkLabel, SeifertParam, Stars};

pub const ROOT: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotTreeViolation {
    /// 1 label not admissible, 2 bad orientation or attachment,
    /// 3 key-chain child of a key-chain, 4 unknot in a larger tree
    pub item: u8,
    pub vertex: String,
    pub message: String,
}

impl fmt::Display for KnotTreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) at {}: {}", self.item, self.vertex, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct KnotTreeReport {
    pub root: String,
    pub violations: Vec<KnotTreeViolation>,
}

impl KnotTreeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether `label` may sit in a knot tree with `up` as its distinguished
/// component (the one facing the root) and all other components as inputs.
pub fn admissible(label: &LinkLabel, up: &str) -> bool {
    if label.is_unknot() {
        return true;
    }
    match label {
        LinkLabel::Seifert(s) => {
            if s.is_hopf() {
                return false;
            }
            match s.component_count() {
                1 => true,
                2 => {
                    let Some(input) = s.components().into_iter().find(|c| c != up) else {
                        return false;
                    };
                    s.star1_presentation(&input)
                        .is_some_and(|(p, _)| p.stars() == Stars::ONE && p.fibre_count() == 1)
                }
                _ => false,
            }
        }
        LinkLabel::KeyChain(k) => k.neg() == 0 && k.keys() >= 2 && up == KEYRING,
        LinkLabel::Atom(a) => {
            let rec = a.record();
            let others: IndexSet = rec.components.iter().filter(|c| *c != up).cloned().collect();
            rec.volume.is_some()
                && rec.distinguished() == Some(up)
                && label.brunnian_contains(&others)
        }
        LinkLabel::Unlink(_) => false,
    }
}

fn admissible_somehow(label: &LinkLabel) -> bool {
    label.components().iter().any(|c| admissible(label, c))
}

/// Checks that a one-external diagram is a valid knot tree.
pub fn validate_knot_tree(d: &SpliceDiagram) -> Result<KnotTreeReport> {
    if d.externals().len() != 1 {
        return Err(Error::NotAKnot(d.externals().len()));
    }
    let (label, ext) = d.externals().iter().next().unwrap();
    let root = ext.end.vertex.clone();
    let mut report = KnotTreeReport {
        root: root.clone(),
        violations: Vec::new(),
    };
    let mut push = |item: u8, vertex: &str, message: String| {
        report.violations.push(KnotTreeViolation {
            item,
            vertex: vertex.to_owned(),
            message,
        })
    };
    if d.reach(&root, None, None).len() != d.vertices().len() {
        push(2, &root, "diagram is not connected".into());
    }
    let derived = match diagram::derive_orientations(d) {
        Ok(x) => Some(x),
        Err(e) => {
            push(2, &root, e.to_string());
            None
        }
    };
    // up component of every vertex, found walking away from the root
    let mut up: BTreeMap<String, (String, Option<String>)> = BTreeMap::new();
    up.insert(root.clone(), (ext.end.comp.clone(), None));
    let mut stack = vec![root.clone()];
    while let Some(v) = stack.pop() {
        for (comp, port) in d.ports(&v) {
            let Port::Edge { id, side } = port else { continue };
            if up[&v].1.as_deref() == Some(id.as_str()) {
                continue;
            }
            let e = &d.edges()[&id];
            let child = &e.ends[1 - side];
            if let Some(dd) = &derived {
                if dd.edges()[&id].orient != Some(Orientation::toward(side)) {
                    push(
                        2,
                        &child.vertex,
                        format!("edge {id} is not oriented toward {v}.{comp}"),
                    );
                }
            }
            if let (LinkLabel::KeyChain(_), LinkLabel::KeyChain(_)) =
                (&d.vertices()[&v], &d.vertices()[&child.vertex])
            {
                push(3, &child.vertex, format!("key-chain child of key-chain {v}"));
            }
            up.insert(child.vertex.clone(), (child.comp.clone(), Some(id.clone())));
            stack.push(child.vertex.clone());
        }
    }
    for (v, l) in d.vertices() {
        let Some((u, _)) = up.get(v) else { continue };
        if !admissible(l, u) {
            if admissible_somehow(l) {
                let what = if *v == root {
                    format!("external {label:?}")
                } else {
                    "the edge toward the root".to_string()
                };
                push(2, v, format!("{what} is attached to {u}, not the distinguished component of {l}"));
            } else {
                push(1, v, format!("{l} is not an admissible knot-tree label"));
            }
        }
        if l.is_unknot() && d.vertices().len() > 1 {
            push(4, v, "unknot vertex in a tree with more than one vertex".into());
        }
    }
    report.violations.sort_by(|a, b| (a.item, &a.vertex).cmp(&(b.item, &b.vertex)));
    Ok(report)
}

fn root_external(d: &SpliceDiagram) -> Result<String> {
    match d.externals().len() {
        1 => Ok(d.externals().keys().next().unwrap().clone()),
        n => Err(Error::NotAKnot(n)),
    }
}

fn with_root(mut d: SpliceDiagram, from: &str) -> SpliceDiagram {
    if from != ROOT {
        d.rename_external(from, ROOT.into());
    }
    d
}

/// Connected sum: an `H^n` root whose keyring carries `*`.
pub fn connected_sum(knots: &[SpliceDiagram], db: &AtomDb) -> Result<SpliceDiagram> {
    match knots {
        [] => Err(Error::InvalidParameter("connected sum of no knots".into())),
        [k] => {
            let x = root_external(k)?;
            Ok(with_root(k.clone(), &x))
        }
        _ => {
            let n = knots.len() as u32;
            let mut d = SpliceDiagram::single("v0", LinkLabel::KeyChain(KeyChain::right(n)?));
            d.rename_external(KEYRING, ROOT.into());
            for (i, k) in knots.iter().enumerate() {
                let x = root_external(k)?;
                d = splice(&d, &crate::links::label::key_name(i), k, &x, db)?;
            }
            Ok(d)
        }
    }
}

/// The `(p,q)`-cable: `S(p,q|{*1})` with `*` on the fibre and the companion
/// spliced into `*1`.
pub fn cable(p: i64, q: i64, knot: &SpliceDiagram, db: &AtomDb) -> Result<SpliceDiagram> {
    if p == 0 || q == 0 || gcd(p, q) != 1 || q % p == 0 {
        return Err(Error::InvalidParameter(format!(
            "cable({p},{q}) needs gcd(p,q) = 1 and p not dividing q"
        )));
    }
    let x = root_external(knot)?;
    let mut d = SpliceDiagram::single("v0", LinkLabel::Seifert(SeifertParam::new(p, q, Stars::ONE)?));
    d.rename_external("f0", ROOT.into());
    splice(&d, "s1", knot, &x, db)
}

/// The Whitehead double: atom `W` with `*` on component `0`.
pub fn whitehead_double(knot: &SpliceDiagram, db: &AtomDb) -> Result<SpliceDiagram> {
    let x = root_external(knot)?;
    let mut d = SpliceDiagram::single("v0", LinkLabel::Atom(AtomRef(db.lookup("W")?)));
    d.rename_external("0", ROOT.into());
    splice(&d, "1", knot, &x, db)
}

#[derive(Clone)]
struct Candidate {
    label: LinkLabel,
    dist: String,
    inputs: Vec<String>,
}

impl Candidate {
    fn key(&self) -> String {
        let mut d = SpliceDiagram::single("v", self.label.clone());
        d.rename_external(&self.dist, ROOT.into());
        for c in &self.inputs {
            d.rename_external(c, format!("in:{c}"));
        }
        // inputs of a candidate are interchangeable in enumeration
        let xmap: BTreeMap<String, String> = self
            .inputs
            .iter()
            .map(|c| (format!("in:{c}"), "in".to_string()))
            .collect();
        if self.inputs.len() == 1 {
            diagram::canonical_form(&d.renamed(&BTreeMap::new(), &BTreeMap::new(), &xmap))
        } else {
            format!("{}#{}", diagram::canonical_form(&d), self.dist)
        }
    }
}

fn candidates(max_vertices: usize, bound: i64, db: &AtomDb) -> Vec<Candidate> {
    let mut out: BTreeMap<String, Candidate> = BTreeMap::new();
    let mut add = |c: Candidate| {
        out.entry(c.key()).or_insert(c);
    };
    for p in 2..=bound {
        for q in -bound..=bound {
            if q.abs() >= 2 && gcd(p, q) == 1 {
                let label = LinkLabel::torus(p, q).unwrap();
                let dist = label.components()[0].clone();
                add(Candidate { label, dist, inputs: vec![] });
            }
        }
    }
    if max_vertices >= 2 {
        for p in -bound..=bound {
            for q in -bound..=bound {
                if p.abs() >= 2 && q != 0 && gcd(p, q) == 1 && q % p != 0 {
                    let label = LinkLabel::Seifert(SeifertParam::new(p, q, Stars::ONE).unwrap());
                    add(Candidate {
                        label,
                        dist: "f0".into(),
                        inputs: vec!["s1".into()],
                    });
                }
            }
        }
        for k in 2..max_vertices as u32 {
            add(Candidate {
                label: LinkLabel::KeyChain(KeyChain::right(k).unwrap()),
                dist: KEYRING.into(),
                inputs: KeyChain::right(k).unwrap().components()[1..].to_vec(),
            });
        }
    }
    for rec in db.records() {
        let label = LinkLabel::Atom(AtomRef(rec.clone()));
        let Some(b) = rec.distinguished() else { continue };
        if rec.components.len() <= max_vertices && admissible(&label, b) {
            let inputs = rec.components.iter().filter(|c| *c != b).cloned().collect();
            add(Candidate {
                dist: b.to_owned(),
                label,
                inputs,
            });
        }
    }
    out.into_values().collect()
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn assemble(c: &Candidate, children: &[&SpliceDiagram]) -> Result<SpliceDiagram> {
    let mut d = SpliceDiagram::single("v0", c.label.clone());
    for (input, child) in c.inputs.iter().zip(children) {
        let (joined, e, _) = join(&d, input, child, ROOT)?;
        d = joined;
        d.set_orientation(&e, Some(Orientation::To0));
    }
    d.rename_external(&c.dist, ROOT.into());
    Ok(d)
}

/// All valid knot trees with at most `max_vertices` vertices, using torus
/// and cable parameters with `|p|, |q| ≤ bound` and the atoms of `db`,
/// up to equivalence and sorted by canonical form.
pub fn enumerate_knot_trees(
    max_vertices: usize,
    bound: i64,
    db: &AtomDb,
) -> Result<Vec<(String, SpliceDiagram)>> {
    let cands = candidates(max_vertices, bound, db);
    // by_size[n]: trees with exactly n vertices, with whether the root is a key-chain
    let mut by_size: Vec<Vec<(SpliceDiagram, bool)>> = vec![Vec::new()];
    let mut all: BTreeMap<String, SpliceDiagram> = BTreeMap::new();
    if max_vertices >= 1 {
        let mut o = SpliceDiagram::single("v0", LinkLabel::unknot());
        let c = o.externals().keys().next().unwrap().clone();
        o.rename_external(&c, ROOT.into());
        all.insert(diagram::canonical_form(&o), o);
    }
    for n in 1..=max_vertices {
        let mut level: BTreeMap<String, (SpliceDiagram, bool)> = BTreeMap::new();
        for c in &cands {
            let k = c.inputs.len();
            if (k == 0) != (n == 1) {
                continue;
            }
            let is_chain = matches!(c.label, LinkLabel::KeyChain(_));
            for comp in compositions(n - 1, k) {
                let pools: Vec<Vec<&SpliceDiagram>> = comp
                    .iter()
                    .map(|&size| {
                        by_size[size]
                            .iter()
                            .filter(|(_, chain)| !(is_chain && *chain))
                            .map(|(d, _)| d)
                            .collect()
                    })
                    .collect();
                let mut idx = vec![0usize; k];
                if pools.iter().any(|p| p.is_empty()) {
                    continue;
                }
                loop {
                    let children: Vec<&SpliceDiagram> =
                        idx.iter().zip(&pools).map(|(&i, p)| p[i]).collect();
                    let d = assemble(c, &children)?;
                    let key = diagram::canonical_form(&diagram::derive_orientations(&d)?);
                    level.entry(key).or_insert((d, is_chain));
                    // odometer
                    let mut j = 0;
                    while j < k {
                        idx[j] += 1;
                        if idx[j] < pools[j].len() {
                            break;
                        }
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == k {
                        break;
                    }
                }
            }
        }
        let mut trees = Vec::new();
        for (key, (d, chain)) in level {
            all.insert(key, d.clone());
            trees.push((d, chain));
        }
        by_size.push(trees);
    }
    Ok(all.into_iter().collect())
}
