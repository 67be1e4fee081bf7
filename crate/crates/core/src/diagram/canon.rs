//! Canonical strings for diagrams up to equivalence: graph isomorphism,
//! isotopy of vertex labels (including declared atom symmetries) and paired
//! sign flips, which are simply ignored.
//!
//! Each tree is encoded AHU-style from its centroid (the smaller encoding
//! when there are two centroids); tree encodings are sorted.

use std::collections::{BTreeMap, BTreeSet};

use super::{Orientation, Port, SpliceDiagram};
use crate::links::seifert::{STAR1, STAR2};
use crate::links::LinkLabel;

const VERSION: &str = "sg1";

pub fn canonical_form(d: &SpliceDiagram) -> String {
    let mut trees: Vec<String> = d
        .connected_components()
        .iter()
        .map(|verts| {
            centroids(d, verts)
                .into_iter()
                .map(|c| encode(d, &c, None))
                .min()
                .unwrap()
        })
        .collect();
    trees.sort();
    format!("{VERSION}:{}", trees.join(";"))
}

pub fn equivalent(d1: &SpliceDiagram, d2: &SpliceDiagram) -> bool {
    canonical_form(d1) == canonical_form(d2)
}

fn centroids(d: &SpliceDiagram, verts: &BTreeSet<String>) -> Vec<String> {
    let n = verts.len();
    let mut best = usize::MAX;
    let mut out = Vec::new();
    for v in verts {
        // largest piece left after removing v
        let worst = d
            .incident(v)
            .into_iter()
            .map(|(e, side)| d.reach(&e.ends[1 - side].vertex, None, Some(&e.id)).len())
            .max()
            .unwrap_or(0);
        debug_assert!(worst < n);
        match worst.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = worst;
                out = vec![v.clone()];
            }
            std::cmp::Ordering::Equal => out.push(v.clone()),
            std::cmp::Ordering::Greater => {}
        }
    }
    out
}

fn encode(d: &SpliceDiagram, v: &str, parent: Option<&str>) -> String {
    let label = &d.vertices()[v];
    let (canon, map) = label.canonical();
    let mut ports: BTreeMap<String, String> = BTreeMap::new();
    for (comp, port) in d.ports(v) {
        let s = match &port {
            Port::External(l) => format!("x:{}", serde_json::to_string(l).unwrap()),
            Port::Edge { id, .. } if Some(id.as_str()) == parent => "^".to_string(),
            Port::Edge { id, side } => {
                let e = &d.edges()[id];
                let o = match e.orient {
                    None => '?',
                    Some(Orientation::Unoriented) => '-',
                    Some(o) if o == Orientation::toward(*side) => '<',
                    Some(_) => '>',
                };
                format!("e{o}{}", encode(d, &e.ends[1 - side].vertex, Some(id)))
            }
        };
        ports.insert(map[&comp].clone(), s);
    }
    let take = |name: &str| ports.get(name).cloned().unwrap_or_default();
    let sorted = |mut v: Vec<String>| {
        v.sort();
        v.join("|")
    };
    let body = match &canon {
        LinkLabel::Seifert(s) => {
            let fibres: Vec<String> = (0..s.fibre_count())
                .map(|i| take(&format!("f{i}")))
                .collect();
            let mut body = format!("f=<{}>", sorted(fibres));
            if s.stars().star1 {
                body += &format!(";s1={}", take(STAR1));
            }
            if s.stars().star2 {
                body += &format!(";s2={}", take(STAR2));
            }
            body
        }
        LinkLabel::KeyChain(k) => {
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            for i in 0..k.keys() as usize {
                let p = take(&format!("k{i}"));
                if k.key_is_negative(i) {
                    neg.push(p)
                } else {
                    pos.push(p)
                }
            }
            format!("r={};k+=<{}>;k-=<{}>", take("r"), sorted(pos), sorted(neg))
        }
        LinkLabel::Unlink(_) => format!("u=<{}>", sorted(ports.values().cloned().collect())),
        LinkLabel::Atom(a) => {
            let rec = a.record();
            rec.symmetry_group()
                .iter()
                .map(|sym| {
                    (0..rec.components.len())
                        .map(|i| take(&rec.components[sym.perm[i]]))
                        .collect::<Vec<_>>()
                        .join("|")
                })
                .min()
                .unwrap_or_default()
        }
    };
    format!("{canon}{{{body}}}")
}
