//! The elementary reductions turning a splice diagram into a companionship
//! graph:
//!
//! 1. a regular fibre of `S(a,b|X)` spliced to `*1` of `S(p,q|{*1})` with
//!    `q/p = a′b′` merges into `S((g_ab + g_pq − 1)(a′,b′)|X)`;
//! 2. `*1` of `S(p,q|X∪{*1})` spliced to `*2` of `S(a,b|Z∪{*2})` with
//!    `p/q = a/b` merges into `S((g_ab + g_pq)(a′,b′)|(X∖{*1})∪(Z∖{*2}))`;
//! 3. a key of `H^p` spliced to the keyring of `H^q` merges into `H^{p+q−1}`;
//! 4. a Hopf-link vertex disappears, its other port moving to its neighbour;
//! 5. an unknot vertex deletes the component it is spliced to;
//!
//! plus splitting of split vertices. Rules 1–3 fire exactly when the fibre
//! slopes across the edge are reciprocal; each is matched over all
//! presentations of the two Seifert labels.

use std::collections::{BTreeMap, BTreeSet};

use crate::atomdb::AtomDb;
use crate::diagram::{self, ops, End, SpliceDiagram};
use crate::error::{Error, Result};
use crate::links::label::{key_name, KEYRING};
use crate::links::seifert::{fibre_index, fibre_name};
use crate::links::{CompMap, KeyChain, LinkLabel, SeifertParam, Stars};

const MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rewrite {
    /// Rules 1–3 on an edge.
    Fuse { edge: String, rule: u8 },
    /// Rule 4: drop Hopf vertex `vertex` through `edge`.
    Hopf { vertex: String, edge: String },
    /// Rule 5: unknot `vertex` deletes the component across `edge`.
    Unknot { vertex: String, edge: String },
    Split { vertex: String },
}

impl Rewrite {
    pub fn rule(&self) -> u8 {
        match self {
            Rewrite::Fuse { rule, .. } => *rule,
            Rewrite::Hopf { .. } => 4,
            Rewrite::Unknot { .. } => 5,
            Rewrite::Split { .. } => 6,
        }
    }

    fn vertices<'a>(&'a self, d: &'a SpliceDiagram) -> Vec<&'a str> {
        match self {
            Rewrite::Fuse { edge, .. } => d.edges()[edge]
                .ends
                .iter()
                .map(|e| e.vertex.as_str())
                .collect(),
            Rewrite::Hopf { vertex, .. }
            | Rewrite::Unknot { vertex, .. }
            | Rewrite::Split { vertex } => vec![vertex.as_str()],
        }
    }
}

/// How two Seifert vertices merge across an edge.
struct SeifertMerge {
    rule: u8,
    /// the vertex whose parameters (and id) survive
    keep: usize,
    label: SeifertParam,
    /// per side: original component → component of the merged label
    maps: [CompMap; 2],
}

fn seifert_merge(
    s: [&SeifertParam; 2],
    comps: [&str; 2],
) -> Option<SeifertMerge> {
    // rule 1: side `i` regular fibre, side `j` has presentation S(p,q|{*1})
    for (i, j) in [(0, 1), (1, 0)] {
        let Some((pu, mu)) = s[i].regular_presentation(comps[i]) else { continue };
        let Some((pw, mw)) = s[j].star1_presentation(comps[j]) else { continue };
        if pw.stars() != Stars::ONE {
            continue;
        }
        let (a1, b1) = (pu.p_prime(), pu.q_prime());
        if pw.q() != pw.p() * a1 * b1 {
            continue;
        }
        let k = (pu.fibre_count() + pw.fibre_count() - 1) as i64;
        let label = SeifertParam::new(k * a1, k * b1, pu.stars()).ok()?;
        let joined = fibre_index(&mu[comps[i]])?;
        let mut map_u = CompMap::new();
        for (orig, pres) in &mu {
            if orig == comps[i] {
                continue;
            }
            match fibre_index(pres) {
                Some(f) => {
                    let idx = if f > joined { f - 1 } else { f };
                    map_u.insert(orig.clone(), fibre_name(idx));
                }
                None => {
                    map_u.insert(orig.clone(), pres.clone());
                }
            }
        }
        let offset = pu.fibre_count() - 1;
        let mut map_w = CompMap::new();
        for (orig, pres) in &mw {
            if orig == comps[j] {
                continue;
            }
            let f = fibre_index(pres).expect("S(p,q|{*1}) has only regular fibres besides *1");
            map_w.insert(orig.clone(), fibre_name(offset + f));
        }
        let mut maps = [CompMap::new(), CompMap::new()];
        maps[i] = map_u;
        maps[j] = map_w;
        return Some(SeifertMerge {
            rule: 1,
            keep: i,
            label,
            maps,
        });
    }
    // rule 2: side `i` as *1, side `j` as *2
    for (i, j) in [(0, 1), (1, 0)] {
        let Some((pu, mu)) = s[i].star1_presentation(comps[i]) else { continue };
        let Some((pw, mw)) = s[j].star2_presentation(comps[j]) else { continue };
        if pu.p() * pw.q() != pu.q() * pw.p() {
            continue;
        }
        let k = (pu.fibre_count() + pw.fibre_count()) as i64;
        let stars = Stars {
            star1: pw.stars().star1,
            star2: pu.stars().star2,
        };
        let label = SeifertParam::new(k * pw.p_prime(), k * pw.q_prime(), stars).ok()?;
        let mut map_u = CompMap::new();
        for (orig, pres) in &mu {
            if orig == comps[i] {
                continue;
            }
            map_u.insert(orig.clone(), pres.clone()); // fibres f0.., and possibly s2
        }
        let offset = pu.fibre_count();
        let mut map_w = CompMap::new();
        for (orig, pres) in &mw {
            if orig == comps[j] {
                continue;
            }
            let new = match fibre_index(pres) {
                Some(f) => fibre_name(offset + f),
                None => pres.clone(), // s1
            };
            map_w.insert(orig.clone(), new);
        }
        let mut maps = [CompMap::new(), CompMap::new()];
        maps[i] = map_u;
        maps[j] = map_w;
        return Some(SeifertMerge {
            rule: 2,
            keep: j,
            label,
            maps,
        });
    }
    None
}

fn reciprocal_slopes(a: &LinkLabel, ca: &str, b: &LinkLabel, cb: &str) -> bool {
    match (a.fibre_slope(ca), b.fibre_slope(cb)) {
        (Ok(x), Ok(y)) => x.is_reciprocal_of(&y),
        _ => false,
    }
}

fn fusion_rule(d: &SpliceDiagram, edge: &str) -> Result<Option<u8>> {
    let e = &d.edges()[edge];
    let l = [&d.vertices()[&e.ends[0].vertex], &d.vertices()[&e.ends[1].vertex]];
    let c = [e.ends[0].comp.as_str(), e.ends[1].comp.as_str()];
    if l.iter().any(|x| x.is_atom() || x.is_unknot() || x.is_hopf()) {
        return Ok(None);
    }
    if !reciprocal_slopes(l[0], c[0], l[1], c[1]) {
        return Ok(None);
    }
    match (l[0], l[1]) {
        (LinkLabel::Seifert(a), LinkLabel::Seifert(b)) => {
            Ok(seifert_merge([a, b], c).map(|m| m.rule))
        }
        (LinkLabel::KeyChain(a), LinkLabel::KeyChain(b)) => {
            let (key_side, ring_side) = if c[1] == KEYRING { (a, b) } else { (b, a) };
            let uniform = |k: &KeyChain| k.neg() == 0 || k.neg() == k.keys();
            let same = key_side.is_right_handed() == ring_side.is_right_handed();
            if uniform(key_side) && uniform(ring_side) && same {
                Ok(Some(3))
            } else {
                Err(Error::UnsupportedMixedKeychain(edge.to_owned()))
            }
        }
        _ => Ok(None),
    }
}

/// Every rewrite applicable to `d`, in a deterministic order.
pub fn applicable_rewrites(d: &SpliceDiagram) -> Result<Vec<Rewrite>> {
    let mut out = BTreeSet::new();
    for (v, label) in d.vertices() {
        if label.is_split() {
            out.insert(Rewrite::Split { vertex: v.clone() });
        }
    }
    for e in d.edges().values() {
        for side in 0..2 {
            let v = &e.ends[side].vertex;
            let label = &d.vertices()[v];
            if label.is_unknot() {
                out.insert(Rewrite::Unknot {
                    vertex: v.clone(),
                    edge: e.id.clone(),
                });
            } else if label.is_hopf() {
                out.insert(Rewrite::Hopf {
                    vertex: v.clone(),
                    edge: e.id.clone(),
                });
            }
        }
        if let Some(rule) = fusion_rule(d, &e.id)? {
            out.insert(Rewrite::Fuse {
                edge: e.id.clone(),
                rule,
            });
        }
    }
    Ok(out.into_iter().collect())
}

/// Applies one rewrite. Orientations of the result are left unmarked.
pub fn apply_rewrite(d: &SpliceDiagram, rw: &Rewrite, db: &AtomDb) -> Result<SpliceDiagram> {
    let mut out = d.clone();
    out.clear_orientations();
    match rw {
        Rewrite::Split { vertex } => return ops::split_at(&out, vertex),
        Rewrite::Unknot { vertex, edge } => {
            let e = out.remove_edge(edge).ok_or_else(|| Error::UnknownEdge(edge.clone()))?;
            let side = e.side_of(vertex).expect("unknot vertex is on the edge");
            out.remove_vertex(vertex);
            ops::delete_detached(&mut out, &e.ends[1 - side], db)?;
        }
        Rewrite::Hopf { vertex, edge } => {
            let label = out.label(vertex)?.clone();
            let e = out.remove_edge(edge).ok_or_else(|| Error::UnknownEdge(edge.clone()))?;
            let side = e.side_of(vertex).expect("Hopf vertex is on the edge");
            let here = &e.ends[side].comp;
            let comps = label.components();
            let other = comps.iter().find(|c| *c != here).expect("Hopf link has two components");
            let lk = label.linking_number(here, other)?;
            let port = out
                .port(&End::new(vertex.clone(), other.clone()))
                .expect("every component is consumed");
            let sign = out.port_sign(&port) * e.signs[0] * e.signs[1] * lk.signum() as i8;
            out.remove_vertex(vertex);
            out.attach(&port, e.ends[1 - side].clone(), Some(sign));
        }
        Rewrite::Fuse { edge, rule } => {
            let e = out.edge(edge)?.clone();
            let ends = [&e.ends[0], &e.ends[1]];
            let labels = [out.label(&ends[0].vertex)?.clone(), out.label(&ends[1].vertex)?.clone()];
            let comps = [ends[0].comp.as_str(), ends[1].comp.as_str()];
            let (keep, label, maps) = match (&labels[0], &labels[1], rule) {
                (LinkLabel::Seifert(a), LinkLabel::Seifert(b), 1 | 2) => {
                    let m = seifert_merge([a, b], comps)
                        .filter(|m| m.rule == *rule)
                        .ok_or_else(|| Error::InvalidParameter(format!("rule {rule} does not apply at {edge}")))?;
                    (m.keep, LinkLabel::Seifert(m.label), m.maps)
                }
                (LinkLabel::KeyChain(a), LinkLabel::KeyChain(b), 3) => {
                    let key_side = if comps[1] == KEYRING { 0 } else { 1 };
                    let (kc, rc) = if key_side == 0 { (a, b) } else { (b, a) };
                    let keys = kc.keys() + rc.keys() - 1;
                    let neg = if kc.is_right_handed() { 0 } else { keys };
                    let mut map_k = CompMap::new();
                    map_k.insert(KEYRING.into(), KEYRING.into());
                    let mut next = 0;
                    for i in 0..kc.keys() as usize {
                        if key_name(i) != comps[key_side] {
                            map_k.insert(key_name(i), key_name(next));
                            next += 1;
                        }
                    }
                    let mut map_r = CompMap::new();
                    for i in 0..rc.keys() as usize {
                        map_r.insert(key_name(i), key_name(next + i));
                    }
                    let mut maps = [CompMap::new(), CompMap::new()];
                    maps[key_side] = map_k;
                    maps[1 - key_side] = map_r;
                    (key_side, LinkLabel::KeyChain(KeyChain::new(keys, neg)?), maps)
                }
                _ => return Err(Error::InvalidParameter(format!("rule {rule} does not apply at {edge}"))),
            };
            out.remove_edge(edge);
            let kept = ends[keep].vertex.clone();
            let gone = ends[1 - keep].vertex.clone();
            let moved = out.ports(&gone);
            out.remove_vertex(&gone);
            out.relabel(&kept, label, &maps[keep]);
            for (comp, port) in moved {
                out.attach(&port, End::new(kept.clone(), maps[1 - keep][&comp].clone()), None);
            }
        }
    }
    Ok(out)
}

/// Picks the next rewrite: leaf-most vertices first, then rule order, then ids.
fn choose<'a>(d: &SpliceDiagram, rws: &'a [Rewrite]) -> &'a Rewrite {
    rws.iter()
        .min_by_key(|rw| {
            let degree = rw
                .vertices(d)
                .iter()
                .map(|v| d.degree(v))
                .min()
                .unwrap_or(0);
            (degree, rw.rule(), (*rw).clone())
        })
        .expect("nonempty")
}

/// Rewrites to normal form (no rule applies), then derives orientations.
pub fn reduce(d: &SpliceDiagram, db: &AtomDb) -> Result<SpliceDiagram> {
    let mut cur = d.clone();
    cur.clear_orientations();
    for _ in 0..MAX_STEPS {
        let rws = applicable_rewrites(&cur)?;
        if rws.is_empty() {
            return diagram::derive_orientations(&cur);
        }
        cur = apply_rewrite(&cur, choose(&cur, &rws), db)?;
    }
    Err(Error::InvalidParameter("reduction did not terminate".into()))
}

/// Canonical forms of all normal forms reachable by any order of rewrites.
/// A confluent system yields exactly one.
pub fn all_normal_forms(d: &SpliceDiagram, db: &AtomDb) -> Result<BTreeSet<String>> {
    fn walk(
        d: &SpliceDiagram,
        db: &AtomDb,
        seen: &mut BTreeMap<String, ()>,
        out: &mut BTreeSet<String>,
    ) -> Result<()> {
        let key = diagram::canonical_form(d);
        if seen.insert(key, ()).is_some() {
            return Ok(());
        }
        let rws = applicable_rewrites(d)?;
        if rws.is_empty() {
            out.insert(diagram::canonical_form(&diagram::derive_orientations(d)?));
            return Ok(());
        }
        for rw in &rws {
            walk(&apply_rewrite(d, rw, db)?, db, seen, out)?;
        }
        Ok(())
    }
    let mut start = d.clone();
    start.clear_orientations();
    let mut out = BTreeSet::new();
    walk(&start, db, &mut BTreeMap::new(), &mut out)?;
    Ok(out)
}
