//! Random inputs: DSL expressions for knots and links, hand-wired reducible
//! diagrams, and single-violation injections into knot trees.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use splicegraph::diagram::{Edge, End, Orientation, SpliceDiagram};
use splicegraph::dsl::parse_label;
use splicegraph::{AtomDb, LinkLabel};

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn sign(rng: &mut StdRng) -> i64 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// A nontrivial torus knot `T(p,q)` with `2 ≤ |p|,|q| ≤ 5`.
pub fn torus(rng: &mut StdRng) -> String {
    loop {
        let p = rng.gen_range(2..=5i64);
        let q = rng.gen_range(2..=5i64);
        if gcd(p, q) == 1 {
            return format!("T({p},{})", q * sign(rng));
        }
    }
}

/// A knot expression with nesting depth at most `depth`.
pub fn knot(rng: &mut StdRng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.35) {
        return if rng.gen_bool(0.7) {
            torus(rng)
        } else {
            "atom(F8)".into()
        };
    }
    match rng.gen_range(0..4) {
        0 => format!("sum({}, {})", knot(rng, depth - 1), knot(rng, depth - 1)),
        1 => {
            let p = rng.gen_range(2..=3i64);
            let q = loop {
                let q = rng.gen_range(1..=7i64) * sign(rng);
                if gcd(p, q) == 1 && q % p != 0 {
                    break q;
                }
            };
            format!("cable({p},{q}, {})", knot(rng, depth - 1))
        }
        2 => format!("whitehead({})", knot(rng, depth - 1)),
        _ => format!(
            "splice(splice(atom(B).comp[1], {}).comp[2], {})",
            knot(rng, depth - 1),
            knot(rng, depth - 1)
        ),
    }
}

/// A link expression: an unknotted-component carrier with knots spliced in.
pub fn link(rng: &mut StdRng) -> String {
    match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(2..=3);
            let mut e = format!("H({n})");
            for i in 0..rng.gen_range(1..=n) {
                e = format!("splice({e}.key[{i}], {})", knot(rng, 1));
            }
            e
        }
        1 => {
            // fibres are unknots (g = 2 with |a| = 1 would be the Hopf
            // link); once one is spliced the others are knotted satellites
            let g = rng.gen_range(2..=3i64);
            let a = rng.gen_range(if g == 2 { 2 } else { 1 }..=3i64) * sign(rng);
            let i = rng.gen_range(0..g);
            format!("splice(S({},{g}).fiber[{i}], {})", a * g, knot(rng, 1))
        }
        2 => {
            let comp = rng.gen_range(0..3);
            format!("splice(atom(B).comp[{comp}], {})", knot(rng, 1))
        }
        3 => {
            let p = rng.gen_range(2..=4i64);
            let q = loop {
                let q = rng.gen_range(2..=5i64) * sign(rng);
                if gcd(p, q) == 1 {
                    break q;
                }
            };
            format!("splice(S({p},{q}|*1,*2).star1, {})", knot(rng, 1))
        }
        _ => format!("splice(atom(W).comp[0], {})", link_or_knot(rng)),
    }
}

fn link_or_knot(rng: &mut StdRng) -> String {
    if rng.gen_bool(0.5) {
        knot(rng, 1)
    } else {
        format!("splice(H(2).key[0], {}).keyring", knot(rng, 1))
    }
}

/// Rebuilds a diagram from parts (external signs reset to +1).
pub fn rebuild(d: &SpliceDiagram, edit: impl FnOnce(&mut Parts)) -> Option<SpliceDiagram> {
    let mut parts = Parts::of(d);
    edit(&mut parts);
    SpliceDiagram::build(parts.vertices, parts.edges, parts.externals).ok()
}

pub struct Parts {
    pub vertices: Vec<(String, LinkLabel)>,
    pub edges: Vec<Edge>,
    pub externals: Vec<(String, End)>,
}

impl Parts {
    pub fn of(d: &SpliceDiagram) -> Self {
        Parts {
            vertices: d.vertices().iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            edges: d.edges().values().cloned().collect(),
            externals: d.externals().iter().map(|(k, x)| (k.clone(), x.end.clone())).collect(),
        }
    }
}

/// Ways to break a valid knot tree.
#[derive(Debug, Clone, Copy)]
pub enum Injection {
    /// a Hopf-link vertex inserted in the middle of an edge
    HopfOnEdge,
    /// a key-chain whose keyring is fed by another key-chain
    KeychainChild,
    /// a leaf replaced by the unknot
    UnknotLeaf,
    /// one stored edge orientation reversed
    FlipEdge,
}

pub const INJECTIONS: [Injection; 4] = [
    Injection::HopfOnEdge,
    Injection::KeychainChild,
    Injection::UnknotLeaf,
    Injection::FlipEdge,
];

fn fresh(taken: &[String], prefix: &str) -> String {
    (0..)
        .map(|i| format!("{prefix}{i}"))
        .find(|c| !taken.contains(c))
        .unwrap()
}

/// Applies `inj` to `tree` at position `pick`. `others` supplies extra
/// knot trees for injections that need more material. `None` when the
/// injection has no site in this tree.
pub fn inject(
    tree: &SpliceDiagram,
    inj: Injection,
    pick: usize,
    others: &[&SpliceDiagram],
    db: &AtomDb,
) -> Option<SpliceDiagram> {
    match inj {
        Injection::HopfOnEdge => {
            let edges: Vec<&Edge> = tree.edges().values().collect();
            if edges.is_empty() {
                return None;
            }
            let e = edges[pick % edges.len()].clone();
            let hopf = parse_label("S(2,2)", db).ok()?;
            rebuild(tree, |p| {
                let taken: Vec<String> = p.vertices.iter().map(|v| v.0.clone()).collect();
                let h = fresh(&taken, "hopf");
                let comps = hopf.components();
                p.vertices.push((h.clone(), hopf));
                p.edges.retain(|x| x.id != e.id);
                let mut a = Edge::new(format!("{}a", e.id), e.ends[0].clone(), End::new(&h, &comps[0]));
                let mut b = Edge::new(format!("{}b", e.id), End::new(&h, &comps[1]), e.ends[1].clone());
                a.orient = e.orient;
                b.orient = e.orient;
                p.edges.push(a);
                p.edges.push(b);
            })
        }
        Injection::KeychainChild => {
            // root H(2): k0 → keyring of a second H(2), k1 → tree; the inner
            // key-chain takes the tree and one other
            let other = others.get(pick % others.len().max(1)).copied().unwrap_or(tree);
            let chain = parse_label("H(2)", db).ok()?;
            let mut p = Parts {
                vertices: vec![("top".into(), chain.clone()), ("inner".into(), chain)],
                edges: vec![Edge::new("link", End::new("top", "k0"), End::new("inner", "r"))
                    .oriented(Orientation::To0)],
                externals: vec![("*".into(), End::new("top", "r"))],
            };
            graft(&mut p, tree, End::new("top", "k1"), "a_");
            graft(&mut p, tree, End::new("inner", "k0"), "b_");
            graft(&mut p, other, End::new("inner", "k1"), "c_");
            SpliceDiagram::build(p.vertices, p.edges, p.externals).ok()
        }
        Injection::UnknotLeaf => {
            if tree.vertices().len() < 2 {
                return None;
            }
            let leaves: Vec<&String> = tree
                .vertices()
                .keys()
                .filter(|v| tree.degree(v) == 1 && !tree.externals().values().any(|x| &x.end.vertex == *v))
                .collect();
            let leaf = leaves[pick % leaves.len()].clone();
            rebuild(tree, |p| {
                for (v, l) in p.vertices.iter_mut() {
                    if *v == leaf {
                        *l = LinkLabel::unknot();
                    }
                }
                for e in p.edges.iter_mut() {
                    for end in e.ends.iter_mut() {
                        if end.vertex == leaf {
                            end.comp = "u0".into();
                        }
                    }
                }
            })
        }
        Injection::FlipEdge => {
            let edges: Vec<&Edge> = tree.edges().values().collect();
            if edges.is_empty() {
                return None;
            }
            let id = edges[pick % edges.len()].id.clone();
            rebuild(tree, |p| {
                for e in p.edges.iter_mut() {
                    if e.id == id {
                        e.orient = e.orient.map(Orientation::reversed);
                    }
                }
            })
        }
    }
}

/// Copies knot tree `t` into `p` with ids prefixed, attaching its root
/// component to `at` with the edge directed toward `at`.
pub fn graft(p: &mut Parts, t: &SpliceDiagram, at: End, prefix: &str) {
    let rv = |v: &str| format!("{prefix}{v}");
    for (v, l) in t.vertices() {
        p.vertices.push((rv(v), l.clone()));
    }
    for e in t.edges().values() {
        let mut ne = e.clone();
        ne.id = rv(&e.id);
        for end in ne.ends.iter_mut() {
            end.vertex = rv(&end.vertex);
        }
        p.edges.push(ne);
    }
    let root = t.externals().values().next().expect("knot tree has a root");
    let id = format!("{prefix}up");
    p.edges
        .push(Edge::new(id, at, End::new(rv(&root.end.vertex), root.end.comp.clone())).oriented(Orientation::To0));
}

/// Label pool for reducible diagrams: pairs from it tend to meet an
/// exceptional-splice rule.
const POOL: &[&str] = &[
    "H(2)", "H(3)", "H(2)", "O", "T(2,3)", "T(3,5)", "S(2,4|*1)", "S(1,2|*2)", "S(2,12|*1)",
    "S(3,6|*2)", "S(4,4)", "S(2,2)", "S(3,5|*1)", "S(1,3|*2)", "T(2,5)", "S(2,3|*1)",
    "S(2,3|*2)", "S(3,5|*1,*2)", "S(3,5|*2)", "U(2)",
];

/// A random tree of 2..=6 pool labels wired on random free components;
/// leftover components are external.
pub fn reducible(rng: &mut StdRng, db: &AtomDb) -> SpliceDiagram {
    loop {
        let n = rng.gen_range(2..=6);
        let mut vertices: Vec<(String, LinkLabel)> = Vec::new();
        let mut free: Vec<(String, Vec<String>)> = Vec::new();
        let mut edges = Vec::new();
        for i in 0..n {
            let label = parse_label(POOL.choose(rng).unwrap(), db).unwrap();
            let v = format!("v{i}");
            let mut comps = label.components();
            comps.shuffle(rng);
            if i > 0 {
                let open: Vec<usize> = (0..free.len()).filter(|&j| !free[j].1.is_empty()).collect();
                let Some(&j) = open.choose(rng) else { break };
                let other = free[j].1.pop().unwrap();
                let mine = comps.pop().unwrap();
                edges.push(Edge::new(
                    format!("e{i}"),
                    End::new(free[j].0.clone(), other),
                    End::new(v.clone(), mine),
                ));
            }
            free.push((v.clone(), comps));
            vertices.push((v, label));
        }
        let externals: Vec<(String, End)> = free
            .iter()
            .flat_map(|(v, cs)| cs.iter().map(move |c| (format!("{v}{c}"), End::new(v.clone(), c.clone()))))
            .collect();
        if let Ok(d) = SpliceDiagram::build(vertices, edges, externals) {
            return d;
        }
    }
}
