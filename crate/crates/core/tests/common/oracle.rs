//! Independent reference computations used to check the library.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use splicegraph::diagram::{self, ops, Orientation, SpliceDiagram};
use splicegraph::engine;
use splicegraph::invariants::LaurentPoly;
use splicegraph::links::IndexSet;
use splicegraph::{AtomDb, LinkLabel};

// ---------------------------------------------------------------------------
// Dense integer polynomials: coefficient vectors, lowest degree first.

pub type Dense = Vec<i64>;

pub fn trim(mut p: Dense) -> Dense {
    while p.last() == Some(&0) {
        p.pop();
    }
    let lead = p.iter().position(|&c| c != 0).unwrap_or(p.len());
    p.drain(..lead);
    if p.last().is_some_and(|&c| c < 0) {
        p.iter_mut().for_each(|c| *c = -*c);
    }
    p
}

pub fn mul(a: &[i64], b: &[i64]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p(t^k)` for `k ≥ 0`; with `k < 0` the result is reflected, which is the
/// same up to units.
pub fn subst(p: &[i64], k: i64) -> Dense {
    if k == 0 {
        return vec![p.iter().sum()];
    }
    let k = k.unsigned_abs() as usize;
    let mut out = vec![0; (p.len() - 1) * k + 1];
    for (i, c) in p.iter().enumerate() {
        out[i * k] = *c;
    }
    out
}

/// Exact division of integer polynomials; panics on a remainder.
pub fn div(num: &[i64], den: &[i64]) -> Dense {
    let num = trim_zeros(num.to_vec());
    let den = trim_zeros(den.to_vec());
    let lead = *den.last().unwrap();
    let mut rem = num.clone();
    let mut q = vec![0; num.len().saturating_sub(den.len()) + 1];
    while rem.len() >= den.len() && rem.iter().any(|&c| c != 0) {
        let shift = rem.len() - den.len();
        let c = *rem.last().unwrap();
        assert_eq!(c % lead, 0, "inexact division");
        let f = c / lead;
        q[shift] = f;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= f * d;
        }
        rem = trim_zeros(rem);
    }
    assert!(rem.iter().all(|&c| c == 0), "nonzero remainder");
    q
}

fn trim_zeros(mut p: Dense) -> Dense {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn from_laurent(p: &LaurentPoly) -> Dense {
    let lo = p.min_exp().unwrap_or(0);
    let hi = p.max_exp().unwrap_or(-1);
    trim((lo..=hi).map(|e| p.coeff(e)).collect())
}

// ---------------------------------------------------------------------------
// Fox calculus on one-relator presentations.

/// A word in the free group: (generator, ±1) letters.
pub type Word = Vec<(usize, i32)>;

/// Group-ring element after abelianization: Laurent polynomial in t.
type Ring = BTreeMap<i64, i64>;

fn add(r: &mut Ring, e: i64, c: i64) {
    *r.entry(e).or_insert(0) += c;
    if r[&e] == 0 {
        r.remove(&e);
    }
}

/// φ(∂w/∂x_j) where φ sends generator `i` to `t^{weights[i]}`.
pub fn fox_derivative(w: &Word, j: usize, weights: &[i64]) -> Ring {
    let mut out = Ring::new();
    let mut prefix = 0i64; // exponent of φ(prefix)
    for &(g, s) in w {
        if s == 1 {
            if g == j {
                add(&mut out, prefix, 1);
            }
            prefix += weights[g];
        } else {
            prefix -= weights[g];
            if g == j {
                add(&mut out, prefix, -1);
            }
        }
    }
    out
}

fn ring_to_dense(r: &Ring) -> Dense {
    let lo = *r.keys().next().unwrap();
    let hi = *r.keys().last().unwrap();
    (lo..=hi).map(|e| r.get(&e).copied().unwrap_or(0)).collect()
}

/// Alexander polynomial of a knot group `⟨x0, x1 | r⟩` with abelianization
/// weights: `Δ = φ(∂r/∂x1)·(t − 1)/(φ(x0) − 1)`.
pub fn fox_alexander_two_generator(r: &Word, weights: [i64; 2]) -> Dense {
    let d = ring_to_dense(&fox_derivative(r, 1, &weights));
    let num = mul(&d, &[-1, 1]);
    let mut den = vec![0; weights[0].unsigned_abs() as usize + 1];
    den[0] = -1;
    den[weights[0].unsigned_abs() as usize] = 1;
    trim(div(&num, &den))
}

/// Torus knot `T(p,q)` via `⟨x, y | x^p y^{-q}⟩`, `x ↦ t^q`, `y ↦ t^p`.
pub fn fox_torus(p: i64, q: i64) -> Dense {
    let (p, q) = (p.abs(), q.abs());
    let mut r: Word = Vec::new();
    r.extend(std::iter::repeat_n((0, 1), p as usize));
    r.extend(std::iter::repeat_n((1, -1), q as usize));
    fox_alexander_two_generator(&r, [q, p])
}

// ---------------------------------------------------------------------------
// Seifert-link orbits under the defining relations.

/// (p, q, *1, *2)
pub type Tuple = (i64, i64, bool, bool);

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Collapsed class for unknots and Hopf links, decided from component data.
pub fn collapsed(t: Tuple) -> Option<&'static str> {
    let (p, q, s1, s2) = t;
    let g = gcd(p, q);
    let comps = g + s1 as i64 + s2 as i64;
    let (pp, qq) = (p / g, q / g);
    match comps {
        1 if pp.abs() == 1 || qq.abs() == 1 => Some("unknot"),
        2 => {
            // two fibres linking p'q' times, or a fibre and a core
            let hopf = match (s1, s2) {
                (false, false) => (pp * qq).abs() == 1,
                (true, false) => p.abs() == 1,
                (false, true) => q.abs() == 1,
                _ => false,
            };
            hopf.then_some("hopf")
        }
        _ => None,
    }
}

fn moves(t: Tuple) -> Vec<Tuple> {
    let (p, q, s1, s2) = t;
    let mut out = vec![(-p, -q, s1, s2), (q, p, s2, s1)];
    // *1 absorbs into the fibres when q | p
    let (pn, qn) = if q < 0 { (-p, -q) } else { (p, q) };
    if s1 && pn % qn == 0 {
        out.push((pn + pn / qn, qn + 1, false, s2));
    }
    if !s1 && qn >= 2 && pn % qn == 0 {
        out.push((pn - pn / qn, qn - 1, true, s2));
    }
    out
}

/// The orbit of `t` under negation, swap and (de)absorption.
pub fn orbit(t: Tuple) -> BTreeSet<Tuple> {
    let mut seen = BTreeSet::from([t]);
    let mut queue = VecDeque::from([t]);
    while let Some(x) = queue.pop_front() {
        for y in moves(x) {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

// ---------------------------------------------------------------------------
// Strong Brunnian sets by brute force: delete everything outside B, reduce,
// and test for an unlink.

/// Unknotted by the orbit oracle's own criterion, not the library's.
fn label_is_unlink(l: &LinkLabel) -> bool {
    match l {
        LinkLabel::Unlink(_) => true,
        LinkLabel::Seifert(s) => {
            let st = s.stars();
            collapsed((s.p(), s.q(), st.star1, st.star2)) == Some("unknot")
        }
        _ => false,
    }
}

pub fn is_unlink(d: &SpliceDiagram) -> bool {
    d.edges().is_empty() && d.vertices().values().all(label_is_unlink)
}

/// `None` when a deletion cannot be resolved (missing sublink record).
pub fn brute_brunnian_contains(d: &SpliceDiagram, b: &IndexSet, db: &AtomDb) -> Option<bool> {
    let mut cur = d.clone();
    for x in d.external_labels() {
        if !b.contains(&x) {
            cur = ops::delete_component(&cur, &x, db).ok()?;
        }
    }
    let reduced = engine::reduce(&cur, db).ok()?;
    Some(is_unlink(&reduced))
}

/// Orientation of edge `id` from brute-force Brunnian tests on both sides.
pub fn brute_orientation(d: &SpliceDiagram, id: &str, db: &AtomDb) -> Option<Result<Orientation, ()>> {
    let e = d.edge(id).ok()?;
    let mut unknotted = [false; 2];
    for (side, slot) in unknotted.iter_mut().enumerate() {
        let verts = d.side_vertices(id, side).ok()?;
        let comp = ops::companion(d, &verts).ok()?;
        *slot = brute_brunnian_contains(&comp, &IndexSet::from([e.id.clone()]), db)?;
    }
    Some(match unknotted {
        [true, true] => Ok(Orientation::Unoriented),
        [false, true] => Ok(Orientation::To1),
        [true, false] => Ok(Orientation::To0),
        [false, false] => Err(()),
    })
}

pub fn all_subsets(items: &IndexSet) -> Vec<IndexSet> {
    let v: Vec<&String> = items.iter().collect();
    (1u32..(1 << v.len()))
        .map(|mask| {
            v.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| (*s).clone())
                .collect()
        })
        .collect()
}

pub fn canonical(d: &SpliceDiagram) -> String {
    diagram::canonical_form(d)
}
