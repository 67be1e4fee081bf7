//! Acceptance suite: one PASS/FAIL line per criterion, with timing.
//! Runs without the libtest harness so the lines always print.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rust_decimal::prelude::ToPrimitive;

use common::gen::{self, INJECTIONS};
use common::oracle;
use splicegraph::diagram::{self, SpliceDiagram};
use splicegraph::dsl::{self, parse_label};
use splicegraph::engine::{self, Rewrite};
use splicegraph::invariants;
use splicegraph::links::{LinkLabel, SeifertParam, Stars};
use splicegraph::AtomDb;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ev(expr: &str, db: &AtomDb) -> Result<SpliceDiagram, String> {
    dsl::evaluate(expr, db).map_err(|e| format!("{expr}: {e}"))
}

// ---------------------------------------------------------------------------

fn gromov_values(db: &AtomDb) -> Outcome {
    let atom = invariants::gromov_norm(&ev("atom(L3_vol42)", db)?).map_err(|e| e.to_string())?;
    let atom = atom.to_f64().unwrap();
    ensure((atom - 42.7594).abs() <= 5e-5, || format!("atom volume {atom}"))?;

    let st1 = common::st1();
    let report = engine::validate_knot_tree(&st1);
    ensure(report.is_err(), || "the two-component example is not a knot".into())?;
    let oriented = diagram::derive_orientations(&st1).map_err(|e| e.to_string())?;
    ensure(diagram::validate_local_brunnian(&oriented).is_valid(), || "example fails local validity".into())?;
    let v = invariants::gromov_norm(&st1).map_err(|e| e.to_string())?.to_f64().unwrap();
    ensure((v - 7.326).abs() <= 2e-3, || format!("example norm {v}"))?;

    let dsl_form = ev(
        "splice(splice(splice(splice(H(3).key[1], cable(2,5, T(2,-3))).key[2], T(2,3)).keyring, \
         atom(W).comp[1]).key[0], atom(W).comp[1])",
        db,
    )?;
    let v2 = invariants::gromov_norm(&dsl_form).map_err(|e| e.to_string())?.to_f64().unwrap();
    ensure((v2 - v).abs() < 1e-12, || format!("DSL form gives {v2}"))?;
    Ok(format!("atom {atom}, two-component example {v:.6}"))
}

// ---------------------------------------------------------------------------

fn seifert(p: i64, q: i64, stars: Stars) -> LinkLabel {
    LinkLabel::Seifert(SeifertParam::new(p, q, stars).unwrap())
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The diagram's only vertex label, in canonical form.
fn sole_label(d: &SpliceDiagram) -> Option<LinkLabel> {
    match d.vertices().values().collect::<Vec<_>>().as_slice() {
        [l] if d.edges().is_empty() => Some(l.canonical().0),
        _ => None,
    }
}

fn exceptional_table(db: &AtomDb) -> Outcome {
    // (rule, expression, expected label)
    let mut cases: Vec<(u8, String, LinkLabel)> = Vec::new();

    // rule 1: S(a,b) regular fibre against the *1 core of S(p, p·a'b' | *1)
    for (a, b, p) in [(2, 3, 2), (2, 5, 2), (3, 4, 3), (2, 4, 2), (3, 3, 2)] {
        let g = gcd(a, b);
        let (a1, b1) = (a / g, b / g);
        let q = p * a1 * b1;
        let k = g + gcd(p, q) - 1;
        let expr = if g == 1 {
            format!("splice(T({a},{b}), S({p},{q}|*1).star1)")
        } else {
            format!("splice(S({a},{b}).fiber[0], S({p},{q}|*1).star1)")
        };
        cases.push((1, expr, seifert(k * a1, k * b1, Stars::NONE)));
    }
    cases.push((
        1,
        "splice(S(2,4|*1).star1, S(1,2|*2).star2)".into(),
        seifert(3, 6, Stars::NONE),
    ));
    // rule 2: *1 core against *2 core with p/q = a/b, neither side absorbing
    for (p, q, a, b) in [(2, 3, 2, 3), (3, 4, 3, 4), (2, 5, 4, 10), (3, 5, 6, 10)] {
        let g = gcd(a, b);
        let k = g + gcd(p, q);
        let expr = format!("splice(S({p},{q}|*1).star1, S({a},{b}|*2).star2)");
        cases.push((2, expr, seifert(k * a / g, k * b / g, Stars::NONE)));
    }
    cases.push((
        2,
        "splice(S(3,5|*1,*2).star1, S(3,5|*2).star2)".into(),
        seifert(6, 10, Stars::TWO),
    ));
    // rule 3: key against keyring
    for (m, n, neg) in [(2, 3, false), (3, 2, false), (4, 4, false), (2, 2, true), (3, 2, true)] {
        let lit = |k: u32| if neg { format!("H({k};neg={k})") } else { format!("H({k})") };
        let keys = m + n - 1;
        let expected = parse_label(&lit(keys), db).unwrap();
        cases.push((3, format!("splice({}.key[0], {}.keyring)", lit(m), lit(n)), expected));
    }
    // rule 4: a Hopf link in the middle is transparent
    for (knot, expected) in [("T(2,3)", "T(2,3)"), ("T(2,-5)", "T(2,-5)"), ("atom(F8)", "atom(F8)"), ("T(3,4)", "T(3,4)")] {
        cases.push((
            4,
            format!("splice(S(2,2).fiber[0], {knot})"),
            parse_label(expected, db).unwrap(),
        ));
    }
    cases.push((4, "splice(H(3).keyring, S(2,2).fiber[1])".into(), parse_label("H(3)", db).unwrap()));
    // rule 5: splicing with the unknot deletes the component
    for (expr, expected) in [
        ("splice(H(3).key[0], O)", "H(2)"),
        ("splice(H(4).keyring, O)", "U(4)"),
        ("splice(S(4,6).fiber[0], O)", "T(2,3)"),
        ("splice(S(3,5|*1,*2).star2, O)", "S(3,5|*1)"),
        ("splice(atom(B).comp[2], O)", "U(2)"),
    ] {
        cases.push((5, expr.into(), parse_label(expected, db).unwrap()));
    }

    let mut per_rule: BTreeMap<u8, usize> = BTreeMap::new();
    for (rule, expr, expected) in &cases {
        // the unreduced join must offer the rule being tested
        let node = dsl::parse(expr).map_err(|e| e.to_string())?;
        let dsl::Kind::Splice(a, b) = &node.kind else { unreachable!() };
        let (da, db_) = (dsl::eval(&a.expr, db).unwrap(), dsl::eval(&b.expr, db).unwrap());
        let sel = |arg: &dsl::Arg, d: &SpliceDiagram| {
            arg.sel.as_ref().map(|s| s.label()).unwrap_or_else(|| d.externals().keys().next().unwrap().clone())
        };
        let (joined, _, _) =
            engine::join(&da, &sel(a, &da), &db_, &sel(b, &db_)).map_err(|e| format!("{expr}: {e}"))?;
        let rules: BTreeSet<u8> = engine::applicable_rewrites(&joined)
            .map_err(|e| e.to_string())?
            .iter()
            .map(Rewrite::rule)
            .collect();
        ensure(rules.contains(rule), || format!("{expr}: rule {rule} not applicable ({rules:?})"))?;

        let d = ev(expr, db)?;
        let got = match expected {
            // unlinks come back split into unknots
            LinkLabel::Unlink(n) => {
                let ok = oracle::is_unlink(&d) && d.externals().len() == *n as usize;
                ok.then(|| expected.clone())
            }
            _ => sole_label(&d),
        };
        let want = expected.canonical().0;
        ensure(got.as_ref() == Some(&want), || {
            format!("{expr}: expected {want}, got {}", diagram::canonical_form(&d))
        })?;
        *per_rule.entry(*rule).or_default() += 1;
    }
    ensure((1..=5).all(|r| per_rule.get(&r).copied().unwrap_or(0) >= 3), || format!("{per_rule:?}"))?;
    Ok(format!("{} instances over rules 1-5", cases.len()))
}

// ---------------------------------------------------------------------------

fn knot_tree_suite(db: &AtomDb) -> Outcome {
    let trees = engine::enumerate_knot_trees(3, 5, db).map_err(|e| e.to_string())?;
    for (key, t) in &trees {
        let r = engine::validate_knot_tree(t).map_err(|e| format!("{key}: {e}"))?;
        ensure(r.is_valid(), || format!("{key}: {:?}", r.violations))?;
    }
    let hosts: Vec<&SpliceDiagram> = trees
        .iter()
        .map(|(_, t)| t)
        .filter(|t| t.vertices().len() > 1 || !t.vertices().values().next().unwrap().is_unknot())
        .collect();

    let mut runner = TestRunner::new(Config {
        cases: 600,
        failure_persistence: None,
        ..Config::default()
    });
    let applied = std::cell::Cell::new([0usize; 4]);
    let strategy = (0..hosts.len(), 0..INJECTIONS.len(), 0..64usize, 0..hosts.len());
    runner
        .run(&strategy, |(t, k, pick, other)| {
            let inj = INJECTIONS[k];
            let Some(bad) = gen::inject(hosts[t], inj, pick, &[hosts[other]], db) else {
                return Err(TestCaseError::reject("no site"));
            };
            let caught = match engine::validate_knot_tree(&bad) {
                Ok(r) => !r.is_valid(),
                Err(_) => true,
            };
            prop_assert!(caught, "{inj:?} not detected in {}", diagram::canonical_form(&bad));
            let mut c = applied.get();
            c[k] += 1;
            applied.set(c);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let c = applied.get();
    let total: usize = c.iter().sum();
    ensure(total >= 500 && c.iter().all(|&n| n > 0), || format!("injections applied {c:?}"))?;
    Ok(format!(
        "{} trees valid; {total} injections detected (hopf {}, chain {}, unknot {}, flip {})",
        trees.len(),
        c[0],
        c[1],
        c[2],
        c[3]
    ))
}

// ---------------------------------------------------------------------------

fn brunnian_suite(db: &AtomDb) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut seen = BTreeSet::new();
    let mut checked = 0;
    let mut edges_checked = 0;
    let mut attempts = 0;
    while checked < 220 {
        attempts += 1;
        ensure(attempts < 20_000, || format!("only {checked} usable diagrams generated"))?;
        let expr = if attempts % 3 == 0 {
            gen::knot(&mut rng, 2)
        } else {
            gen::link(&mut rng)
        };
        let d = ev(&expr, db)?;
        if d.vertices().len() > 6 || d.externals().len() > 5 || !seen.insert(oracle::canonical(&d)) {
            continue;
        }
        let u = diagram::global_brunnian(&d);
        for e in d.edges().keys() {
            let split = diagram::global_brunnian_split_at(&d, e).map_err(|x| x.to_string())?;
            ensure(split == u, || format!("{expr}: split at {e} gives {split}, default {u}"))?;
            edges_checked += 1;
        }
        for b in oracle::all_subsets(&d.external_labels()) {
            let Some(brute) = oracle::brute_brunnian_contains(&d, &b, db) else {
                return Err(format!("{expr}: oracle could not delete down to {b:?}"));
            };
            ensure(brute == u.contains(&b), || format!("{expr}: {b:?} brute {brute}, recursion {}", !brute))?;
        }
        // stored orientations from the oracle must be reproduced
        let mut orients = BTreeMap::new();
        for e in d.edges().keys() {
            match oracle::brute_orientation(&d, e, db) {
                Some(Ok(o)) => {
                    orients.insert(e.clone(), o);
                }
                other => return Err(format!("{expr}: oracle orientation of {e}: {other:?}")),
            }
        }
        let stored = gen::rebuild(&d, |p| {
            for e in p.edges.iter_mut() {
                e.orient = Some(orients[&e.id]);
            }
        })
        .ok_or("rebuild failed")?;
        let derived = diagram::derive_orientations(&stored).map_err(|e| format!("{expr}: {e}"))?;
        for e in derived.edges().values() {
            ensure(e.orient == Some(orients[&e.id]), || format!("{expr}: edge {} orientation", e.id))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} diagrams, {edges_checked} split edges"))
}

// ---------------------------------------------------------------------------

/// Every normal form reachable from `d`, by exhaustive search over rewrite
/// orders; orientations are ignored.
fn normal_forms(d: &SpliceDiagram, db: &AtomDb, memo: &mut BTreeSet<String>, out: &mut BTreeSet<String>) -> Result<(), String> {
    let mut d = d.clone();
    d.clear_orientations();
    if !memo.insert(oracle::canonical(&d)) {
        return Ok(());
    }
    let rws = engine::applicable_rewrites(&d).map_err(|e| e.to_string())?;
    if rws.is_empty() {
        out.insert(oracle::canonical(&d));
    }
    for rw in &rws {
        let next = engine::apply_rewrite(&d, rw, db).map_err(|e| format!("{rw:?}: {e}"))?;
        normal_forms(&next, db, memo, out)?;
    }
    Ok(())
}

fn confluence_suite(db: &AtomDb) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut seen = BTreeSet::new();
    let mut rules_hit = BTreeSet::new();
    let mut realizable = 0;
    let mut attempts = 0;
    while seen.len() < 120 {
        attempts += 1;
        ensure(attempts < 50_000, || format!("only {} reducible diagrams generated", seen.len()))?;
        let d = gen::reducible(&mut rng, db);
        let rws = engine::applicable_rewrites(&d).map_err(|e| e.to_string())?;
        if rws.len() < 2 || !seen.insert(oracle::canonical(&d)) {
            continue;
        }
        rules_hit.extend(rws.iter().map(Rewrite::rule));
        let mut forms = BTreeSet::new();
        normal_forms(&d, db, &mut BTreeSet::new(), &mut forms)?;
        ensure(forms.len() == 1, || {
            format!("{} reaches {} normal forms: {forms:?}", oracle::canonical(&d), forms.len())
        })?;
        // reduce also derives orientations, which needs a realizable result
        if let Ok(mut r) = engine::reduce(&d, db) {
            r.clear_orientations();
            ensure(forms.contains(&oracle::canonical(&r)), || "reduce disagrees with the search".into())?;
            realizable += 1;
        }
    }
    ensure((1..=6).all(|r| rules_hit.contains(&r)), || format!("rules seen {rules_hit:?}"))?;
    Ok(format!("{} diagrams ({realizable} realizable), rules seen {rules_hit:?}", seen.len()))
}

// ---------------------------------------------------------------------------

fn dense_alexander(d: &SpliceDiagram) -> Result<Vec<i64>, String> {
    invariants::alexander(d)
        .map(|p| oracle::from_laurent(&p))
        .map_err(|e| e.to_string())
}

fn alexander_suite(db: &AtomDb) -> Outcome {
    let corpus = [
        "T(2,3)",
        "T(2,-3)",
        "T(2,5)",
        "T(3,4)",
        "atom(F8)",
        "cable(2,5, T(2,3))",
        "whitehead(T(2,3))",
        "sum(T(2,3), atom(F8))",
        "cable(3,4, atom(F8))",
        "splice(splice(atom(B).comp[1], T(2,3)).comp[2], atom(F8))",
    ];
    let knots: Vec<SpliceDiagram> = corpus.iter().map(|e| ev(e, db)).collect::<Result<_, _>>()?;
    let polys: Vec<Vec<i64>> = knots.iter().map(dense_alexander).collect::<Result<_, _>>()?;
    for (e, p) in corpus.iter().zip(&polys) {
        ensure(p.iter().sum::<i64>().abs() == 1, || format!("{e}: Δ(1) ≠ ±1"))?;
    }
    let mut pairs = 0;
    for i in 0..knots.len() {
        for j in i..knots.len() {
            let s = engine::connected_sum(&[knots[i].clone(), knots[j].clone()], db).map_err(|e| e.to_string())?;
            let got = dense_alexander(&s)?;
            let want = oracle::trim(oracle::mul(&polys[i], &polys[j]));
            ensure(got == want, || format!("{} # {}: {got:?} vs {want:?}", corpus[i], corpus[j]))?;
            pairs += 1;
        }
    }
    // torus knots and cables against Fox calculus
    let f8 = vec![1, -3, 1];
    for (p, q) in [(2, 3), (2, 5), (3, 4)] {
        let fox = oracle::fox_torus(p, q);
        let closed = oracle::from_laurent(&invariants::torus_knot_alexander(p, q).map_err(|e| e.to_string())?);
        ensure(fox == closed, || format!("T({p},{q}): fox {fox:?} vs closed form {closed:?}"))?;
        ensure(dense_alexander(&ev(&format!("T({p},{q})"), db)?)? == fox, || format!("T({p},{q}) tree"))?;
        for (inner, delta) in [("T(2,3)".to_string(), oracle::fox_torus(2, 3)), ("atom(F8)".into(), f8.clone())] {
            let c = ev(&format!("cable({p},{q}, {inner})"), db)?;
            let want = oracle::trim(oracle::mul(&fox, &oracle::subst(&delta, p)));
            let got = dense_alexander(&c)?;
            ensure(got == want, || format!("cable({p},{q}) of {inner}: {got:?} vs {want:?}"))?;
        }
    }
    Ok(format!("{} knots, {pairs} sums, 3 cable families", corpus.len()))
}

// ---------------------------------------------------------------------------

fn canon_suite() -> Outcome {
    let all_stars = [Stars::NONE, Stars::ONE, Stars::TWO, Stars::BOTH];
    let mut classes: BTreeMap<String, BTreeSet<oracle::Tuple>> = BTreeMap::new();
    let mut count = 0;
    for p in -12..=12i64 {
        for q in -12..=12i64 {
            if p == 0 || q == 0 {
                continue;
            }
            for st in all_stars {
                let s = SeifertParam::new(p, q, st).map_err(|e| e.to_string())?;
                let (c, _) = s.canonical();
                ensure(c.canonical().0 == c, || format!("{s}: canonical not idempotent"))?;
                let t = (p, q, st.star1, st.star2);
                // every member of the orbit reaches the same representative
                for &(a, b, s1, s2) in &oracle::orbit(t) {
                    let m = SeifertParam::new(a, b, Stars { star1: s1, star2: s2 }).map_err(|e| e.to_string())?;
                    ensure(m.canonical().0 == c, || format!("{s} and {m} differ"))?;
                }
                let key = match oracle::collapsed(t) {
                    Some("unknot") => SeifertParam::unknot(),
                    Some(_) => SeifertParam::hopf(),
                    None => c,
                };
                ensure(key == c, || format!("{s}: collapse class mismatch, got {c}"))?;
                classes.entry(c.to_string()).or_default().insert(t);
                count += 1;
            }
        }
    }
    // distinct representatives never share an orbit
    for (c, members) in &classes {
        let t = *members.iter().next().unwrap();
        if oracle::collapsed(t).is_some() {
            continue;
        }
        let orbit = oracle::orbit(t);
        ensure(members.iter().all(|m| orbit.contains(m)), || format!("{c} merges separate orbits"))?;
    }
    let right = SeifertParam::torus(2, 3).unwrap().canonical().0;
    let left = SeifertParam::torus(2, -3).unwrap().canonical().0;
    ensure(right != left, || "trefoils identified".into())?;
    Ok(format!("{count} parameters, {} classes", classes.len()))
}

// ---------------------------------------------------------------------------

fn roundtrip_suite(db: &AtomDb) -> Outcome {
    let corpus = common::corpus();
    for line in &corpus {
        let node = dsl::parse(line).map_err(|e| format!("{line}: {e}"))?;
        let printed = node.to_string();
        ensure(&printed == line, || format!("printed {printed:?} from {line:?}"))?;
        ensure(dsl::parse(&printed).map_err(|e| e.to_string())? == node, || format!("{line}: reparse"))?;

        let d = ev(line, db)?;
        let json = diagram::json::to_json(&d);
        let back = diagram::json::from_json(&json, db).map_err(|e| format!("{line}: {e}"))?;
        ensure(back == d, || format!("{line}: JSON round-trip changed the diagram"))?;
        ensure(diagram::json::to_json(&back) == json, || format!("{line}: JSON text"))?;
    }
    let st1_text = std::fs::read_to_string(common::data_path("st1.json")).unwrap();
    let st1 = common::st1();
    ensure(diagram::json::to_json(&st1) == st1_text, || "shipped diagram JSON is not in normal form".into())?;

    let seed = AtomDb::seed_json();
    let loaded = AtomDb::load(seed).map_err(|e| e.to_string())?;
    ensure(loaded.to_json() == seed, || "atom database text changed".into())?;
    ensure(AtomDb::load(&loaded.to_json()).map_err(|e| e.to_string())?.to_json() == seed, || "reload".into())?;
    Ok(format!("{} expressions, {} atoms", corpus.len(), loaded.len()))
}

// ---------------------------------------------------------------------------

fn main() {
    let db = AtomDb::seed();
    type Criterion<'a> = (&'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("gromov norm values", Duration::from_secs(1), Box::new(|| gromov_values(&db))),
        ("exceptional splices", Duration::from_secs(1), Box::new(|| exceptional_table(&db))),
        ("knot tree validation", Duration::from_secs(30), Box::new(|| knot_tree_suite(&db))),
        ("global brunnian sets", Duration::from_secs(60), Box::new(|| brunnian_suite(&db))),
        ("confluence", Duration::from_secs(60), Box::new(|| confluence_suite(&db))),
        ("alexander polynomials", Duration::from_secs(10), Box::new(|| alexander_suite(&db))),
        ("seifert canonical forms", Duration::from_secs(10), Box::new(canon_suite)),
        ("round-trips", Duration::from_secs(5), Box::new(|| roundtrip_suite(&db))),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|m| {
            if took <= *limit {
                Ok(m)
            } else {
                Err(format!("{m}; over the {limit:?} limit"))
            }
        });
        let ms = took.as_secs_f64() * 1e3;
        match outcome {
            Ok(m) => println!("PASS [{}] {name} ({ms:.0} ms): {m}", i + 1),
            Err(m) => {
                failed += 1;
                println!("FAIL [{}] {name} ({ms:.0} ms): {m}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
