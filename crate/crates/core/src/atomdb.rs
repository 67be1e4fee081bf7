//! Hyperbolic (and other non-parametric) link atoms.
//!
//! The database is the trust boundary for geometric data: whatever can be
//! checked combinatorially — Brunnian closure, linking consistency,
//! `Δ(1) = ±1`, symmetry groups, sublink tables — is checked at load.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;

use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::laurent::LaurentPoly;
use crate::links::brunnian::{BrunnianSet, IndexSet};

const SEED: &str = include_str!("../data/seed_atoms.json");

/// A permutation of components (`perm[i]` is the image of component `i`)
/// with per-component orientation signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl Symmetry {
    pub fn identity(n: usize) -> Self {
        Symmetry {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        Symmetry {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
            signs: other
                .perm
                .iter()
                .zip(&other.signs)
                .map(|(&j, &s)| s * self.signs[j])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomRecord {
    pub name: String,
    pub components: Vec<String>,
    pub strong_brunnian: Vec<Vec<String>>,
    pub symmetries: Vec<Symmetry>,
    pub linking_matrix: Option<Vec<Vec<i64>>>,
    /// component → {exponent: coefficient}
    pub component_alexander: Option<BTreeMap<String, BTreeMap<String, i64>>>,
    #[serde(with = "volume_serde")]
    pub volume: Option<Decimal>,
    /// kept components (comma-joined, in component order) → link expression
    pub sublinks: BTreeMap<String, String>,
    #[serde(rename = "is_KGL_for")]
    pub is_kgl_for: Option<String>,
}

mod volume_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    // Volumes are plain JSON numbers; going through the shortest f64
    // representation keeps the decimal digits exactly as written.
    pub fn serialize<S: Serializer>(v: &Option<Decimal>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(d) => {
                let f = f64::from_str(&d.to_string()).map_err(serde::ser::Error::custom)?;
                s.serialize_f64(f)
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Decimal>, D::Error> {
        let v: Option<f64> = Option::deserialize(d)?;
        v.map(|f| Decimal::from_str(&f.to_string()).map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl AtomRecord {
    pub fn index_of(&self, c: &str) -> Option<usize> {
        self.components.iter().position(|x| x == c)
    }

    pub fn ground(&self) -> IndexSet {
        self.components.iter().cloned().collect()
    }

    pub fn strong_brunnian_set(&self) -> BrunnianSet {
        BrunnianSet::from_members(
            self.ground(),
            self.strong_brunnian
                .iter()
                .map(|m| m.iter().cloned().collect::<IndexSet>()),
        )
    }

    pub fn linking_number(&self, c1: &str, c2: &str) -> Result<i64> {
        let matrix = self
            .linking_matrix
            .as_ref()
            .ok_or_else(|| Error::MissingLinkingData(self.name.clone()))?;
        let i = self.component(c1)?;
        let j = self.component(c2)?;
        Ok(matrix[i][j])
    }

    fn component(&self, c: &str) -> Result<usize> {
        self.index_of(c)
            .ok_or_else(|| Error::UnknownComponent(format!("atom({})", self.name), c.to_owned()))
    }

    pub fn alexander(&self, c: &str) -> Result<LaurentPoly> {
        let missing = || Error::MissingAlexander {
            atom: self.name.clone(),
            component: c.to_owned(),
        };
        let map = self
            .component_alexander
            .as_ref()
            .and_then(|m| m.get(c))
            .ok_or_else(missing)?;
        poly_from_map(map)
    }

    /// The component playing the role of `L₀` when this atom is a KGL.
    /// A one-component atom is trivially a KGL for its only component.
    pub fn distinguished(&self) -> Option<&str> {
        match (&self.is_kgl_for, self.components.as_slice()) {
            (Some(b), _) => Some(b),
            (None, [only]) => Some(only),
            _ => None,
        }
    }

    pub fn symmetry_group(&self) -> Vec<Symmetry> {
        if self.symmetries.is_empty() {
            vec![Symmetry::identity(self.components.len())]
        } else {
            self.symmetries.clone()
        }
    }

    /// Key of `subset` in the sublink table.
    pub fn subset_key(&self, subset: &IndexSet) -> String {
        self.components
            .iter()
            .filter(|c| subset.contains(*c))
            .cloned()
            .collect::<Vec<_>>()
            .join(",")
    }

    fn parse_subset_key(&self, key: &str) -> Option<IndexSet> {
        let parts: Vec<&str> = key.split(',').collect();
        let set: IndexSet = parts.iter().map(|s| s.to_string()).collect();
        let ok = set.len() == parts.len() && set.iter().all(|c| self.index_of(c).is_some());
        (ok && self.subset_key(&set) == key).then_some(set)
    }
}

fn poly_from_map(map: &BTreeMap<String, i64>) -> Result<LaurentPoly> {
    let mut terms = Vec::new();
    for (e, &c) in map {
        let e: i64 = e
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad exponent {e:?}")))?;
        terms.push((e, c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

#[derive(Serialize, Deserialize)]
struct DbFile {
    atoms: Vec<AtomRecord>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AtomDb {
    atoms: BTreeMap<String, Arc<AtomRecord>>,
}

impl AtomDb {
    pub fn empty() -> Self {
        AtomDb::default()
    }

    /// The bundled database: figure-eight knot, Whitehead link, Borromean
    /// rings, twisted Borromean rings and one larger hyperbolic link.
    pub fn seed() -> Self {
        AtomDb::load(SEED).expect("bundled atom database is valid")
    }

    pub fn seed_json() -> &'static str {
        SEED
    }

    pub fn load(source: &str) -> Result<Self> {
        let file: DbFile = serde_json::from_str(source)?;
        let mut problems = Vec::new();
        let mut db = AtomDb::empty();
        for rec in file.atoms {
            if db.atoms.contains_key(&rec.name) {
                problems.push(format!("atom {:?}: duplicate name", rec.name));
                continue;
            }
            problems.extend(check_record(&rec));
            db.atoms.insert(rec.name.clone(), Arc::new(rec));
        }
        if problems.is_empty() {
            problems.extend(db.check_sublinks());
        }
        if problems.is_empty() {
            Ok(db)
        } else {
            Err(Error::AtomValidation(problems))
        }
    }

    /// Later databases override earlier ones atom by atom; the merged
    /// result is re-validated.
    pub fn merged(&self, other: &AtomDb) -> Result<AtomDb> {
        let mut out = self.clone();
        for (k, v) in &other.atoms {
            out.atoms.insert(k.clone(), v.clone());
        }
        let problems = out.check_sublinks();
        if problems.is_empty() {
            Ok(out)
        } else {
            Err(Error::AtomValidation(problems))
        }
    }

    pub fn to_json(&self) -> String {
        let file = DbFile {
            atoms: self.atoms.values().map(|a| (**a).clone()).collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("records serialize");
        s.push('\n');
        s
    }

    pub fn lookup(&self, name: &str) -> Result<Arc<AtomRecord>> {
        self.atoms
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownAtom(name.to_owned()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.atoms.keys().map(String::as_str)
    }

    pub fn records(&self) -> impl Iterator<Item = &Arc<AtomRecord>> {
        self.atoms.values()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// DSL expression for the sublink on `subset`. Subsets in the strong
    /// Brunnian set resolve to unlinks even without an explicit record.
    pub fn resolve_sublink(&self, name: &str, subset: &IndexSet) -> Result<String> {
        let rec = self.lookup(name)?;
        let proper = !subset.is_empty()
            && subset.len() < rec.components.len()
            && subset.iter().all(|c| rec.index_of(c).is_some());
        if !proper {
            return Err(Error::InvalidParameter(format!(
                "{{{}}} is not a proper nonempty subset of atom({name})",
                subset.iter().cloned().collect::<Vec<_>>().join(",")
            )));
        }
        let key = rec.subset_key(subset);
        if let Some(expr) = rec.sublinks.get(&key) {
            return Ok(expr.clone());
        }
        if rec.strong_brunnian_set().contains(subset) {
            return Ok(unlink_expr(subset.len()));
        }
        Err(Error::NoSublinkRecord {
            atom: name.to_owned(),
            subset: key,
        })
    }

    fn check_sublinks(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for rec in self.atoms.values() {
            let brunnian = rec.strong_brunnian_set();
            for (key, expr) in &rec.sublinks {
                let at = format!("atom {:?}: sublinks[{key:?}]", rec.name);
                let Some(subset) = rec.parse_subset_key(key) else {
                    problems.push(format!("{at}: key is not a subset in component order"));
                    continue;
                };
                if subset.len() >= rec.components.len() {
                    problems.push(format!("{at}: subset must be proper"));
                    continue;
                }
                match crate::dsl::evaluate(expr, self) {
                    Err(e) => problems.push(format!("{at}: {e}")),
                    Ok(d) => {
                        if d.externals().len() != subset.len() {
                            problems.push(format!(
                                "{at}: expression has {} external components, expected {}",
                                d.externals().len(),
                                subset.len()
                            ));
                        } else if brunnian.contains(&subset) {
                            let all: IndexSet = d.externals().keys().cloned().collect();
                            if !crate::diagram::brunnian_contains(&d, &all) {
                                problems.push(format!(
                                    "{at}: subset is in strong_brunnian but expression is not an unlink"
                                ));
                            }
                        }
                    }
                }
            }
        }
        problems
    }
}

pub(crate) fn unlink_expr(n: usize) -> String {
    if n == 1 {
        "O".into()
    } else {
        format!("U({n})")
    }
}

fn check_record(rec: &AtomRecord) -> Vec<String> {
    let mut out = Vec::new();
    let mut bad = |field: &str, msg: String| out.push(format!("atom {:?}: {field}: {msg}", rec.name));
    let n = rec.components.len();
    if rec.name.is_empty() {
        bad("name", "must be nonempty".into());
    }
    if n == 0 {
        bad("components", "must be nonempty".into());
    }
    let distinct: BTreeSet<&String> = rec.components.iter().collect();
    if distinct.len() != n {
        bad("components", "labels must be distinct".into());
    }

    // strong Brunnian set
    let mut members = Vec::new();
    for m in &rec.strong_brunnian {
        let set: IndexSet = m.iter().cloned().collect();
        if set.is_empty() {
            bad("strong_brunnian", "the empty set is implicit and must not be listed".into());
        } else if set.len() != m.len() {
            bad("strong_brunnian", format!("repeated label in {m:?}"));
        } else if let Some(c) = m.iter().find(|c| rec.index_of(c).is_none()) {
            bad("strong_brunnian", format!("unknown component {c:?}"));
        } else {
            members.push(set);
        }
    }
    let brunnian = BrunnianSet::from_members(rec.ground(), members.clone());
    if let Some((m, sub)) = brunnian.first_subset_closure_gap() {
        bad(
            "strong_brunnian",
            format!("{m:?} is listed but its sublink {sub:?} is not (sublinks of unlinks are unlinks)"),
        );
    }

    // linking numbers
    if let Some(lk) = &rec.linking_matrix {
        let square = lk.len() == n && lk.iter().all(|row| row.len() == n);
        if !square {
            bad("linking_matrix", format!("must be {n}×{n}"));
        } else {
            #[allow(clippy::needless_range_loop)]
            for i in 0..n {
                if lk[i][i] != 0 {
                    bad("linking_matrix", format!("diagonal entry {i} must be 0"));
                }
                for j in 0..i {
                    if lk[i][j] != lk[j][i] {
                        bad("linking_matrix", format!("not symmetric at ({i},{j})"));
                    }
                }
            }
            for m in &members {
                let idx: Vec<usize> = m.iter().filter_map(|c| rec.index_of(c)).collect();
                for &i in &idx {
                    for &j in &idx {
                        if lk[i][j] != 0 {
                            bad(
                                "strong_brunnian",
                                format!(
                                    "{m:?} is listed as an unlink but lk({},{}) = {}",
                                    rec.components[i], rec.components[j], lk[i][j]
                                ),
                            );
                        }
                    }
                }
            }
        }
    }

    if let Some(polys) = &rec.component_alexander {
        for (c, map) in polys {
            if rec.index_of(c).is_none() {
                bad("component_alexander", format!("unknown component {c:?}"));
                continue;
            }
            match poly_from_map(map) {
                Err(e) => bad("component_alexander", format!("{c}: {e}")),
                Ok(p) if p.eval_at_one().abs() != 1 => bad(
                    "component_alexander",
                    format!("{c}: Δ(1) = {} (must be ±1)", p.eval_at_one()),
                ),
                Ok(_) => {}
            }
        }
    }

    // symmetries
    let mut group = BTreeSet::new();
    let mut well_formed = true;
    for s in &rec.symmetries {
        let perm_ok = s.perm.len() == n && s.perm.iter().collect::<BTreeSet<_>>().len() == n
            && s.perm.iter().all(|&i| i < n);
        let signs_ok = s.signs.len() == n && s.signs.iter().all(|x| x.abs() == 1);
        if !perm_ok || !signs_ok {
            bad("symmetries", format!("malformed entry {:?}/{:?}", s.perm, s.signs));
            well_formed = false;
        } else {
            group.insert((s.perm.clone(), s.signs.clone()));
        }
    }
    if well_formed && !rec.symmetries.is_empty() {
        let id = Symmetry::identity(n);
        if !group.contains(&(id.perm.clone(), id.signs.clone())) {
            bad("symmetries", "identity is missing".into());
        }
        'closure: for a in &rec.symmetries {
            for b in &rec.symmetries {
                let c = a.compose(b);
                if !group.contains(&(c.perm.clone(), c.signs.clone())) {
                    bad("symmetries", format!("not closed: {:?} ∘ {:?}", a.perm, b.perm));
                    break 'closure;
                }
            }
        }
        for s in &rec.symmetries {
            for m in &members {
                let image: IndexSet = m
                    .iter()
                    .filter_map(|c| rec.index_of(c))
                    .map(|i| rec.components[s.perm[i]].clone())
                    .collect();
                if !brunnian.contains(&image) {
                    bad("symmetries", format!("{:?} does not preserve strong_brunnian", s.perm));
                    break;
                }
            }
        }
    }

    if let Some(v) = rec.volume {
        if v <= Decimal::ZERO {
            bad("volume", format!("must be positive (got {v})"));
        }
    }

    if let Some(b) = &rec.is_kgl_for {
        if rec.index_of(b).is_none() {
            bad("is_KGL_for", format!("unknown component {b:?}"));
        } else {
            let rest: IndexSet = rec.ground().into_iter().filter(|c| c != b).collect();
            if !brunnian.contains(&rest) {
                bad("is_KGL_for", format!("the components other than {b:?} do not form an unlink"));
            }
        }
    }
    out
}
