use std::fmt;
use std::sync::Arc;

use super::brunnian::{BrunnianSet, IndexSet};
use super::descriptor::SeifertManifoldDescriptor;
use super::seifert::{CompMap, SeifertParam, Stars, STAR1, STAR2};
use super::slope::Slope;
use crate::atomdb::AtomRecord;
use crate::error::{Error, Result};

pub const KEYRING: &str = "r";

pub fn key_name(i: usize) -> String {
    format!("k{i}")
}

pub fn unlink_name(i: usize) -> String {
    format!("u{i}")
}

fn indexed(name: &str, prefix: char) -> Option<usize> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
        return None;
    }
    digits.parse().ok()
}

/// The key-chain link `H^p`: a keyring `r` and keys `k0 … k{p-1}`, each key
/// clasping the keyring once. The last `neg` keys clasp left-handedly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyChain {
    keys: u32,
    neg: u32,
}

impl KeyChain {
    pub fn new(keys: u32, neg: u32) -> Result<Self> {
        if keys == 0 {
            return Err(Error::InvalidParameter("a key-chain needs at least one key".into()));
        }
        if neg > keys {
            return Err(Error::InvalidParameter(format!(
                "H({keys};neg={neg}) has more negative clasps than keys"
            )));
        }
        Ok(KeyChain { keys, neg })
    }

    pub fn right(keys: u32) -> Result<Self> {
        Self::new(keys, 0)
    }

    pub fn keys(&self) -> u32 {
        self.keys
    }

    pub fn neg(&self) -> u32 {
        self.neg
    }

    pub fn is_right_handed(&self) -> bool {
        self.neg == 0
    }

    pub fn key_is_negative(&self, i: usize) -> bool {
        i as u32 >= self.keys - self.neg
    }

    pub fn components(&self) -> Vec<String> {
        let mut v = vec![KEYRING.to_string()];
        v.extend((0..self.keys as usize).map(key_name));
        v
    }

    pub fn key_index(&self, c: &str) -> Option<usize> {
        indexed(c, 'k').filter(|&i| i < self.keys as usize)
    }
}

/// A reference to a database atom. Carries the record so labels are
/// self-contained once resolved.
#[derive(Debug, Clone)]
pub struct AtomRef(pub Arc<AtomRecord>);

impl AtomRef {
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn record(&self) -> &AtomRecord {
        &self.0
    }
}

impl PartialEq for AtomRef {
    fn eq(&self, other: &Self) -> bool {
        self.0.name == other.0.name
    }
}

impl Eq for AtomRef {}

impl std::hash::Hash for AtomRef {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.name.hash(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinkLabel {
    Seifert(SeifertParam),
    KeyChain(KeyChain),
    Atom(AtomRef),
    /// `n ≥ 1` split unknotted components `u0 …`; `Unlink(1)` is the unknot.
    Unlink(u32),
}

/// Result of deleting one component of a label.
#[derive(Debug, Clone, PartialEq)]
pub enum Deleted {
    /// Nothing is left.
    Empty,
    /// The remaining sublink, with the renaming of surviving components.
    Label(LinkLabel, CompMap),
    /// An atom's sublink, to be resolved through the database.
    AtomSublink { atom: String, keep: IndexSet },
}

impl LinkLabel {
    pub fn unknot() -> Self {
        LinkLabel::Unlink(1)
    }

    pub fn torus(p: i64, q: i64) -> Result<Self> {
        Ok(LinkLabel::Seifert(SeifertParam::torus(p, q)?))
    }

    pub fn components(&self) -> Vec<String> {
        match self {
            LinkLabel::Seifert(s) => s.components(),
            LinkLabel::KeyChain(k) => k.components(),
            LinkLabel::Atom(a) => a.record().components.clone(),
            LinkLabel::Unlink(n) => (0..*n as usize).map(unlink_name).collect(),
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            LinkLabel::Seifert(s) => s.component_count(),
            LinkLabel::KeyChain(k) => k.keys as usize + 1,
            LinkLabel::Atom(a) => a.record().components.len(),
            LinkLabel::Unlink(n) => *n as usize,
        }
    }

    pub fn has_component(&self, c: &str) -> bool {
        match self {
            LinkLabel::Seifert(s) => s.has_component(c),
            LinkLabel::KeyChain(k) => c == KEYRING || k.key_index(c).is_some(),
            LinkLabel::Atom(a) => a.record().index_of(c).is_some(),
            LinkLabel::Unlink(n) => indexed(c, 'u').is_some_and(|i| i < *n as usize),
        }
    }

    fn check(&self, c: &str) -> Result<()> {
        if self.has_component(c) {
            Ok(())
        } else {
            Err(Error::UnknownComponent(self.to_string(), c.to_owned()))
        }
    }

    pub fn is_unknot(&self) -> bool {
        match self {
            LinkLabel::Seifert(s) => s.is_unknot(),
            LinkLabel::Unlink(n) => *n == 1,
            _ => false,
        }
    }

    pub fn is_hopf(&self) -> bool {
        match self {
            LinkLabel::Seifert(s) => s.is_hopf(),
            LinkLabel::KeyChain(k) => k.keys == 1,
            _ => false,
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, LinkLabel::Unlink(n) if *n >= 2)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, LinkLabel::Atom(_))
    }

    pub fn strong_brunnian(&self) -> BrunnianSet {
        match self {
            LinkLabel::Seifert(s) => s.strong_brunnian(),
            LinkLabel::Atom(a) => a.record().strong_brunnian_set(),
            LinkLabel::KeyChain(k) => {
                let ground: IndexSet = k.components().into_iter().collect();
                let keys: Vec<String> = (0..k.keys as usize).map(key_name).collect();
                let mut out = all_nonempty_subsets(ground, &keys);
                out.insert(std::iter::once(KEYRING.to_string()).collect());
                out
            }
            LinkLabel::Unlink(_) => {
                let comps = self.components();
                all_nonempty_subsets(comps.iter().cloned().collect(), &comps)
            }
        }
    }

    /// Membership in the strong Brunnian set without materializing it.
    pub fn brunnian_contains(&self, s: &IndexSet) -> bool {
        if s.is_empty() {
            return true;
        }
        if !s.iter().all(|c| self.has_component(c)) {
            return false;
        }
        match self {
            LinkLabel::Seifert(_) | LinkLabel::Atom(_) => self.strong_brunnian().contains(s),
            LinkLabel::KeyChain(_) => {
                (s.len() == 1 && s.contains(KEYRING)) || !s.contains(KEYRING)
            }
            LinkLabel::Unlink(_) => true,
        }
    }

    pub fn fibre_slope(&self, c: &str) -> Result<Slope> {
        self.check(c)?;
        match self {
            LinkLabel::Seifert(s) => s.fibre_slope(c),
            _ if self.is_unknot() || self.is_hopf() => {
                Err(Error::NonUniqueFibration(self.to_string()))
            }
            LinkLabel::KeyChain(_) if c == KEYRING => Ok(Slope::INFINITY),
            LinkLabel::KeyChain(_) => Ok(Slope::integer(0)),
            _ => Err(Error::NotSeifertFibred(self.to_string())),
        }
    }

    pub fn linking_number(&self, c1: &str, c2: &str) -> Result<i64> {
        self.check(c1)?;
        self.check(c2)?;
        if c1 == c2 {
            return Err(Error::InvalidParameter(format!(
                "linking number of {c1} with itself"
            )));
        }
        match self {
            LinkLabel::Seifert(s) => s.linking_number(c1, c2),
            LinkLabel::Atom(a) => a.record().linking_number(c1, c2),
            LinkLabel::Unlink(_) => Ok(0),
            LinkLabel::KeyChain(k) => {
                let key = match (c1, c2) {
                    (KEYRING, key) | (key, KEYRING) => key,
                    _ => return Ok(0),
                };
                let i = k.key_index(key).unwrap();
                Ok(if k.key_is_negative(i) { -1 } else { 1 })
            }
        }
    }

    pub fn complement_descriptor(&self) -> Result<SeifertManifoldDescriptor> {
        match self {
            LinkLabel::Seifert(s) => Ok(s.complement_descriptor()),
            LinkLabel::KeyChain(k) => Ok(SeifertManifoldDescriptor::new(0, k.keys + 1, vec![])),
            LinkLabel::Unlink(1) => Ok(SeifertManifoldDescriptor::new(0, 1, vec![])),
            _ => Err(Error::NotSeifertFibred(self.to_string())),
        }
    }

    /// The unique representative of this label's class under unoriented
    /// isotopy (for parametric labels), plus the component renaming.
    /// Unknots become `O`; Hopf links become `S(2,2)`.
    pub fn canonical(&self) -> (LinkLabel, CompMap) {
        let ident = || self.components().into_iter().map(|c| (c.clone(), c)).collect();
        match self {
            LinkLabel::Seifert(s) => {
                let (c, m) = s.canonical();
                if c.is_unknot() {
                    let m = m.keys().map(|k| (k.clone(), unlink_name(0))).collect();
                    (LinkLabel::unknot(), m)
                } else {
                    (LinkLabel::Seifert(c), m)
                }
            }
            LinkLabel::KeyChain(k) if k.keys == 1 => {
                let m = [(KEYRING, "f0"), ("k0", "f1")]
                    .into_iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect();
                (LinkLabel::Seifert(SeifertParam::hopf()), m)
            }
            _ => (self.clone(), ident()),
        }
    }

    /// Removes component `c` (see [`Deleted`]).
    pub fn delete(&self, c: &str) -> Result<Deleted> {
        self.check(c)?;
        let keep_rest = |out: LinkLabel| {
            let m: CompMap = self
                .components()
                .into_iter()
                .filter(|x| x != c)
                .map(|x| (x.clone(), x))
                .collect();
            Deleted::Label(out, m)
        };
        Ok(match self {
            LinkLabel::Seifert(s) => {
                if c == STAR1 || c == STAR2 {
                    let remove = if c == STAR1 { Stars::ONE } else { Stars::TWO };
                    keep_rest(LinkLabel::Seifert(s.without_stars(remove)))
                } else if s.fibre_count() >= 2 {
                    let (out, m) = s.without_fibre(c).expect("fibre of a multi-fibre link");
                    Deleted::Label(LinkLabel::Seifert(out), m)
                } else {
                    // the only regular fibre: what is left are the stars
                    match s.stars() {
                        Stars::NONE => Deleted::Empty,
                        Stars::BOTH => {
                            let m = [(STAR1, KEYRING), (STAR2, "k0")]
                                .into_iter()
                                .map(|(a, b)| (a.to_string(), b.to_string()))
                                .collect();
                            Deleted::Label(LinkLabel::KeyChain(KeyChain { keys: 1, neg: 0 }), m)
                        }
                        _ => {
                            let star = if s.stars().star1 { STAR1 } else { STAR2 };
                            let m = std::iter::once((star.to_string(), unlink_name(0))).collect();
                            Deleted::Label(LinkLabel::unknot(), m)
                        }
                    }
                }
            }
            LinkLabel::KeyChain(k) => {
                if c == KEYRING {
                    let m = (0..k.keys as usize).map(|i| (key_name(i), unlink_name(i))).collect();
                    Deleted::Label(LinkLabel::Unlink(k.keys), m)
                } else if k.keys == 1 {
                    let m = std::iter::once((KEYRING.to_string(), unlink_name(0))).collect();
                    Deleted::Label(LinkLabel::unknot(), m)
                } else {
                    let j = k.key_index(c).unwrap();
                    let neg = k.neg - k.key_is_negative(j) as u32;
                    let mut m: CompMap = std::iter::once((KEYRING.to_string(), KEYRING.to_string())).collect();
                    for i in (0..k.keys as usize).filter(|&i| i != j) {
                        m.insert(key_name(i), key_name(if i > j { i - 1 } else { i }));
                    }
                    Deleted::Label(LinkLabel::KeyChain(KeyChain { keys: k.keys - 1, neg }), m)
                }
            }
            LinkLabel::Unlink(n) => {
                if *n == 1 {
                    Deleted::Empty
                } else {
                    let j = indexed(c, 'u').unwrap();
                    let m = (0..*n as usize)
                        .filter(|&i| i != j)
                        .map(|i| (unlink_name(i), unlink_name(if i > j { i - 1 } else { i })))
                        .collect();
                    Deleted::Label(LinkLabel::Unlink(n - 1), m)
                }
            }
            LinkLabel::Atom(a) => {
                let keep: IndexSet = self.components().into_iter().filter(|x| x != c).collect();
                if keep.is_empty() {
                    Deleted::Empty
                } else {
                    Deleted::AtomSublink {
                        atom: a.name().to_owned(),
                        keep,
                    }
                }
            }
        })
    }

    /// Splits an unlink into its components (`u_i ↦ u0` of the i-th piece).
    pub fn split_parts(&self) -> Option<Vec<(LinkLabel, CompMap)>> {
        match self {
            LinkLabel::Unlink(n) if *n >= 2 => Some(
                (0..*n as usize)
                    .map(|i| {
                        let m = std::iter::once((unlink_name(i), unlink_name(0))).collect();
                        (LinkLabel::unknot(), m)
                    })
                    .collect(),
            ),
            _ => None,
        }
    }
}

fn all_nonempty_subsets(ground: IndexSet, items: &[String]) -> BrunnianSet {
    let mut out = BrunnianSet::new(ground);
    let n = items.len();
    assert!(n < 24, "subset enumeration on {n} components");
    for mask in 1u32..(1 << n) {
        out.insert(
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| items[i].clone())
                .collect(),
        );
    }
    out
}

/// Identifier-like atom names print bare, anything else quoted.
pub(crate) fn atom_name_literal(name: &str) -> String {
    let bare = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if bare {
        name.to_owned()
    } else {
        serde_json::to_string(name).expect("strings serialize")
    }
}

impl fmt::Display for LinkLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkLabel::Seifert(s) => write!(f, "{s}"),
            LinkLabel::KeyChain(k) if k.neg == 0 => write!(f, "H({})", k.keys),
            LinkLabel::KeyChain(k) => write!(f, "H({};neg={})", k.keys, k.neg),
            LinkLabel::Atom(a) => write!(f, "atom({})", atom_name_literal(a.name())),
            LinkLabel::Unlink(1) => write!(f, "O"),
            LinkLabel::Unlink(n) => write!(f, "U({n})"),
        }
    }
}
