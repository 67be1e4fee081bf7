//! Seifert links `S(p,q|X)`: unions of fibres of a Seifert fibring of the
//! 3-sphere, with `X ⊆ {*1, *2}` selecting the two exceptional fibres.
//!
//! Components are named `f0, f1, …` (regular fibres, `GCD(p,q)` of them),
//! `s1` and `s2` (the exceptional fibres, when present).

use std::collections::BTreeMap;
use std::fmt;

use super::brunnian::{BrunnianSet, IndexSet};
use super::descriptor::SeifertManifoldDescriptor;
use super::slope::{gcd, Slope};
use crate::error::{Error, Result};

/// Maps component names of one presentation to those of another.
pub type CompMap = BTreeMap<String, String>;

pub const STAR1: &str = "s1";
pub const STAR2: &str = "s2";

pub fn fibre_name(i: usize) -> String {
    format!("f{i}")
}

pub fn fibre_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('f')?;
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
        return None;
    }
    digits.parse().ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Stars {
    pub star1: bool,
    pub star2: bool,
}

impl Stars {
    pub const NONE: Stars = Stars {
        star1: false,
        star2: false,
    };
    pub const ONE: Stars = Stars {
        star1: true,
        star2: false,
    };
    pub const TWO: Stars = Stars {
        star1: false,
        star2: true,
    };
    pub const BOTH: Stars = Stars {
        star1: true,
        star2: true,
    };

    /// The involution exchanging `*1` and `*2`.
    pub fn theta(self) -> Stars {
        Stars {
            star1: self.star2,
            star2: self.star1,
        }
    }

    pub fn count(self) -> usize {
        self.star1 as usize + self.star2 as usize
    }

    fn encode(self) -> u8 {
        self.star1 as u8 | (self.star2 as u8) << 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeifertParam {
    p: i64,
    q: i64,
    stars: Stars,
}

fn identity_map(names: &[String]) -> CompMap {
    names.iter().map(|n| (n.clone(), n.clone())).collect()
}

/// `first` then `second`.
pub fn compose(first: &CompMap, second: &CompMap) -> CompMap {
    first
        .iter()
        .map(|(k, v)| (k.clone(), second.get(v).cloned().unwrap_or_else(|| v.clone())))
        .collect()
}

impl SeifertParam {
    pub fn new(p: i64, q: i64, stars: Stars) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::ZeroParameter { p, q });
        }
        Ok(SeifertParam { p, q, stars })
    }

    pub fn torus(p: i64, q: i64) -> Result<Self> {
        Self::new(p, q, Stars::NONE)
    }

    pub fn unknot() -> Self {
        SeifertParam {
            p: 1,
            q: 1,
            stars: Stars::NONE,
        }
    }

    pub fn hopf() -> Self {
        SeifertParam {
            p: 2,
            q: 2,
            stars: Stars::NONE,
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn stars(&self) -> Stars {
        self.stars
    }

    /// Number of regular-fibre components, `GCD(p,q)`.
    pub fn fibre_count(&self) -> usize {
        gcd(self.p, self.q) as usize
    }

    pub fn p_prime(&self) -> i64 {
        self.p / gcd(self.p, self.q)
    }

    pub fn q_prime(&self) -> i64 {
        self.q / gcd(self.p, self.q)
    }

    pub fn component_count(&self) -> usize {
        self.fibre_count() + self.stars.count()
    }

    pub fn components(&self) -> Vec<String> {
        let mut out: Vec<String> = (0..self.fibre_count()).map(fibre_name).collect();
        if self.stars.star1 {
            out.push(STAR1.into());
        }
        if self.stars.star2 {
            out.push(STAR2.into());
        }
        out
    }

    pub fn has_component(&self, c: &str) -> bool {
        match c {
            STAR1 => self.stars.star1,
            STAR2 => self.stars.star2,
            _ => fibre_index(c).is_some_and(|i| i < self.fibre_count()),
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
        self.component_count() == 1 && (self.p.abs() == 1 || self.q.abs() == 1)
    }

    /// Every presentation of the Hopf link, including `S(±1,q|{*1})` whose
    /// regular fibre is an unknot meeting `*1` once.
    pub fn is_hopf(&self) -> bool {
        let g = self.fibre_count();
        match self.stars {
            Stars::NONE => g == 2 && self.p_prime().abs() == 1 && self.q_prime().abs() == 1,
            Stars::ONE => g == 1 && self.p.abs() == 1,
            Stars::TWO => g == 1 && self.q.abs() == 1,
            _ => false,
        }
    }

    pub fn is_unknot_or_hopf(&self) -> bool {
        self.is_unknot() || self.is_hopf()
    }

    /// `S(-p,-q|X)`: the same subset with the fibres traversed backwards.
    pub fn negated(&self) -> Self {
        SeifertParam {
            p: -self.p,
            q: -self.q,
            stars: self.stars,
        }
    }

    /// `S(q,p|θ(X))`, exchanging `*1` and `*2`.
    pub fn swapped(&self) -> (Self, CompMap) {
        let s = SeifertParam {
            p: self.q,
            q: self.p,
            stars: self.stars.theta(),
        };
        let mut map = identity_map(&self.components());
        if self.stars.star1 {
            map.insert(STAR1.into(), STAR2.into());
        }
        if self.stars.star2 {
            map.insert(STAR2.into(), STAR1.into());
        }
        (s, map)
    }

    fn with_positive_q(&self) -> Self {
        if self.q < 0 {
            self.negated()
        } else {
            *self
        }
    }

    /// `S(p,q|X ∪ {*1}) → S(p + p/q, q + 1|X)` when `q | p`: `*1` becomes the
    /// last regular fibre.
    pub fn absorb_star1(&self) -> Option<(Self, CompMap)> {
        if !self.stars.star1 {
            return None;
        }
        let s = self.with_positive_q();
        if s.p % s.q != 0 {
            return None;
        }
        let g = self.fibre_count();
        let out = SeifertParam {
            p: s.p + s.p / s.q,
            q: s.q + 1,
            stars: Stars {
                star1: false,
                star2: s.stars.star2,
            },
        };
        let mut map = identity_map(&self.components());
        map.insert(STAR1.into(), fibre_name(g));
        Some((out, map))
    }

    pub fn absorb_star2(&self) -> Option<(Self, CompMap)> {
        let (sw, m1) = self.swapped();
        let (ab, m2) = sw.absorb_star1()?;
        let (back, m3) = ab.swapped();
        Some((back, compose(&compose(&m1, &m2), &m3)))
    }

    /// Inverse of [`absorb_star1`](Self::absorb_star1): regular fibre `j`
    /// becomes `*1`.
    pub fn deabsorb_to_star1(&self, j: usize) -> Option<(Self, CompMap)> {
        if self.stars.star1 || j >= self.fibre_count() {
            return None;
        }
        let s = self.with_positive_q();
        if s.q < 2 || s.p % s.q != 0 {
            return None;
        }
        let out = SeifertParam {
            p: s.p - s.p / s.q,
            q: s.q - 1,
            stars: Stars {
                star1: true,
                star2: s.stars.star2,
            },
        };
        let mut map = identity_map(&self.components());
        for i in 0..self.fibre_count() {
            let target = match i.cmp(&j) {
                std::cmp::Ordering::Less => fibre_name(i),
                std::cmp::Ordering::Equal => STAR1.into(),
                std::cmp::Ordering::Greater => fibre_name(i - 1),
            };
            map.insert(fibre_name(i), target);
        }
        Some((out, map))
    }

    pub fn deabsorb_to_star2(&self, j: usize) -> Option<(Self, CompMap)> {
        let (sw, m1) = self.swapped();
        let (de, m2) = sw.deabsorb_to_star1(j)?;
        let (back, m3) = de.swapped();
        Some((back, compose(&compose(&m1, &m2), &m3)))
    }

    /// Absorbs exceptional fibres into the regular family while possible.
    pub fn absorbed(&self) -> (Self, CompMap) {
        let mut cur = *self;
        let mut map = identity_map(&self.components());
        loop {
            if let Some((n, m)) = cur.absorb_star1().or_else(|| cur.absorb_star2()) {
                map = compose(&map, &m);
                cur = n;
            } else {
                return (cur, map);
            }
        }
    }

    /// Unique representative of the unoriented isotopy class, with the map
    /// from this presentation's components to the representative's.
    ///
    /// Exceptional fibres are absorbed wherever possible, unknots collapse to
    /// `S(1,1|)`, Hopf links to `S(2,2|)`, and among the remaining
    /// `(±p,±q)`/swap variants the one with `p > 0` and least
    /// `(|p|, |q|, X)` is chosen.
    pub fn canonical(&self) -> (Self, CompMap) {
        let (cur, map) = self.absorbed();
        if cur.is_unknot() {
            let m = map.keys().map(|k| (k.clone(), fibre_name(0))).collect();
            return (SeifertParam::unknot(), m);
        }
        if cur.is_hopf() {
            let order = cur.components();
            let m = map
                .iter()
                .map(|(k, v)| {
                    let i = order.iter().position(|c| c == v).unwrap();
                    (k.clone(), fibre_name(i))
                })
                .collect();
            return (SeifertParam::hopf(), m);
        }
        let plain = if cur.p > 0 { cur } else { cur.negated() };
        let (sw, swap_map) = cur.swapped();
        let sw = if sw.p > 0 { sw } else { sw.negated() };
        let key = |s: &SeifertParam| (s.p.abs(), s.q.abs(), s.stars.encode());
        if key(&sw) < key(&plain) {
            (sw, compose(&map, &swap_map))
        } else {
            (plain, map)
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical().0 == *self
    }

    /// A presentation in which component `c` is `*1`, if one exists.
    pub fn star1_presentation(&self, c: &str) -> Option<(Self, CompMap)> {
        let (base, m0) = self.absorbed();
        let c = m0.get(c)?.clone();
        let (s, m) = match c.as_str() {
            STAR1 => (base, identity_map(&base.components())),
            STAR2 => base.swapped(),
            f => {
                let j = fibre_index(f)?;
                if let Some(r) = base.deabsorb_to_star1(j) {
                    r
                } else {
                    let (d, m1) = base.deabsorb_to_star2(j)?;
                    let (sw, m2) = d.swapped();
                    (sw, compose(&m1, &m2))
                }
            }
        };
        Some((s, compose(&m0, &m)))
    }

    pub fn star2_presentation(&self, c: &str) -> Option<(Self, CompMap)> {
        let (s, m) = self.star1_presentation(c)?;
        let (sw, m2) = s.swapped();
        Some((sw, compose(&m, &m2)))
    }

    /// A presentation in which `c` is a regular fibre, if one exists.
    pub fn regular_presentation(&self, c: &str) -> Option<(Self, CompMap)> {
        let (base, m0) = self.absorbed();
        let c = m0.get(c)?;
        fibre_index(c).map(|_| (base, m0))
    }

    /// The strong Brunnian set. Only singletons can be unlinks, since all
    /// pairwise linking numbers are nonzero.
    pub fn strong_brunnian(&self) -> BrunnianSet {
        let ground: IndexSet = self.components().into_iter().collect();
        let mut out = BrunnianSet::new(ground);
        let unknotted_fibres = self.p % self.q == 0 || self.q % self.p == 0;
        for c in self.components() {
            let is_star = c == STAR1 || c == STAR2;
            if is_star || unknotted_fibres {
                out.insert(std::iter::once(c).collect());
            }
        }
        out
    }

    /// Fibre-slope of the complement at the boundary torus of `c`.
    pub fn fibre_slope(&self, c: &str) -> Result<Slope> {
        self.check(c)?;
        if self.is_unknot_or_hopf() {
            return Err(Error::NonUniqueFibration(self.to_string()));
        }
        Ok(match c {
            STAR1 => Slope::new(self.p, self.q).unwrap(),
            STAR2 => Slope::new(self.q, self.p).unwrap(),
            _ => Slope::integer(self.p_prime() * self.q_prime()),
        })
    }

    pub fn linking_number(&self, c1: &str, c2: &str) -> Result<i64> {
        self.check(c1)?;
        self.check(c2)?;
        if c1 == c2 {
            return Err(Error::InvalidParameter(format!(
                "linking number of {c1} with itself"
            )));
        }
        let (pp, qq) = (self.p_prime(), self.q_prime());
        Ok(match (c1, c2) {
            (STAR1, STAR2) | (STAR2, STAR1) => 1,
            (STAR1, _) | (_, STAR1) => pp,
            (STAR2, _) | (_, STAR2) => qq,
            _ => pp * qq,
        })
    }

    /// The complement as `M(0, b; slopes)`, with `(m, l)` solving
    /// `p′m − lq′ = 1` and `m` the least non-negative solution.
    pub fn complement_descriptor(&self) -> SeifertManifoldDescriptor {
        let g = self.fibre_count() as i64;
        let (pp, qq) = (self.p_prime(), self.q_prime());
        let (m, l) = bezout_min_m(pp, qq);
        let slope_m = Slope::new(m, qq).unwrap();
        let slope_l = Slope::new(l, pp).unwrap();
        let (b, slopes) = match self.stars {
            Stars::NONE => (g, vec![slope_m, slope_l]),
            Stars::ONE => (1 + g, vec![slope_m]),
            Stars::TWO => (1 + g, vec![slope_l]),
            _ => (2 + g, vec![]),
        };
        SeifertManifoldDescriptor::new(0, b as u32, slopes)
    }

    /// Sublink obtained by deleting one regular fibre (needs two or more).
    pub(crate) fn without_fibre(&self, c: &str) -> Option<(Self, CompMap)> {
        let j = fibre_index(c)?;
        let g = self.fibre_count();
        if g < 2 || j >= g {
            return None;
        }
        let out = SeifertParam {
            p: self.p - self.p_prime(),
            q: self.q - self.q_prime(),
            stars: self.stars,
        };
        let mut map = CompMap::new();
        for name in self.components() {
            match fibre_index(&name) {
                Some(i) if i == j => {}
                Some(i) if i > j => {
                    map.insert(name, fibre_name(i - 1));
                }
                _ => {
                    map.insert(name.clone(), name);
                }
            }
        }
        Some((out, map))
    }

    pub(crate) fn without_stars(&self, remove: Stars) -> Self {
        SeifertParam {
            p: self.p,
            q: self.q,
            stars: Stars {
                star1: self.stars.star1 && !remove.star1,
                star2: self.stars.star2 && !remove.star2,
            },
        }
    }
}

/// `(m, l)` with `a·m − l·b = 1`, `0 ≤ m < |b|` (or `m = 0` when `|b| = 1`).
/// Requires `gcd(a, b) = 1`.
pub(crate) fn bezout_min_m(a: i64, b: i64) -> (i64, i64) {
    let modulus = b.abs();
    if modulus == 1 {
        // a·0 − l·b = 1
        return (0, -b);
    }
    let a_mod = a.rem_euclid(modulus);
    let m = (0..modulus)
        .find(|m| (a_mod * m) % modulus == 1)
        .expect("coprime parameters");
    let l = (a * m - 1) / b;
    (m, l)
}

impl fmt::Display for SeifertParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{}", self.p, self.q)?;
        match self.stars {
            Stars::NONE => {}
            Stars::ONE => write!(f, "|*1")?,
            Stars::TWO => write!(f, "|*2")?,
            _ => write!(f, "|*1,*2")?,
        }
        write!(f, ")")
    }
}
