use std::collections::BTreeSet;
use std::fmt;

pub type IndexSet = BTreeSet<String>;

/// A family of subsets of a finite index set: the sublinks that are unlinks.
///
/// The empty set is never stored; [`BrunnianSet::contains`] treats it as a
/// member (the empty link is the 0-component unlink).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BrunnianSet {
    ground: IndexSet,
    members: BTreeSet<IndexSet>,
}

impl BrunnianSet {
    pub fn new(ground: IndexSet) -> Self {
        BrunnianSet {
            ground,
            members: BTreeSet::new(),
        }
    }

    pub fn from_members<I>(ground: IndexSet, members: I) -> Self
    where
        I: IntoIterator<Item = IndexSet>,
    {
        let mut s = BrunnianSet::new(ground);
        for m in members {
            s.insert(m);
        }
        s
    }

    pub fn insert(&mut self, member: IndexSet) {
        debug_assert!(member.is_subset(&self.ground));
        if !member.is_empty() {
            self.members.insert(member);
        }
    }

    pub fn ground(&self) -> &IndexSet {
        &self.ground
    }

    pub fn members(&self) -> impl Iterator<Item = &IndexSet> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &IndexSet) -> bool {
        s.is_empty() || self.members.contains(s)
    }

    pub fn contains_all<'a, I: IntoIterator<Item = &'a str>>(&self, items: I) -> bool {
        let s: IndexSet = items.into_iter().map(str::to_owned).collect();
        self.contains(&s)
    }

    /// Every subset of a member is a member.
    pub fn is_subset_closed(&self) -> bool {
        self.first_subset_closure_gap().is_none()
    }

    /// A member together with a nonempty subset of it that is missing.
    pub fn first_subset_closure_gap(&self) -> Option<(IndexSet, IndexSet)> {
        for m in &self.members {
            // dropping one element at a time suffices by induction
            for x in m {
                let mut sub = m.clone();
                sub.remove(x);
                if !self.contains(&sub) {
                    return Some((m.clone(), sub));
                }
            }
        }
        None
    }

    /// `S, T` members with `S ∩ T ≠ ∅` implies `S ∪ T` is a member.
    pub fn is_union_closed(&self) -> bool {
        self.members.iter().all(|s| {
            self.members
                .iter()
                .filter(|t| !s.is_disjoint(t))
                .all(|t| self.members.contains(&s.union(t).cloned().collect::<IndexSet>()))
        })
    }
}

impl fmt::Display for BrunnianSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, x) in m.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
pub(crate) fn set_of<'a, I: IntoIterator<Item = &'a str>>(items: I) -> IndexSet {
    items.into_iter().map(str::to_owned).collect()
}
