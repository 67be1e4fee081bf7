use std::fmt;

use crate::links::label::atom_name_literal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// An expression node. Equality ignores positions.
#[derive(Debug, Clone)]
pub struct Node {
    pub kind: Kind,
    pub pos: Pos,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Node {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Torus(i64, i64),
    Seifert { p: i64, q: i64, star1: bool, star2: bool },
    KeyChain { keys: i64, neg: Option<i64> },
    Unknot,
    Unlink(i64),
    Atom(String),
    Splice(Box<Arg>, Box<Arg>),
    Sum(Vec<Node>),
    Cable(i64, i64, Box<Node>),
    Whitehead(Box<Node>),
    Delete(Box<Node>, Target),
}

impl Kind {
    pub fn is_literal(&self) -> bool {
        matches!(
            self,
            Kind::Torus(..)
                | Kind::Seifert { .. }
                | Kind::KeyChain { .. }
                | Kind::Unknot
                | Kind::Unlink(_)
                | Kind::Atom(_)
        )
    }
}

/// A splice operand: an expression and an optional component selector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arg {
    pub expr: Node,
    pub sel: Option<Selector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Sel(Selector),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    Fiber(usize),
    Star1,
    Star2,
    Key(usize),
    Keyring,
    Comp(String),
}

impl Selector {
    /// The external label this selector names.
    pub fn label(&self) -> String {
        match self {
            Selector::Fiber(i) => format!("f{i}"),
            Selector::Star1 => "s1".into(),
            Selector::Star2 => "s2".into(),
            Selector::Key(i) => format!("k{i}"),
            Selector::Keyring => "r".into(),
            Selector::Comp(l) => l.clone(),
        }
    }
}

pub(crate) fn is_bare_label(s: &str) -> bool {
    !s.is_empty()
        && (s == "*"
            || s.chars().all(|c| c.is_ascii_digit())
            || (s.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
                && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')))
}

fn label_literal(s: &str) -> String {
    if is_bare_label(s) {
        s.to_owned()
    } else {
        serde_json::to_string(s).unwrap()
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Fiber(i) => write!(f, ".fiber[{i}]"),
            Selector::Star1 => write!(f, ".star1"),
            Selector::Star2 => write!(f, ".star2"),
            Selector::Key(i) => write!(f, ".key[{i}]"),
            Selector::Keyring => write!(f, ".keyring"),
            Selector::Comp(l) => write!(f, ".comp[{}]", label_literal(l)),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)?;
        if let Some(s) = &self.sel {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Torus(p, q) => write!(f, "T({p},{q})"),
            Kind::Seifert { p, q, star1, star2 } => {
                write!(f, "S({p},{q}")?;
                let flags: Vec<&str> = [(*star1, "*1"), (*star2, "*2")]
                    .into_iter()
                    .filter(|x| x.0)
                    .map(|x| x.1)
                    .collect();
                if !flags.is_empty() {
                    write!(f, "|{}", flags.join(","))?;
                }
                write!(f, ")")
            }
            Kind::KeyChain { keys, neg: None } => write!(f, "H({keys})"),
            Kind::KeyChain { keys, neg: Some(k) } => write!(f, "H({keys};neg={k})"),
            Kind::Unknot => write!(f, "O"),
            Kind::Unlink(n) => write!(f, "U({n})"),
            Kind::Atom(name) => write!(f, "atom({})", atom_name_literal(name)),
            Kind::Splice(a, b) => write!(f, "splice({a}, {b})"),
            Kind::Sum(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "sum({})", parts.join(", "))
            }
            Kind::Cable(p, q, x) => write!(f, "cable({p},{q}, {x})"),
            Kind::Whitehead(x) => write!(f, "whitehead({x})"),
            Kind::Delete(x, Target::Sel(s)) => write!(f, "delete({x}, {s})"),
            Kind::Delete(x, Target::Label(l)) => write!(f, "delete({x}, {})", label_literal(l)),
        }
    }
}
