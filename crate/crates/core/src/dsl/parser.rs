//! Recursive-descent parser.
//!
//! ```text
//! expr   := literal | ctor "(" args ")"
//! literal:= "T(" int "," int ")" | "S(" int "," int ["|" star {"," star}] ")"
//!         | "H(" int [";" "neg" "=" int] ")" | "O" | "U(" int ")"
//!         | "atom(" (ident | string) ")"
//! ctor   := splice(arg, arg) | sum(expr {, expr}) | cable(int, int, expr)
//!         | whitehead(expr) | delete(expr, selector | label)
//! arg    := expr [selector]
//! selector := ".fiber[" n "]" | ".star1" | ".star2" | ".key[" n "]"
//!           | ".keyring" | ".comp[" label "]"
//! ```

use super::ast::{Arg, Kind, Node, Pos, Selector, Target};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Punct(char),
    Eof,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        col: pos.col,
        message: message.into(),
    }
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>> {
        let mut out = Vec::new();
        loop {
            while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let pos = Pos {
                line: self.line,
                col: self.col,
            };
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::Eof, pos));
                return Ok(out);
            };
            let tok = if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                    s.push(c);
                    self.bump();
                }
                Tok::Ident(s)
            } else if c.is_ascii_digit() || c == '-' || c == '+' {
                let mut s = String::new();
                s.push(c);
                self.bump();
                while let Some(&c) = self.chars.peek().filter(|c| c.is_ascii_digit()) {
                    s.push(c);
                    self.bump();
                }
                if s == "-" || s == "+" {
                    return Err(syntax(pos, format!("expected digits after {s:?}")));
                }
                Tok::Int(s.parse().map_err(|_| syntax(pos, format!("integer {s} out of range")))?)
            } else if c == '"' {
                let mut raw = String::from('"');
                self.bump();
                let mut escaped = false;
                loop {
                    let Some(c) = self.bump() else {
                        return Err(syntax(pos, "unterminated string"));
                    };
                    raw.push(c);
                    if escaped {
                        escaped = false;
                    } else if c == '\\' {
                        escaped = true;
                    } else if c == '"' {
                        break;
                    }
                }
                Tok::Str(serde_json::from_str(&raw).map_err(|e| syntax(pos, format!("bad string: {e}")))?)
            } else if "(),.[]|;=*".contains(c) {
                self.bump();
                Tok::Punct(c)
            } else {
                return Err(syntax(pos, format!("unexpected character {c:?}")));
            };
            out.push((tok, pos));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("{s:?}"),
        Tok::Int(n) => format!("{n}"),
        Tok::Str(s) => format!("string {s:?}"),
        Tok::Punct(c) => format!("{c:?}"),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let (t, pos) = self.next();
        if t == Tok::Punct(c) {
            Ok(())
        } else {
            Err(syntax(pos, format!("expected {c:?}, found {}", describe(&t))))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.next() {
            (Tok::Int(n), _) => Ok(n),
            (t, pos) => Err(syntax(pos, format!("expected integer, found {}", describe(&t)))),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let pos = self.pos();
        let n = self.int()?;
        usize::try_from(n).map_err(|_| syntax(pos, "index must be non-negative"))
    }

    fn label(&mut self) -> Result<String> {
        match self.next() {
            (Tok::Ident(s) | Tok::Str(s), _) => Ok(s),
            (Tok::Int(n), _) if n >= 0 => Ok(n.to_string()),
            (Tok::Punct('*'), _) => Ok("*".into()),
            (t, pos) => Err(syntax(pos, format!("expected component label, found {}", describe(&t)))),
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let (t, pos) = self.next();
        let Tok::Ident(name) = t else {
            return Err(syntax(pos, format!("expected expression, found {}", describe(&t))));
        };
        let kind = match name.as_str() {
            "O" => Kind::Unknot,
            "T" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let q = self.int()?;
                self.expect(')')?;
                Kind::Torus(p, q)
            }
            "S" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let q = self.int()?;
                let (mut star1, mut star2) = (false, false);
                if self.eat('|') {
                    loop {
                        let spos = self.pos();
                        self.expect('*')?;
                        match self.int()? {
                            1 if !star1 => star1 = true,
                            2 if !star2 => star2 = true,
                            _ => return Err(syntax(spos, "flags are *1 and *2, each at most once")),
                        }
                        if !self.eat(',') {
                            break;
                        }
                    }
                }
                self.expect(')')?;
                Kind::Seifert { p, q, star1, star2 }
            }
            "H" => {
                self.expect('(')?;
                let keys = self.int()?;
                let mut neg = None;
                if self.eat(';') {
                    match self.next() {
                        (Tok::Ident(s), _) if s == "neg" => {}
                        (t, pos) => return Err(syntax(pos, format!("expected neg, found {}", describe(&t)))),
                    }
                    self.expect('=')?;
                    neg = Some(self.int()?);
                }
                self.expect(')')?;
                Kind::KeyChain { keys, neg }
            }
            "U" => {
                self.expect('(')?;
                let n = self.int()?;
                self.expect(')')?;
                Kind::Unlink(n)
            }
            "atom" => {
                self.expect('(')?;
                let name = match self.next() {
                    (Tok::Ident(s) | Tok::Str(s), _) => s,
                    (t, pos) => return Err(syntax(pos, format!("expected atom name, found {}", describe(&t)))),
                };
                self.expect(')')?;
                Kind::Atom(name)
            }
            "splice" => {
                self.expect('(')?;
                let a = self.arg()?;
                self.expect(',')?;
                let b = self.arg()?;
                self.expect(')')?;
                Kind::Splice(Box::new(a), Box::new(b))
            }
            "sum" => {
                self.expect('(')?;
                let mut xs = vec![self.expr()?];
                while self.eat(',') {
                    xs.push(self.expr()?);
                }
                self.expect(')')?;
                Kind::Sum(xs)
            }
            "cable" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let q = self.int()?;
                self.expect(',')?;
                let x = self.expr()?;
                self.expect(')')?;
                Kind::Cable(p, q, Box::new(x))
            }
            "whitehead" => {
                self.expect('(')?;
                let x = self.expr()?;
                self.expect(')')?;
                Kind::Whitehead(Box::new(x))
            }
            "delete" => {
                self.expect('(')?;
                let x = self.expr()?;
                self.expect(',')?;
                let target = if *self.peek() == Tok::Punct('.') {
                    let spos = self.pos();
                    let sel = self.selector()?;
                    check_selector(&x, &sel, spos)?;
                    Target::Sel(sel)
                } else {
                    Target::Label(self.label()?)
                };
                self.expect(')')?;
                Kind::Delete(Box::new(x), target)
            }
            other => return Err(syntax(pos, format!("unknown constructor {other:?}"))),
        };
        let node = Node { kind, pos };
        check_literal(&node)?;
        Ok(node)
    }

    fn arg(&mut self) -> Result<Arg> {
        let expr = self.expr()?;
        let sel = if *self.peek() == Tok::Punct('.') {
            let pos = self.pos();
            let sel = self.selector()?;
            check_selector(&expr, &sel, pos)?;
            Some(sel)
        } else {
            None
        };
        Ok(Arg { expr, sel })
    }

    fn selector(&mut self) -> Result<Selector> {
        self.expect('.')?;
        let (t, pos) = self.next();
        let Tok::Ident(name) = t else {
            return Err(syntax(pos, format!("expected selector, found {}", describe(&t))));
        };
        let bracketed = |p: &mut Parser| -> Result<usize> {
            p.expect('[')?;
            let i = p.index()?;
            p.expect(']')?;
            Ok(i)
        };
        Ok(match name.as_str() {
            "fiber" => Selector::Fiber(bracketed(self)?),
            "star1" => Selector::Star1,
            "star2" => Selector::Star2,
            "key" => Selector::Key(bracketed(self)?),
            "keyring" => Selector::Keyring,
            "comp" => {
                self.expect('[')?;
                let l = self.label()?;
                self.expect(']')?;
                Selector::Comp(l)
            }
            _ => {
                return Err(Error::UnknownSelector {
                    name,
                    line: pos.line,
                    col: pos.col,
                })
            }
        })
    }
}

/// Parameter checks that need no database.
fn check_literal(node: &Node) -> Result<()> {
    let bad = |m: String| Err(syntax(node.pos, m));
    match &node.kind {
        Kind::Torus(p, q) | Kind::Seifert { p, q, .. } if *p == 0 || *q == 0 => {
            bad(format!("Seifert parameters must be nonzero (got {p},{q})"))
        }
        Kind::KeyChain { keys, neg } => {
            if *keys < 1 || neg.is_some_and(|k| k < 0 || k > *keys) {
                bad(format!("bad key-chain parameters in {node}"))
            } else {
                Ok(())
            }
        }
        Kind::Unlink(n) if *n < 1 => bad(format!("U({n}) needs at least one component")),
        Kind::Sum(xs) if xs.is_empty() => bad("sum needs an operand".into()),
        _ => Ok(()),
    }
}

/// Selectors applied directly to a literal must name one of its components.
fn check_selector(expr: &Node, sel: &Selector, pos: Pos) -> Result<()> {
    let ok = match &expr.kind {
        Kind::Torus(p, q) => {
            let g = crate::links::slope::gcd(*p, *q) as usize;
            matches!(sel, Selector::Fiber(i) if *i < g) || matches!(sel, Selector::Comp(_))
        }
        Kind::Seifert { p, q, star1, star2 } => {
            let g = crate::links::slope::gcd(*p, *q) as usize;
            match sel {
                Selector::Fiber(i) => *i < g,
                Selector::Star1 => *star1,
                Selector::Star2 => *star2,
                Selector::Comp(_) => true,
                _ => false,
            }
        }
        Kind::KeyChain { keys, .. } => match sel {
            Selector::Key(i) => (*i as i64) < *keys,
            Selector::Keyring | Selector::Comp(_) => true,
            _ => false,
        },
        Kind::Unknot | Kind::Unlink(_) => matches!(sel, Selector::Comp(_)),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(syntax(pos, format!("{expr} has no component {sel}")))
    }
}

pub fn parse(text: &str) -> Result<Node> {
    let toks = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    }
    .tokens()?;
    let mut p = Parser { toks, at: 0 };
    let node = p.expr()?;
    match p.next() {
        (Tok::Eof, _) => Ok(node),
        (t, pos) => Err(syntax(pos, format!("unexpected {} after expression", describe(&t)))),
    }
}
