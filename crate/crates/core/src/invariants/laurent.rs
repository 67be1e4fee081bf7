use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Integer Laurent polynomial in `t`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coef: i64, exp: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coef);
        p
    }

    /// `coefs[i]` is the coefficient of `t^i`.
    pub fn from_coeffs(coefs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero();
        for (i, &c) in coefs.iter().enumerate() {
            p.add_term(i as i64, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, coef: i64) {
        if coef == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coef;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Span of exponents; 0 for monomials, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading_coeff(&self) -> i64 {
        self.terms.values().next_back().copied().unwrap_or(0)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// `p(t) ↦ p(t^k)`. With `k = 0` every term collapses onto the constant.
    pub fn substitute_power(&self, k: i64) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, &c)| (e * k, c)))
    }

    /// Representative of `p` modulo units `±t^k`: lowest exponent 0 and
    /// positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return LaurentPoly::zero();
        };
        let p = self.shift(-lo);
        if p.leading_coeff() < 0 {
            -p
        } else {
            p
        }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalized()
    }

    /// Exact division; fails unless `divisor` divides `self` over `Z[t, t⁻¹]`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(dlo), Some(dhi)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::InvalidParameter("division by zero polynomial".into()));
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rhi) = rem.max_exp() {
            if rhi - rem.min_exp().unwrap() < dhi - dlo {
                break;
            }
            let c = rem.coeff(rhi);
            if c % lead != 0 {
                break;
            }
            let term = LaurentPoly::monomial(c / lead, rhi - dhi);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::InvalidParameter(format!(
                "{divisor} does not divide {self}"
            )))
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    /// Parses the `c0 + c1*t + c2*t^2` form produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(LaurentPoly::zero());
        }
        // split before every sign that is not part of an exponent
        let mut pieces: Vec<String> = Vec::new();
        let mut prev = '\0';
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != '^' || pieces.is_empty() {
                pieces.push(String::new());
            }
            pieces.last_mut().unwrap().push(ch);
            prev = ch;
        }
        let mut out = LaurentPoly::zero();
        for piece in pieces {
            let (sign, term) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece.as_str()),
            };
            let (coef, exp) = match term.split_once('t') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0),
                Some((c, e)) => {
                    let coef = match c {
                        "" => 1,
                        _ => c.strip_suffix('*').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                    };
                    let exp = match e {
                        "" => 1,
                        _ => e.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                    };
                    (coef, exp)
                }
            };
            out.add_term(exp, sign * coef);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "t")?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}
