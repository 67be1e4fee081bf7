use std::fmt;

/// An extended rational `num/den`, with `1/0` standing for infinity.
///
/// Always stored in lowest terms with a non-negative denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    num: i64,
    den: i64,
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Slope {
    pub const INFINITY: Slope = Slope { num: 1, den: 0 };

    /// Returns `None` for `0/0`.
    pub fn new(num: i64, den: i64) -> Option<Slope> {
        if num == 0 && den == 0 {
            return None;
        }
        if den == 0 {
            return Some(Slope::INFINITY);
        }
        let g = gcd(num, den);
        let s = den.signum();
        Some(Slope {
            num: s * num / g,
            den: s * den / g,
        })
    }

    pub fn integer(n: i64) -> Slope {
        Slope { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// `1/s`; the reciprocal of `0` is `∞` and vice versa.
    pub fn reciprocal(&self) -> Slope {
        Slope::new(self.den, self.num).expect("a slope is never 0/0")
    }

    pub fn is_reciprocal_of(&self, other: &Slope) -> bool {
        self.reciprocal() == *other
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
