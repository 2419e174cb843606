//! Numbers of the form `(a + b·√K) / c`, compared exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRadical {
    pub a: i64,
    pub b: i64,
    /// Positive denominator.
    pub c: i64,
    /// Nonnegative radicand.
    #[serde(rename = "K")]
    pub k: i64,
}

/// Sign of `x + y·√p` for `p >= 0`.
fn sign_sqrt1(x: &BigInt, y: &BigInt, p: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    if y.is_zero() || p.is_zero() {
        return x.cmp(&zero);
    }
    let sx = x.cmp(&zero);
    let sy = y.cmp(&zero);
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    // opposite signs: compare x² with y²p
    let lhs = x * x;
    let rhs = y * y * p;
    match sx {
        Ordering::Greater => lhs.cmp(&rhs),
        _ => rhs.cmp(&lhs),
    }
}

/// Sign of `x + y·√p + z·√q` for `p, q >= 0`.
fn sign_sqrt2(x: &BigInt, y: &BigInt, p: &BigInt, z: &BigInt, q: &BigInt) -> Ordering {
    if z.is_zero() || q.is_zero() {
        return sign_sqrt1(x, y, p);
    }
    // A = x + y√p, B = z√q; sign(A + B).
    let sa = sign_sqrt1(x, y, p);
    let sb = z.cmp(&BigInt::zero());
    if sa == Ordering::Equal {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    // opposite signs: compare A² = x² + y²p + 2xy√p with B² = z²q.
    let r = x * x + y * y * p - z * z * q;
    let s = BigInt::from(2) * x * y;
    let diff = sign_sqrt1(&r, &s, p); // sign(A² - B²)
    if sa == Ordering::Greater {
        diff
    } else {
        diff.reverse()
    }
}

impl ExactRadical {
    pub fn new(a: i64, b: i64, c: i64, k: i64) -> Self {
        assert!(c != 0, "zero denominator");
        assert!(k >= 0, "negative radicand");
        if c < 0 {
            Self {
                a: -a,
                b: -b,
                c: -c,
                k,
            }
        } else {
            Self { a, b, c, k }
        }
    }

    pub fn integer(v: i64) -> Self {
        Self::new(v, 0, 1, 0)
    }

    pub fn rational(r: Rational) -> Self {
        Self::new(*r.numer(), 0, *r.denom(), 0)
    }

    /// Orders `self` against `p/q` exactly.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        // (a + b√K)/c vs p/q  <=>  q·a - p·c + q·b·√K vs 0
        let (p, q) = (BigInt::from(*r.numer()), BigInt::from(*r.denom()));
        let x = &q * BigInt::from(self.a) - &p * BigInt::from(self.c);
        let y = &q * BigInt::from(self.b);
        sign_sqrt1(&x, &y, &BigInt::from(self.k))
    }

    /// Orders two radicals exactly, including different radicands.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        // c'·(a + b√K) - c·(a' + b'√K') vs 0
        let (c1, c2) = (BigInt::from(self.c), BigInt::from(other.c));
        let x = &c2 * BigInt::from(self.a) - &c1 * BigInt::from(other.a);
        let y = &c2 * BigInt::from(self.b);
        let z = -(&c1 * BigInt::from(other.b));
        let (p, q) = (BigInt::from(self.k), BigInt::from(other.k));
        if p == q {
            return sign_sqrt1(&x, &(y + z), &p);
        }
        sign_sqrt2(&x, &y, &p, &z, &q)
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0 || self.k == 0 || integer_sqrt(self.k).is_some()
    }

    /// Rewrites a perfect-square radicand into the rational part.
    pub fn simplified(&self) -> Self {
        match integer_sqrt(self.k) {
            Some(root) if self.b != 0 => {
                let num = Rational::new(self.a + self.b * root, self.c);
                Self::rational(num)
            }
            _ if self.b == 0 || self.k == 0 => Self::rational(Rational::new(self.a, self.c)),
            _ => *self,
        }
    }

    /// Decimal approximation for display only.
    pub fn approx(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.k as f64).sqrt()) / self.c as f64
    }
}

/// Orders a rational against a radical.
pub fn cmp_rational_radical(lhs: &Rational, rhs: &ExactRadical) -> Ordering {
    rhs.cmp_rational(lhs).reverse()
}

pub fn integer_sqrt(k: i64) -> Option<i64> {
    if k < 0 {
        return None;
    }
    let big = BigInt::from(k);
    let root = big.sqrt();
    if &root * &root == big {
        i64::try_from(root).ok()
    } else {
        None
    }
}

/// Decides `(x + y·√k) >= 0` style questions for callers holding integers.
pub fn sign_of(x: i64, y: i64, k: i64) -> Ordering {
    sign_sqrt1(&BigInt::from(x), &BigInt::from(y), &BigInt::from(k))
}

impl fmt::Display for ExactRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 || self.k == 0 {
            return write!(f, "{}", Rational::new(self.a, self.c));
        }
        let op = if self.b < 0 { '-' } else { '+' };
        write!(
            f,
            "({} {} {}*sqrt({}))/{}",
            self.a,
            op,
            self.b.abs(),
            self.k,
            self.c
        )
    }
}
