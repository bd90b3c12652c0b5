//! Exact rational coefficients.
//!
//! Values that fit in `i64` numerator/denominator stay inline; anything larger
//! is promoted to a [`BigRational`] and demoted again when it shrinks back.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug)]
pub enum Q {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub const ZERO: Q = Q::Small(0, 1);
    pub const ONE: Q = Q::Small(1, 1);

    pub fn from_int(n: i64) -> Q {
        Q::Small(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Q {
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Q::ZERO;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        n /= g;
        d /= g;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Q::Small(n, d)
        } else {
            Q::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Q::Small(n, _) => n.signum() as i32,
            Q::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Q {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Q {
        match self {
            Q::Small(n, d) => match n.checked_neg() {
                Some(m) => Q::Small(m, *d),
                None => Q::from_big(-self.to_big()),
            },
            Q::Big(b) => Q::from_big(-(**b).clone()),
        }
    }

    pub fn add(&self, o: &Q) -> Q {
        if let (Q::Small(a, b), Q::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Q::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let (Some(n), Some(den)) = (x.checked_add(y), b.checked_mul(d)) {
                    return Q::from_i128(n, den);
                }
            }
        }
        Q::from_big(self.to_big() + o.to_big())
    }

    pub fn sub(&self, o: &Q) -> Q {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Q) -> Q {
        if let (Q::Small(a, b), Q::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Q::Small(p, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(n), Some(den)) = (a.checked_mul(c), b.checked_mul(d)) {
                return Q::from_i128(n, den);
            }
        }
        Q::from_big(self.to_big() * o.to_big())
    }

    /// Panics on division by zero; callers check first.
    pub fn div(&self, o: &Q) -> Q {
        assert!(!o.is_zero(), "division of a coefficient by zero");
        if let (Q::Small(a, b), Q::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(n), Some(den)) = (a.checked_mul(d), b.checked_mul(c)) {
                return Q::from_i128(n, den);
            }
        }
        Q::from_big(self.to_big() / o.to_big())
    }

    pub fn recip(&self) -> Q {
        Q::ONE.div(self)
    }

    pub fn pow(&self, e: i32) -> Q {
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Q::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Numerator and denominator as big integers (denominator positive).
    pub fn parts(&self) -> (BigInt, BigInt) {
        match self {
            Q::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Q::Big(b) => (b.numer().clone(), b.denom().clone()),
        }
    }

    pub fn from_parts(n: BigInt, d: BigInt) -> Q {
        Q::from_big(BigRational::new(n, d))
    }

    /// gcd of numerators over lcm of denominators, positive.
    pub fn content_of<'a>(it: impl IntoIterator<Item = &'a Q>) -> Q {
        let mut small: Option<(u64, u64)> = Some((0, 1));
        let mut big: Option<(BigInt, BigInt)> = None;
        for q in it {
            if let (Some((g, l)), Q::Small(n, d)) = (small, q) {
                let g2 = gcd_u64(g, n.unsigned_abs());
                let dd = *d as u64;
                let l2 = (l / gcd_u64(l, dd)).checked_mul(dd);
                if let Some(l2) = l2.filter(|v| *v <= i64::MAX as u64) {
                    small = Some((g2, l2));
                    continue;
                }
            }
            let (g, l) = match (small.take(), big.take()) {
                (Some((g, l)), _) => (BigInt::from(g), BigInt::from(l)),
                (None, Some(b)) => b,
                (None, None) => unreachable!(),
            };
            let (n, d) = q.parts();
            big = Some((g.gcd(&n), l.lcm(&d)));
        }
        match (small, big) {
            (Some((g, l)), _) => {
                if g == 0 {
                    Q::ONE
                } else {
                    Q::from_i128(g as i128, l as i128)
                }
            }
            (None, Some((g, l))) => {
                if g.is_zero() {
                    Q::ONE
                } else {
                    Q::from_parts(g, l)
                }
            }
            _ => unreachable!(),
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            (Q::Big(_), Q::Small(..)) | (Q::Small(..), Q::Big(_)) => false,
            (Q::Big(a), Q::Big(b)) => a == b,
        }
    }
}

impl Eq for Q {}

impl std::hash::Hash for Q {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self {
            Q::Small(n, d) => {
                n.hash(h);
                d.hash(h);
            }
            Q::Big(b) => b.hash(h),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl FromStr for Q {
    type Err = String;
    fn from_str(s: &str) -> Result<Q, String> {
        let parse = |t: &str| BigInt::from_str(t.trim()).map_err(|_| format!("bad integer `{t}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Q::from_parts(parse(n)?, d))
            }
            None => Ok(Q::from_big(BigRational::from_integer(parse(s)?))),
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::from_int(n)
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Q {
        Q::from_big(r)
    }
}

impl Default for Q {
    fn default() -> Q {
        Q::ZERO
    }
}

impl One for Q {
    fn one() -> Q {
        Q::ONE
    }
}

impl std::ops::Mul for Q {
    type Output = Q;
    fn mul(self, o: Q) -> Q {
        Q::mul(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Q::Big(_)));
        let back = sq.div(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Q::Small(..)));
    }

    #[test]
    fn arithmetic_reduces() {
        assert_eq!(Q::new(2, 4), Q::new(1, 2));
        assert_eq!(Q::new(1, 2).add(&Q::new(1, 3)), Q::new(5, 6));
        assert_eq!(Q::new(-3, -6), Q::new(1, 2));
        assert_eq!(Q::new(2, 3).pow(-2), Q::new(9, 4));
        assert_eq!(Q::from_int(i64::MIN).neg().neg(), Q::from_int(i64::MIN));
    }

    #[test]
    fn content() {
        let v = [Q::new(2, 3), Q::new(4, 5), Q::from_int(-6)];
        assert_eq!(Q::content_of(v.iter()), Q::new(2, 15));
        assert_eq!("-7/21".parse::<Q>().unwrap(), Q::new(-1, 3));
    }
}
