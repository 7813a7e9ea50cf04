//! Exact rationals with an inline fast path, mirroring [`Integer`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::integer::Integer;

/// A reduced fraction. `Small(n, d)` always has `d > 0` and `gcd(n, d) = 1`;
/// `Big` is only used when one of the reduced parts leaves the `i64` range.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    fn from_i128(n: i128, d: i128) -> Rational {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational::Small(a, b),
            _ => Rational::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rational::Small(a, b),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn from_integer(v: &Integer) -> Rational {
        match v {
            Integer::Small(n) => Rational::Small(*n, 1),
            Integer::Big(b) => Rational::from_big(BigRational::from_integer((**b).clone())),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn add(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            if b == d {
                if let Some(s) = a.checked_add(*c) {
                    return Rational::from_i128(s as i128, *b as i128);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y), Some(den)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                if let Some(num) = x.checked_add(y) {
                    return Rational::from_i128(num, den);
                }
            }
        }
        Rational::from_big(self.to_big() + o.to_big())
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Rational::from_big(-self.to_big()),
            },
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }

    pub fn sub(&self, o: &Rational) -> Rational {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(n), Some(m)) = (a.checked_mul(c), b.checked_mul(d)) {
                return Rational::from_i128(n, m);
            }
        }
        Rational::from_big(self.to_big() * o.to_big())
    }

    pub fn inv(&self) -> Option<Rational> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => {
                if b.is_zero() {
                    None
                } else {
                    Some(Rational::from_big(b.recip()))
                }
            }
        }
    }

    /// Numerator and denominator as integers.
    pub fn parts(&self) -> (Integer, Integer) {
        match self {
            Rational::Small(n, d) => (Integer::Small(*n), Integer::Small(*d)),
            Rational::Big(b) => (
                Integer::from_big(b.numer().clone()),
                Integer::from_big(b.denom().clone()),
            ),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.denom().is_one(),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_stays_reduced() {
        let half = Rational::Small(1, 2);
        let third = Rational::Small(1, 3);
        assert_eq!(half.add(&third), Rational::Small(5, 6));
        assert_eq!(half.add(&half), Rational::ONE);
        assert_eq!(half.sub(&half), Rational::ZERO);
        assert_eq!(Rational::Small(-2, 3).inv(), Some(Rational::Small(-3, 2)));
        assert_eq!(Rational::ZERO.inv(), None);
    }

    #[test]
    fn promotion_round_trip() {
        let big = Rational::Small(i64::MAX, 1);
        let s = big.add(&big);
        assert!(matches!(s, Rational::Big(_)));
        let back = s.mul(&Rational::Small(1, 2));
        assert_eq!(back, Rational::Small(i64::MAX, 1));
    }
}
