//! Arbitrary precision integers with an inline fast path.
//!
//! Almost every coefficient met in practice fits in an `i64`, so the value
//! lives inline until an operation overflows, at which point it moves to a
//! heap-allocated [`BigInt`]. The representation is canonical: `Big` is only
//! used for values outside the `i64` range, so derived equality and hashing
//! are correct.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    Big(Box<BigInt>),
}

impl Integer {
    pub const ZERO: Integer = Integer::Small(0);
    pub const ONE: Integer = Integer::Small(1);

    pub fn from_big(b: BigInt) -> Integer {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    /// True for the units of Z, that is ±1.
    pub fn is_unit(&self) -> bool {
        matches!(self, Integer::Small(1) | Integer::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Integer::Small(v) => v.signum() as i32,
            Integer::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_abs() {
                Some(a) => Integer::Small(a),
                None => Integer::from_big(BigInt::from(*v).abs()),
            },
            Integer::Big(b) => Integer::from_big(b.abs()),
        }
    }

    pub fn add(&self, o: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            if let Some(s) = a.checked_add(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_big() + o.to_big())
    }

    pub fn sub(&self, o: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            if let Some(s) = a.checked_sub(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_big() - o.to_big())
    }

    pub fn mul(&self, o: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            if let Some(s) = a.checked_mul(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_big() * o.to_big())
    }

    pub fn neg(&self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Integer::Big(b) => Integer::from_big(-(**b).clone()),
        }
    }

    /// Floor division with remainder: `self = q * o + r` with `0 <= r < |o|`.
    pub fn div_mod_floor(&self, o: &Integer) -> (Integer, Integer) {
        assert!(!o.is_zero(), "division by zero");
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            if let (Some(q), Some(r)) = (a.checked_div_euclid(*b), a.checked_rem_euclid(*b)) {
                return (Integer::Small(q), Integer::Small(r));
            }
        }
        let (a, b) = (self.to_big(), o.to_big());
        let r = a.mod_floor(&b.abs());
        let q = (&a - &r) / &b;
        (Integer::from_big(q), Integer::from_big(r))
    }

    /// Exact division; panics in debug builds if `o` does not divide `self`.
    pub fn div_exact(&self, o: &Integer) -> Integer {
        let (q, r) = self.div_mod_floor(o);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn gcd(&self, o: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            let g = (*a as i128).unsigned_abs().gcd(&(*b as i128).unsigned_abs());
            if let Ok(v) = i64::try_from(g) {
                return Integer::Small(v);
            }
        }
        Integer::from_big(self.to_big().gcd(&o.to_big()))
    }

    pub fn pow(&self, e: u32) -> Integer {
        let mut r = Integer::ONE;
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Factor a positive integer into (prime, exponent) pairs by trial division.
    pub fn factor(&self) -> Vec<(u64, u32)> {
        let mut n = self.abs().to_big();
        assert!(!n.is_zero(), "cannot factor zero");
        let mut out = Vec::new();
        let mut p: u64 = 2;
        while BigInt::from(p) * BigInt::from(p) <= n {
            let bp = BigInt::from(p);
            let mut e = 0;
            while (&n % &bp).is_zero() {
                n /= &bp;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if !n.is_one() {
            let v = n.to_u64().expect("prime factor exceeds u64");
            out.push((v, 1));
        }
        out
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer::Small(v as i64)
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
