//! Coefficient rings. Every algorithm in the crate is generic over
//! [`CoeffRing`]; a ring value is a small context object (it carries the
//! modulus for `Fp`) and elements are plain values.

use std::fmt;
use std::hash::Hash;

use super::integer::Integer;
use super::rational::Rational;
use crate::error::KhError;

/// Tag naming one of the supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    F2,
    Fp(u32),
    Q,
    Z,
}

impl Ring {
    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Z)
    }

    /// Characteristic of the ring (0 for Q and Z).
    pub fn characteristic(self) -> u32 {
        match self {
            Ring::F2 => 2,
            Ring::Fp(p) => p,
            Ring::Q | Ring::Z => 0,
        }
    }

    /// Parse `f2`, `fp:<p>`, `q` or `z`.
    pub fn parse(s: &str) -> Result<Ring, KhError> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "f2" => Ok(Ring::F2),
            "q" => Ok(Ring::Q),
            "z" => Ok(Ring::Z),
            _ => {
                let p = t
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| KhError::BadRing(format!("unknown ring `{s}`")))?;
                if p == 2 {
                    return Ok(Ring::F2);
                }
                if !is_prime(p) || p >= 1 << 31 {
                    return Err(KhError::BadRing(format!("{p} is not a supported prime")));
                }
                Ok(Ring::Fp(p))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::F2 => write!(f, "f2"),
            Ring::Fp(p) => write!(f, "fp:{p}"),
            Ring::Q => write!(f, "q"),
            Ring::Z => write!(f, "z"),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub trait CoeffRing: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn tag(&self) -> Ring;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_integer(&self, v: &Integer) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a unit, `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }

    fn is_field(&self) -> bool {
        self.tag().is_field()
    }

    /// Integer lift of an element of Z; `None` for other rings.
    fn as_integer(&self, _a: &Self::Elem) -> Option<Integer> {
        None
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct F2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Fp {
    pub fn new(p: u32) -> Result<Fp, KhError> {
        if p < 3 || !is_prime(p) || p >= 1 << 31 {
            return Err(KhError::BadRing(format!("fp:{p} needs an odd prime below 2^31")));
        }
        Ok(Fp { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let m = self.p as u64;
        let mut r = 1u64;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        r
    }
}

impl CoeffRing for F2 {
    type Elem = u8;

    fn tag(&self) -> Ring {
        Ring::F2
    }
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn from_i64(&self, v: i64) -> u8 {
        (v & 1) as u8
    }
    fn from_integer(&self, v: &Integer) -> u8 {
        match v {
            Integer::Small(x) => (x & 1) as u8,
            Integer::Big(b) => (b.bit(0)) as u8,
        }
    }
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }
    fn neg(&self, a: &u8) -> u8 {
        *a
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        a & b
    }
    fn inv(&self, a: &u8) -> Option<u8> {
        (*a == 1).then_some(1)
    }
}

impl CoeffRing for Fp {
    type Elem = u32;

    fn tag(&self) -> Ring {
        Ring::Fp(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_integer(&self, v: &Integer) -> u32 {
        match v {
            Integer::Small(x) => self.from_i64(*x),
            Integer::Big(b) => {
                let r = (**b).clone() % num_bigint::BigInt::from(self.p);
                let r: i64 = num_traits::ToPrimitive::to_i64(&r).expect("residue fits");
                self.from_i64(r)
            }
        }
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(*a as u64, self.p as u64 - 2) as u32)
    }
}

impl CoeffRing for Rationals {
    type Elem = Rational;

    fn tag(&self) -> Ring {
        Ring::Q
    }
    fn zero(&self) -> Rational {
        Rational::ZERO
    }
    fn one(&self) -> Rational {
        Rational::ONE
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::Small(v, 1)
    }
    fn from_integer(&self, v: &Integer) -> Rational {
        Rational::from_integer(v)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.sub(b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.inv()
    }
}

impl CoeffRing for Integers {
    type Elem = Integer;

    fn tag(&self) -> Ring {
        Ring::Z
    }
    fn zero(&self) -> Integer {
        Integer::ZERO
    }
    fn one(&self) -> Integer {
        Integer::ONE
    }
    fn from_i64(&self, v: i64) -> Integer {
        Integer::Small(v)
    }
    fn from_integer(&self, v: &Integer) -> Integer {
        v.clone()
    }
    fn is_zero(&self, a: &Integer) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Integer, b: &Integer) -> Integer {
        a.add(b)
    }
    fn neg(&self, a: &Integer) -> Integer {
        a.neg()
    }
    fn sub(&self, a: &Integer, b: &Integer) -> Integer {
        a.sub(b)
    }
    fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        a.mul(b)
    }
    fn inv(&self, a: &Integer) -> Option<Integer> {
        a.is_unit().then(|| a.clone())
    }
    fn is_unit(&self, a: &Integer) -> bool {
        a.is_unit()
    }
    fn as_integer(&self, a: &Integer) -> Option<Integer> {
        Some(a.clone())
    }
}

/// Run `$body` with `$r` bound to the concrete ring named by a [`Ring`] tag.
#[macro_export]
macro_rules! with_ring {
    ($tag:expr, $r:ident => $body:expr) => {
        match $tag {
            $crate::algebra::Ring::F2 => {
                let $r = $crate::algebra::F2;
                $body
            }
            $crate::algebra::Ring::Fp(p) => {
                let $r = $crate::algebra::Fp::new(p).expect("validated prime");
                $body
            }
            $crate::algebra::Ring::Q => {
                let $r = $crate::algebra::Rationals;
                $body
            }
            $crate::algebra::Ring::Z => {
                let $r = $crate::algebra::Integers;
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_tags() {
        assert_eq!(Ring::parse("f2").unwrap(), Ring::F2);
        assert_eq!(Ring::parse("FP:7").unwrap(), Ring::Fp(7));
        assert_eq!(Ring::parse("fp:2").unwrap(), Ring::F2);
        assert!(Ring::parse("fp:9").is_err());
        assert!(Ring::parse("r").is_err());
        assert_eq!(Ring::parse("z").unwrap().to_string(), "z");
    }

    #[test]
    fn fp_inverse() {
        let r = Fp::new(7).unwrap();
        for a in 1..7u32 {
            let i = r.inv(&a).unwrap();
            assert_eq!(r.mul(&a, &i), 1);
        }
        assert_eq!(r.from_i64(-1), 6);
    }

    #[test]
    fn integer_units() {
        let z = Integers;
        assert!(z.is_unit(&Integer::from(-1)));
        assert!(!z.is_unit(&Integer::from(2)));
        assert_eq!(F2.from_integer(&Integer::from(-3)), 1);
    }
}
