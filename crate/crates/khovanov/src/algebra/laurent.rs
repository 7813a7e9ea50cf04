//! Two-variable Laurent polynomials with integer coefficients.
//!
//! The first exponent belongs to `q` (quantum degree), the second to `t`
//! (homological degree). One-variable polynomials simply keep `t`-exponent 0.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(i32, i32), i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0, 0)
    }

    /// `c * q^qe * t^te`.
    pub fn monomial(c: i64, qe: i32, te: i32) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(c, qe, te);
        p
    }

    /// `q + q^{-1}`, the unknot value.
    pub fn unknot() -> Self {
        LaurentPoly::from_q_terms(&[(1, 1), (-1, 1)])
    }

    /// Build from `(q exponent, coefficient)` pairs.
    pub fn from_q_terms(terms: &[(i32, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_term(c, e, 0);
        }
        p
    }

    pub fn add_term(&mut self, c: i64, qe: i32, te: i32) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((qe, te)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(qe, te));
        }
    }

    pub fn coeff(&self, qe: i32, te: i32) -> i64 {
        self.terms.get(&(qe, te)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `((q exponent, t exponent), coefficient)`, sorted.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for ((qe, te), c) in o.terms() {
            r.add_term(c, qe, te);
        }
        r
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, s: i64) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for ((qe, te), c) in self.terms() {
            r.add_term(c * s, qe, te);
        }
        r
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for ((a, b), c) in self.terms() {
            for ((x, y), d) in o.terms() {
                r.add_term(c * d, a + x, b + y);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| acc.mul(self))
    }

    /// Multiply by `q^qe t^te`.
    pub fn shift(&self, qe: i32, te: i32) -> LaurentPoly {
        let terms = self.terms.iter().map(|((a, b), c)| ((a + qe, b + te), *c)).collect();
        LaurentPoly { terms }
    }

    /// Substitute `q -> q^{-1}` (and `t -> t^{-1}`).
    pub fn invert(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|((a, b), c)| ((-a, -b), *c)).collect();
        LaurentPoly { terms }
    }

    /// Set `t = -1`, leaving a polynomial in `q` alone.
    pub fn at_t_minus_one(&self) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for ((a, b), c) in self.terms() {
            r.add_term(if b.rem_euclid(2) == 0 { c } else { -c }, a, 0);
        }
        r
    }

    /// Exact division by a polynomial in `q` alone whose top coefficient is
    /// ±1; `None` if a remainder is left. Each `t`-slice is divided
    /// separately.
    pub fn div_exact_q(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.terms.keys().any(|k| k.1 != 0) {
            return None;
        }
        let (&(dlead, _), &dc) = d.terms.iter().next_back()?;
        let dlow = d.terms.keys().next()?.0;
        if dc.abs() != 1 {
            return None;
        }
        let mut quot = LaurentPoly::zero();
        let slices: std::collections::BTreeSet<i32> = self.terms.keys().map(|k| k.1).collect();
        for te in slices {
            let mut slice: BTreeMap<i32, i64> = self.terms.iter().filter(|(k, _)| k.1 == te).map(|(k, c)| (k.0, *c)).collect();
            while let Some((&qe, &c)) = slice.iter().next_back() {
                let shift = qe - dlead;
                if shift + dlow < *slice.keys().next().unwrap() {
                    return None;
                }
                let f = c * dc;
                for (&(e, _), &k) in &d.terms {
                    let slot = slice.entry(e + shift).or_insert(0);
                    *slot -= f * k;
                    if *slot == 0 {
                        slice.remove(&(e + shift));
                    }
                }
                quot.add_term(f, shift, te);
            }
        }
        Some(quot)
    }

    /// The substitution `q = -t^{1/2}`. Exponents of `t^{1/2}` are stored in
    /// the first slot, so the result is a polynomial in `s = t^{1/2}`; the
    /// homological slot is carried through untouched.
    pub fn laurent_eval_skein(&self) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for ((a, b), c) in self.terms() {
            r.add_term(if a.rem_euclid(2) == 0 { c } else { -c }, a, b);
        }
        r
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((qe, te), c) in self.terms() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mut parts = Vec::new();
            if a != 1 || (qe == 0 && te == 0) {
                parts.push(a.to_string());
            }
            match te {
                0 => {}
                1 => parts.push("t".into()),
                _ => parts.push(format!("t^{te}")),
            }
            match qe {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(format!("q^{qe}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skein_substitution() {
        // q + q^{-1} -> -(s + s^{-1}) with s = t^{1/2}
        let u = LaurentPoly::unknot().laurent_eval_skein();
        assert_eq!(u, LaurentPoly::from_q_terms(&[(1, -1), (-1, -1)]));
        assert_eq!(LaurentPoly::one().laurent_eval_skein(), LaurentPoly::one());
        // q^2 -> t, i.e. s^2
        assert_eq!(LaurentPoly::from_q_terms(&[(2, 1)]).laurent_eval_skein(), LaurentPoly::from_q_terms(&[(2, 1)]));
    }

    #[test]
    fn division_by_unknot_factor() {
        let u = LaurentPoly::unknot();
        let p = LaurentPoly::from_q_terms(&[(2, 1), (6, 1), (8, 1)]).shift(0, 1);
        let prod = u.mul(&p);
        assert_eq!(prod.div_exact_q(&u), Some(p));
        assert_eq!(LaurentPoly::from_q_terms(&[(1, 1)]).div_exact_q(&u), None);
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_q_terms(&[(1, 1), (3, 1), (5, 1), (9, -1)]);
        assert_eq!(p.to_string(), "q + q^3 + q^5 - q^9");
        assert_eq!(LaurentPoly::monomial(2, -1, 3).to_string(), "2*t^3*q^-1");
    }
}
