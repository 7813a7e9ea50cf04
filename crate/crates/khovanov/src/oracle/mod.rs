//! Independent checks: the Jones polynomial by a state sum, graded Euler
//! characteristics, exact-sequence identities, width and the
//! Thurston-Bennequin bound.

mod jones;

use crate::algebra::{LaurentPoly, Ring};
use crate::cube::Theory;
use crate::diagram::Diagram;
use crate::error::KhError;
use crate::homology::{khovanov, BigradedGroup};
pub use jones::{bracket, jones_skein};

/// `sum (-1)^i q^j rank`, torsion ignored.
pub fn graded_euler(g: &BigradedGroup) -> LaurentPoly {
    g.poincare().at_t_minus_one()
}

/// The two exact-sequence identities relating a diagram to its smoothings
/// at crossing `c`, checked on F2 Euler characteristics. With `P` the Euler
/// characteristic and `w = n_-(smoothing) - n_-(D)` for the smoothing that
/// is not the oriented one:
///
/// * negative crossing: `q^{-1} P(1-smoothing) - P(D) + (-1)^w q^{1+3w} P(0-smoothing) = 0`;
/// * positive crossing: `P(D) = q P(0-smoothing) + (-1)^{w-1} q^{2+3w} P(1-smoothing)`.
pub fn les_dimension_check(d: &Diagram, c: usize) -> Result<bool, KhError> {
    let euler = |x: &Diagram| khovanov(x, Theory::Ordinary, Ring::F2, false).map(|g| graded_euler(&g));
    let pd = euler(d)?;
    let positive = d.crossings()[c].sign > 0;
    let (oriented, other) = if positive { (d.smoothing(c, 0), d.smoothing(c, 1)) } else { (d.smoothing(c, 1), d.smoothing(c, 0)) };
    let (po, pu) = (euler(&oriented)?, euler(&other)?);
    let w = other.n_minus() as i32 - d.n_minus() as i32;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let lhs = if positive {
        po.shift(1, 0).add(&pu.shift(2 + 3 * w, 0).scale(-sign)).sub(&pd)
    } else {
        po.shift(-1, 0).sub(&pd).add(&pu.shift(1 + 3 * w, 0).scale(sign))
    };
    Ok(lhs.is_zero())
}

/// Width counts the diagonals `j - 2i` met by the support; the bound is the
/// least `j - i` met.
pub fn width_and_tb(g: &BigradedGroup) -> Result<(usize, i32), KhError> {
    let s = g.support();
    if s.is_empty() {
        return Err(KhError::EmptyHomology);
    }
    let w = s.iter().map(|&(i, j)| j - 2 * i);
    let (lo, hi) = (w.clone().min().unwrap(), w.max().unwrap());
    let tb = s.iter().map(|&(i, j)| j - i).min().unwrap();
    Ok(((hi - lo) as usize / 2 + 1, tb))
}

/// Over a field, homology of the mirror is the original reflected through
/// the origin.
pub fn mirror_check(d: &Diagram, ring: Ring) -> Result<bool, KhError> {
    if !ring.is_field() {
        return Err(KhError::BadRing("mirror check compares free parts over a field".into()));
    }
    let g = khovanov(d, Theory::Ordinary, ring, false)?;
    let m = khovanov(&d.mirror(), Theory::Ordinary, ring, false)?;
    Ok(m == g.mirror_free())
}

/// Over F2 the unreduced Poincare polynomial is `(q + q^{-1})` times the
/// reduced one. Uses the diagram's basepoint, or edge 1.
pub fn reduced_factor_check(d: &Diagram) -> Result<bool, KhError> {
    let based = if d.basepoint().is_some() { d.clone() } else { d.clone().with_basepoint(Some(1))? };
    let unreduced = khovanov(&based, Theory::Ordinary, Ring::F2, false)?.poincare();
    let reduced = khovanov(&based, Theory::Ordinary, Ring::F2, true)?.poincare();
    Ok(unreduced == reduced.mul(&LaurentPoly::unknot()))
}

/// Every nonzero group sits in quantum degree congruent to the number of
/// components mod 2.
pub fn parity_holds(g: &BigradedGroup, components: usize) -> bool {
    g.support().iter().all(|&(_, j)| (j - components as i32).rem_euclid(2) == 0)
}
