//! Homology of chain complexes and the end-to-end Khovanov pipeline.

mod eliminate;
mod scan;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{rank_over_field, smith_normal_form, CoeffRing, Integer, LaurentPoly, Ring, F2};
use crate::cube::{assemble, ChainComplex, Theory, MAX_CUBE_CROSSINGS};
use crate::diagram::Diagram;
use crate::error::KhError;
use crate::with_ring;
pub use eliminate::{gauss_eliminate, ReductionTrace};
pub use scan::{scan_complex, scan_order};

/// Torsion summands at one bidegree: `(prime, exponent) -> multiplicity`.
pub type Torsion = BTreeMap<(u64, u32), usize>;

/// Free ranks and primary torsion indexed by `(i, j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedGroup {
    pub free: BTreeMap<(i32, i32), usize>,
    pub torsion: BTreeMap<(i32, i32), Torsion>,
}

impl BigradedGroup {
    pub fn rank(&self, i: i32, j: i32) -> usize {
        self.free.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add_free(&mut self, i: i32, j: i32, r: usize) {
        if r > 0 {
            *self.free.entry((i, j)).or_insert(0) += r;
        }
    }

    /// Record a cyclic summand of order `order > 1`, split into prime powers.
    pub fn add_cyclic(&mut self, i: i32, j: i32, order: &Integer) {
        for (p, e) in order.factor() {
            *self.torsion.entry((i, j)).or_default().entry((p, e)).or_insert(0) += 1;
        }
    }

    pub fn add_torsion(&mut self, i: i32, j: i32, p: u64, e: u32, mult: usize) {
        if mult > 0 {
            *self.torsion.entry((i, j)).or_default().entry((p, e)).or_insert(0) += mult;
        }
    }

    pub fn total_rank(&self) -> usize {
        self.free.values().sum()
    }

    /// Number of summands `Z/p^e` (any `e >= 1`) at `(i, j)`.
    pub fn torsion_count(&self, i: i32, j: i32, p: u64) -> usize {
        self.torsion.get(&(i, j)).map_or(0, |t| t.iter().filter(|((q, _), _)| *q == p).map(|(_, m)| *m).sum())
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    /// Bidegrees carrying anything, free or torsion.
    pub fn support(&self) -> Vec<(i32, i32)> {
        let mut s: Vec<(i32, i32)> = self.free.keys().chain(self.torsion.keys()).copied().collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// `sum t^i q^j rank`.
    pub fn poincare(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), &r) in &self.free {
            p.add_term(r as i64, j, i);
        }
        p
    }

    /// `(i, j) -> (-i, -j)`, free part only.
    pub fn mirror_free(&self) -> BigradedGroup {
        BigradedGroup { free: self.free.iter().map(|(&(i, j), &r)| ((-i, -j), r)).collect(), torsion: BTreeMap::new() }
    }

    pub fn merge(&mut self, other: &BigradedGroup) {
        for (&(i, j), &r) in &other.free {
            self.add_free(i, j, r);
        }
        for (&(i, j), t) in &other.torsion {
            for (&(p, e), &m) in t {
                self.add_torsion(i, j, p, e, m);
            }
        }
    }
}

/// Homology of a complex. Over a field the ranks come from matrix ranks;
/// over Z the invariant factors of each differential give the torsion of
/// the next group. The complex is split into quantum blocks first, so it
/// must be graded; filtered complexes are handled by the lee module.
pub fn homology<R: CoeffRing>(c: &ChainComplex<R>) -> Result<BigradedGroup, KhError> {
    if c.filtered {
        return Err(KhError::Unsupported("bigraded homology of a filtered complex".into()));
    }
    let blocks: Vec<(i32, ChainComplex<R>)> = c.split_by_quantum(None).into_iter().collect();
    let parts: Result<Vec<BigradedGroup>, KhError> = blocks.par_iter().map(|(j, b)| block_homology(b, *j)).collect();
    let mut out = BigradedGroup::default();
    for p in parts? {
        out.merge(&p);
    }
    Ok(out)
}

/// Homology of a complex concentrated in quantum degree `j`.
fn block_homology<R: CoeffRing>(c: &ChainComplex<R>, j: i32) -> Result<BigradedGroup, KhError> {
    let mut g = BigradedGroup::default();
    let Some((lo, hi)) = c.degree_range() else { return Ok(g) };
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    let mut invariants: BTreeMap<i32, Vec<Integer>> = BTreeMap::new();
    for (i, d) in &c.diffs {
        if c.ring.tag() == Ring::Z {
            let dz = d.map(&crate::algebra::Integers, |v| c.ring.as_integer(v).expect("integer entries"));
            let snf = smith_normal_form(&dz);
            ranks.insert(*i, snf.rank);
            invariants.insert(*i + 1, snf.torsion().cloned().collect());
        } else {
            ranks.insert(*i, rank_over_field(&c.ring, d)?);
        }
    }
    for i in lo..=hi {
        let dim = c.rank(i);
        let free = dim - ranks.get(&i).copied().unwrap_or(0) - ranks.get(&(i - 1)).copied().unwrap_or(0);
        g.add_free(i, j, free);
        for order in invariants.get(&i).into_iter().flatten() {
            g.add_cyclic(i, j, order);
        }
    }
    Ok(g)
}

/// Assemble, reduce and take homology, each quantum block in parallel.
/// Unreduced ordinary homology of diagrams too large for the cube goes
/// through the scanning engine instead.
pub fn khovanov_with<R: CoeffRing>(d: &Diagram, theory: Theory, ring: &R, reduced: bool) -> Result<BigradedGroup, KhError> {
    if theory.is_filtered() {
        return Err(KhError::Unsupported(format!("{theory} is filtered; use the lee module")));
    }
    if theory == Theory::Ordinary && !reduced && d.crossing_count() > MAX_CUBE_CROSSINGS {
        return reduce_and_homology(&scan_complex(d, ring)?);
    }
    let c = assemble(d, theory, ring, reduced)?;
    reduce_and_homology(&c)
}

pub fn reduce_and_homology<R: CoeffRing>(c: &ChainComplex<R>) -> Result<BigradedGroup, KhError> {
    let blocks: Vec<(i32, ChainComplex<R>)> = c.split_by_quantum(None).into_iter().collect();
    let parts: Result<Vec<BigradedGroup>, KhError> = blocks
        .par_iter()
        .map(|(j, b)| {
            let (small, _) = gauss_eliminate(b);
            block_homology(&small, *j)
        })
        .collect();
    let mut out = BigradedGroup::default();
    for p in parts? {
        out.merge(&p);
    }
    Ok(out)
}

/// Unreduced homology through the scanning engine, whatever the size.
pub fn scan_khovanov(d: &Diagram, ring: Ring) -> Result<BigradedGroup, KhError> {
    with_ring!(ring, r => reduce_and_homology(&scan_complex(d, &r)?))
}

/// [`khovanov_with`] for a ring given by its tag.
pub fn khovanov(d: &Diagram, theory: Theory, ring: Ring, reduced: bool) -> Result<BigradedGroup, KhError> {
    with_ring!(ring, r => khovanov_with(d, theory, &r, reduced))
}

/// Over F2, each group has dimension equal to the integral rank plus the
/// number of 2-primary summands here and one degree up.
pub fn universal_coefficient_check(d: &Diagram) -> Result<bool, KhError> {
    let z = khovanov_with(d, Theory::Ordinary, &crate::algebra::Integers, false)?;
    let f2 = khovanov_with(d, Theory::Ordinary, &F2, false)?;
    Ok(universal_coefficient_holds(&z, &f2))
}

pub fn universal_coefficient_holds(z: &BigradedGroup, f2: &BigradedGroup) -> bool {
    let mut keys: Vec<(i32, i32)> = z.support();
    keys.extend(f2.support());
    keys.extend(z.support().into_iter().map(|(i, j)| (i - 1, j)));
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .all(|(i, j)| f2.rank(i, j) == z.rank(i, j) + z.torsion_count(i, j, 2) + z.torsion_count(i + 1, j, 2))
}
