//! Filtered homology of the Lee and Bar-Natan deformations, and the
//! s-invariant read off the quantum filtration.


use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{rank_over_field, CoeffRing, Ring};
use crate::cube::{assemble, ChainComplex, Theory};
use crate::diagram::Diagram;
use crate::error::KhError;
use crate::homology::{gauss_eliminate, BigradedGroup};
use crate::with_ring;

/// Which deformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `h = 0, t = 1`.
    Lee,
    /// `h = 1, t = 0`.
    BarNatan,
}

impl Variant {
    pub fn theory(self) -> Theory {
        match self {
            Variant::Lee => Theory::LEE,
            Variant::BarNatan => Theory::BAR_NATAN,
        }
    }

    /// Differentials preserve j modulo this.
    fn block_modulus(self) -> i32 {
        match self {
            Variant::Lee => 4,
            Variant::BarNatan => 2,
        }
    }
}

/// For each homological degree `i`, the step function
/// `j -> dim image(H(F^j C)^i -> H(C)^i)` with `F^j` spanned by generators
/// of quantum degree at least `j`. Stored at every integer `j` from the
/// lowest generator degree to one past the highest; below that range the
/// value is `dims[i]`, above it 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiltrationProfile {
    pub values: BTreeMap<i32, BTreeMap<i32, usize>>,
}

impl FiltrationProfile {
    pub fn at(&self, i: i32, j: i32) -> usize {
        let Some(row) = self.values.get(&i) else { return 0 };
        match row.range(..=j).next_back() {
            Some((_, &v)) => v,
            None => row.values().next().copied().unwrap_or(0),
        }
    }

    /// Degrees `j` with `profile(j) > profile(j + 1)`, repeated by the size
    /// of the drop.
    pub fn jumps(&self, i: i32) -> Vec<i32> {
        let Some(row) = self.values.get(&i) else { return Vec::new() };
        let mut out = Vec::new();
        for (&j, &v) in row {
            let next = self.at(i, j + 1);
            for _ in next..v {
                out.push(j);
            }
        }
        out
    }

    /// The associated graded: `dim F^j H^i / F^{j+1} H^i` at `(i, j)`.
    pub fn associated_graded(&self) -> BigradedGroup {
        let mut g = BigradedGroup::default();
        for &i in self.values.keys() {
            for j in self.jumps(i) {
                g.add_free(i, j, 1);
            }
        }
        g
    }

    fn add(&mut self, other: &FiltrationProfile) {
        let mut keys: Vec<(i32, i32)> = Vec::new();
        for (i, row) in self.values.iter().chain(other.values.iter()) {
            keys.extend(row.keys().map(|j| (*i, *j)));
        }
        let mut merged: BTreeMap<i32, BTreeMap<i32, usize>> = BTreeMap::new();
        for (i, j) in keys {
            merged.entry(i).or_default().insert(j, self.at(i, j) + other.at(i, j));
        }
        self.values = merged;
    }
}

/// Homology dimensions per homological degree, with the filtration profile.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeeHomology {
    pub dims: BTreeMap<i32, usize>,
    pub profile: FiltrationProfile,
}

impl LeeHomology {
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

fn check_ring(variant: Variant, ring: Ring) -> Result<(), KhError> {
    match (variant, ring) {
        (_, Ring::Z) => Err(KhError::BadRing(format!("{} homology needs a field", variant.theory()))),
        (Variant::Lee, Ring::F2) => Err(KhError::BadRing("Lee homology needs 2 to be invertible".into())),
        _ => Ok(()),
    }
}

pub fn lee_homology(d: &Diagram, variant: Variant, ring: Ring) -> Result<LeeHomology, KhError> {
    check_ring(variant, ring)?;
    with_ring!(ring, r => lee_homology_with(d, variant, &r))
}

pub fn lee_homology_with<R: CoeffRing>(d: &Diagram, variant: Variant, ring: &R) -> Result<LeeHomology, KhError> {
    let c = assemble(d, variant.theory(), ring, false)?;
    let blocks: Vec<ChainComplex<R>> = c.split_by_quantum(Some(variant.block_modulus())).into_values().collect();
    let parts: Result<Vec<LeeHomology>, KhError> = blocks
        .par_iter()
        .map(|b| {
            let (small, _) = gauss_eliminate(b);
            filtered_homology(&small)
        })
        .collect();
    let mut out = LeeHomology::default();
    for p in parts? {
        for (i, v) in p.dims {
            *out.dims.entry(i).or_insert(0) += v;
        }
        out.profile.add(&p.profile);
    }
    out.dims.retain(|_, v| *v > 0);
    Ok(out)
}

/// Dimensions and profile of a filtered complex over a field, from
/// `profile_i(j) = |F^j C^i| - rank(d^i on F^j) - rank d^{i-1}
/// + rank(d^{i-1} followed by projection to degrees below j)`.
pub fn filtered_homology<R: CoeffRing>(c: &ChainComplex<R>) -> Result<LeeHomology, KhError> {
    let mut out = LeeHomology::default();
    let Some((lo, hi)) = c.degree_range() else { return Ok(out) };
    for i in lo..=hi {
        let gens = c.groups.get(&i).cloned().unwrap_or_default();
        if gens.is_empty() {
            continue;
        }
        let (di, dprev) = (c.diff(i), c.diff(i - 1));
        let all_rows_next: Vec<usize> = (0..c.rank(i + 1)).collect();
        let all_prev: Vec<usize> = (0..c.rank(i - 1)).collect();
        let rank_prev = rank_over_field(&c.ring, &dprev)?;
        let jmin = *gens.iter().min().unwrap();
        let jmax = *gens.iter().max().unwrap();
        let row = (jmin..=jmax + 1)
            .into_par_iter()
            .map(|j| {
                let cols: Vec<usize> = (0..gens.len()).filter(|&g| gens[g] >= j).collect();
                let below: Vec<usize> = (0..gens.len()).filter(|&g| gens[g] < j).collect();
                let r1 = rank_over_field(&c.ring, &di.submatrix(&all_rows_next, &cols))?;
                let r2 = rank_over_field(&c.ring, &dprev.submatrix(&below, &all_prev))?;
                Ok((j, cols.len() + r2 - r1 - rank_prev))
            })
            .collect::<Result<BTreeMap<_, _>, KhError>>()?;
        out.dims.insert(i, row[&jmin]);
        out.profile.values.insert(i, row);
    }
    out.dims.retain(|_, v| *v > 0);
    Ok(out)
}

/// `s` from the two jumps of the degree-0 profile, which must sit two
/// apart: `s = j_min + 1`.
pub fn s_from_profile(p: &FiltrationProfile) -> Result<i32, KhError> {
    let jumps = p.jumps(0);
    match jumps.as_slice() {
        [a, b] if *b == a + 2 => Ok(a + 1),
        _ => Err(KhError::UnexpectedProfile(format!("degree-0 jumps at {jumps:?}"))),
    }
}

pub fn s_invariant(d: &Diagram, variant: Variant, ring: Ring) -> Result<i32, KhError> {
    if d.component_count() != 1 {
        return Err(KhError::NotAKnot(d.component_count()));
    }
    let h = lee_homology(d, variant, ring)?;
    s_from_profile(&h.profile)
}

/// Lower bound `|s| / 2` for the smooth slice genus.
pub fn slice_bound(s: i32) -> u32 {
    s.unsigned_abs() / 2
}
