//! Sign assignments on the edges of the cube.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::maps::{edge_geometry, odd_image, EdgeGeometry};
use crate::diagram::{resolve, Diagram, ResolveMode, Resolution};
use crate::error::KhError;

/// A map from cube edges `(A, c)` with `c` not in `A` to Z/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignAssignment {
    /// `eps(A, c) = #{c' in A : c' < c} mod 2`.
    Standard,
    /// Explicit table indexed by `A * n + c`.
    Table { n: usize, eps: Vec<u8> },
}

impl SignAssignment {
    pub fn eps(&self, a: u64, c: usize) -> u8 {
        match self {
            SignAssignment::Standard => ((a & ((1u64 << c) - 1)).count_ones() & 1) as u8,
            SignAssignment::Table { n, eps } => eps[a as usize * n + c],
        }
    }

    /// Sum of the four edge signs of the face at `a` spanned by `c1`, `c2`.
    pub fn face_sum(&self, a: u64, c1: usize, c2: usize) -> u8 {
        (self.eps(a, c1) + self.eps(a | 1 << c1, c2) + self.eps(a, c2) + self.eps(a | 1 << c2, c1)) & 1
    }
}

pub fn standard_signage() -> SignAssignment {
    SignAssignment::Standard
}

/// How the two composites around a face of the odd cube compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    Commute,
    AntiCommute,
    /// Both composites vanish: one circle split by one arrow and merged
    /// back by the other. The flag is the geometric type of the pair.
    Ladybug(bool),
}

/// A face is `(A, c1, c2)` with `c1 < c2`, neither in `A`.
pub type Face = (u64, u8, u8);

pub fn faces(n: usize) -> impl Iterator<Item = Face> {
    (0u64..1 << n).flat_map(move |a| {
        (0..n).filter(move |&c1| a >> c1 & 1 == 0).flat_map(move |c1| {
            (c1 + 1..n).filter(move |&c2| a >> c2 & 1 == 0).map(move |c2| (a, c1 as u8, c2 as u8))
        })
    })
}

fn compose(g1: &EdgeGeometry, g2: &EdgeGeometry, w: u32) -> Vec<(u32, i64)> {
    let (mut first, mut second) = (Vec::new(), Vec::new());
    odd_image(g1, w, &mut first);
    let mut acc: FxHashMap<u32, i64> = FxHashMap::default();
    for &(m, k) in &first {
        odd_image(g2, m, &mut second);
        for &(m2, k2) in &second {
            *acc.entry(m2).or_insert(0) += k * k2;
        }
    }
    let mut v: Vec<(u32, i64)> = acc.into_iter().filter(|e| e.1 != 0).collect();
    v.sort_unstable();
    v
}

/// Compare the composites of the odd edge maps around every face.
pub fn classify_faces(d: &Diagram, res: &[Resolution]) -> Result<FxHashMap<Face, FaceKind>, KhError> {
    let n = d.crossing_count();
    let all: Vec<Face> = faces(n).collect();
    let kinds: Result<Vec<(Face, FaceKind)>, KhError> = all
        .par_iter()
        .map(|&(a, c1, c2)| {
            let (c1u, c2u) = (c1 as usize, c2 as usize);
            let (a1, a2, a12) = (a | 1 << c1, a | 1 << c2, a | 1 << c1 | 1 << c2);
            let g = |x: u64, y: u64, c: usize| edge_geometry(d, &res[x as usize], &res[y as usize], c);
            let (p1a, p1b) = (g(a, a1, c1u), g(a1, a12, c2u));
            let (p2a, p2b) = (g(a, a2, c2u), g(a2, a12, c1u));
            let (mut same, mut opposite, mut zero) = (true, true, true);
            for w in 0..1u32 << res[a as usize].circle_count {
                let (x, y) = (compose(&p1a, &p1b, w), compose(&p2a, &p2b, w));
                if !x.is_empty() || !y.is_empty() {
                    zero = false;
                }
                if x != y {
                    same = false;
                }
                if x.len() != y.len() || x.iter().zip(&y).any(|(u, v)| u.0 != v.0 || u.1 != -v.1) {
                    opposite = false;
                }
            }
            let kind = if zero {
                FaceKind::Ladybug(ladybug_type(d, a, c1u, c2u).ok_or(KhError::NoSignageFound)?)
            } else if same {
                FaceKind::Commute
            } else if opposite {
                FaceKind::AntiCommute
            } else {
                return Err(KhError::NoSignageFound);
            };
            Ok(((a, c1, c2), kind))
        })
        .collect();
    Ok(kinds?.into_iter().collect())
}

/// Geometric type of a face whose two arrows are chords of one circle of
/// the resolution at `a`. The circle is walked so that it crosses the tail
/// arc of `c1` from edge a to edge b, which keeps the arrow of `c1` on the
/// left; the type records whether the tail arc of `c2` then comes before
/// its head arc. Swapping the roles of `c1` and `c2` gives the same answer.
pub fn ladybug_type(d: &Diagram, a: u64, c1: usize, c2: usize) -> Option<bool> {
    let cr = d.crossings();
    let mut ends: Vec<Vec<(usize, u8)>> = vec![Vec::new(); d.edge_count() as usize + 1];
    for (k, c) in cr.iter().enumerate() {
        for p in 0..4 {
            ends[c.edges[p] as usize].push((k, p as u8));
        }
    }
    let partner = |k: usize, p: u8| -> u8 {
        if a >> k & 1 == 0 {
            p ^ 1
        } else {
            3 - p
        }
    };
    // (crossing, arc) with arc 0 the one through position 0.
    let arc_of = |k: usize, p: u8| -> u8 {
        let q = partner(k, p);
        u8::from(p != 0 && q != 0)
    };
    let mut seq: Vec<(usize, u8)> = vec![(c1, 0)];
    let (mut k, mut out) = (c1, 1u8);
    loop {
        let e = cr[k].edges[out as usize] as usize;
        let here = (k, out);
        let next = if ends[e][0] == here { ends[e][1] } else { ends[e][0] };
        if next == (c1, 0) {
            break;
        }
        seq.push((next.0, arc_of(next.0, next.1)));
        k = next.0;
        out = partner(next.0, next.1);
        if seq.len() > 4 * cr.len() {
            return None;
        }
    }
    let pos = |x: (usize, u8)| seq.iter().position(|&y| y == x);
    pos((c1, 1))?;
    Some(pos((c2, 0))? < pos((c2, 1))?)
}

/// Build an assignment meeting `target(face)` on every face: recursively,
/// `eps(A, c) = target(A - m; m, c) + eps(A - m, c)` for `m = min A < c`,
/// with `eps(A, c) = 0` when every element of `A` exceeds `c`; then check
/// all faces.
pub fn solve_with_targets(n: usize, target: impl Fn(Face) -> u8) -> Result<SignAssignment, KhError> {
    let mut eps = vec![0u8; (1usize << n) * n.max(1)];
    for a in 1u64..1 << n {
        let m = a.trailing_zeros() as usize;
        let b = a & (a - 1);
        for c in m + 1..n {
            if a >> c & 1 == 1 {
                continue;
            }
            eps[a as usize * n + c] = (target((b, m as u8, c as u8)) + eps[b as usize * n + c]) & 1;
        }
    }
    let s = SignAssignment::Table { n, eps };
    for (a, c1, c2) in faces(n) {
        if s.face_sum(a, c1 as usize, c2 as usize) != target((a, c1, c2)) & 1 {
            return Err(KhError::NoSignageFound);
        }
    }
    Ok(s)
}

/// Result of solving for odd signs.
#[derive(Clone, Debug)]
pub struct OddSignage {
    pub signs: SignAssignment,
    /// The target parity used on faces whose geometric type flag is set;
    /// the other ladybug faces get the opposite parity.
    pub ladybug_parity: u8,
}

pub fn odd_resolutions(d: &Diagram) -> Vec<Resolution> {
    (0u64..1 << d.crossing_count()).into_par_iter().map(|a| resolve(d, a, ResolveMode::Odd)).collect()
}

/// Signs making every face of the odd cube anticommute: commuting faces
/// need an odd edge-sign sum, anticommuting ones an even sum, and ladybug
/// faces follow their geometric type, with one global choice of parity.
pub fn odd_sign_solve(d: &Diagram) -> Result<OddSignage, KhError> {
    let res = odd_resolutions(d);
    let kinds = classify_faces(d, &res)?;
    odd_sign_solve_from(d.crossing_count(), &kinds, None)
}

/// As [`odd_sign_solve`] from classified faces, optionally forcing the
/// ladybug parity.
pub fn odd_sign_solve_from(n: usize, kinds: &FxHashMap<Face, FaceKind>, parity: Option<u8>) -> Result<OddSignage, KhError> {
    let choices = match parity {
        Some(p) => vec![p],
        None => vec![1, 0],
    };
    for g in choices {
        let target = |f: Face| match kinds[&f] {
            FaceKind::Commute => 1,
            FaceKind::AntiCommute => 0,
            FaceKind::Ladybug(t) => u8::from(t) ^ g,
        };
        if let Ok(signs) = solve_with_targets(n, target) {
            return Ok(OddSignage { signs, ladybug_parity: g });
        }
    }
    Err(KhError::NoSignageFound)
}
