//! Edge maps of the cube on monomial bases.
//!
//! A generator at a vertex is a bitmask over that resolution's circles: the
//! monomial (or, in the odd theory, the wedge in increasing circle order) of
//! the circles whose variable appears.

use crate::algebra::{Integer, Integers, SparseMatrix};
use crate::diagram::{resolve, Diagram, ResolveMode, Resolution};

/// What one surgery does to the circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surgery {
    /// Circles `a1 < a2` of the source merge into `beta`.
    Merge { a1: u16, a2: u16, beta: u16 },
    /// Circle `alpha` splits into `head` (containing edge c of the crossing)
    /// and `tail` (containing edge a).
    Split { alpha: u16, head: u16, tail: u16 },
}

/// Circle correspondence along the edge `A -> A + {c}`. `phi` sends every
/// source circle to a target circle; a split circle goes to its head.
#[derive(Clone, Debug)]
pub struct EdgeGeometry {
    pub phi: Vec<u16>,
    pub surgery: Surgery,
}

pub fn edge_geometry(d: &Diagram, src: &Resolution, dst: &Resolution, c: usize) -> EdgeGeometry {
    let [a, _, cc, _] = d.crossings()[c].edges;
    let mut phi = vec![0u16; src.circle_count];
    for e in 1..src.circle_of_edge.len() {
        phi[src.circle_of_edge[e] as usize] = dst.circle_of_edge[e];
    }
    let (ca, cc_src) = (src.circle_of_edge[a as usize], src.circle_of_edge[cc as usize]);
    let surgery = if ca != cc_src {
        Surgery::Merge { a1: ca.min(cc_src), a2: ca.max(cc_src), beta: dst.circle_of_edge[a as usize] }
    } else {
        let head = dst.circle_of_edge[cc as usize];
        phi[ca as usize] = head;
        Surgery::Split { alpha: ca, head, tail: dst.circle_of_edge[a as usize] }
    };
    EdgeGeometry { phi, surgery }
}

fn push_mask(phi: &[u16], w: u32, skip: u32) -> u32 {
    let mut out = 0u32;
    let mut rest = w & !skip;
    while rest != 0 {
        let g = rest.trailing_zeros();
        out |= 1 << phi[g as usize];
        rest &= rest - 1;
    }
    out
}

/// Image of the monomial `w` under the (h,t) Frobenius edge map, written
/// into `out` as (monomial, coefficient).
pub fn frobenius_image(g: &EdgeGeometry, w: u32, h: i64, t: i64, out: &mut Vec<(u32, i64)>) {
    out.clear();
    match g.surgery {
        Surgery::Merge { a1, a2, beta } => {
            let (x1, x2) = (w >> a1 & 1 == 1, w >> a2 & 1 == 1);
            let rest = push_mask(&g.phi, w, 1 << a1 | 1 << a2);
            let b = 1u32 << beta;
            match (x1, x2) {
                (true, true) => {
                    // x_b^2 = t + h x_b
                    if t != 0 {
                        out.push((rest, t));
                    }
                    if h != 0 {
                        out.push((rest | b, h));
                    }
                }
                (false, false) => out.push((rest, 1)),
                _ => out.push((rest | b, 1)),
            }
        }
        Surgery::Split { alpha, head, tail } => {
            let rest = push_mask(&g.phi, w, 1 << alpha);
            let (bh, bt) = (1u32 << head, 1u32 << tail);
            if w >> alpha & 1 == 1 {
                out.push((rest | bh | bt, 1));
                if t != 0 {
                    out.push((rest, t));
                }
            } else {
                out.push((rest | bh, 1));
                out.push((rest | bt, 1));
                if h != 0 {
                    out.push((rest, -h));
                }
            }
        }
    }
}

/// Sign of sorting the images of the set bits of `w` (in increasing
/// order) under `phi`, together with the resulting mask; `None` when two
/// bits land on the same circle.
fn wedge_push(phi: &[u16], w: u32) -> Option<(u32, bool)> {
    let mut mask = 0u32;
    let mut odd = false;
    let mut rest = w;
    while rest != 0 {
        let g = rest.trailing_zeros();
        let b = phi[g as usize] as u32;
        if mask >> b & 1 == 1 {
            return None;
        }
        // Appending x_b after the current wedge: it moves past every
        // already-present larger index.
        odd ^= (mask >> b).count_ones() & 1 == 1;
        mask |= 1 << b;
        rest &= rest - 1;
    }
    Some((mask, odd))
}

/// Image of the wedge `w` under the odd edge map: merge is the algebra map
/// induced by `phi`; split is `w -> (x_head - x_tail) ^ phi(w)`.
pub fn odd_image(g: &EdgeGeometry, w: u32, out: &mut Vec<(u32, i64)>) {
    out.clear();
    let Some((m, odd)) = wedge_push(&g.phi, w) else { return };
    let s = if odd { -1 } else { 1 };
    match g.surgery {
        Surgery::Merge { .. } => out.push((m, s)),
        Surgery::Split { head, tail, .. } => {
            for (b, sign) in [(head, 1i64), (tail, -1i64)] {
                if m >> b & 1 == 0 {
                    let below = (m & ((1u32 << b) - 1)).count_ones();
                    let k = if below % 2 == 1 { -sign * s } else { sign * s };
                    out.push((m | 1 << b, k));
                }
            }
            out.sort_unstable_by_key(|e| e.0);
        }
    }
}

/// Which family of edge maps to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Frobenius { h: i64, t: i64 },
    Odd,
}

fn edge_matrix(d: &Diagram, a: u64, c: usize, kind: MapKind) -> SparseMatrix<Integer> {
    assert_eq!(a >> c & 1, 0, "crossing already in the subset");
    let mode = if kind == MapKind::Odd { ResolveMode::Odd } else { ResolveMode::Ordinary };
    let (src, dst) = (resolve(d, a, mode), resolve(d, a | 1 << c, mode));
    let g = edge_geometry(d, &src, &dst, c);
    let mut buf = Vec::new();
    let mut trip = Vec::new();
    for w in 0..1u32 << src.circle_count {
        match kind {
            MapKind::Frobenius { h, t } => frobenius_image(&g, w, h, t, &mut buf),
            MapKind::Odd => odd_image(&g, w, &mut buf),
        }
        trip.extend(buf.iter().map(|&(m, k)| (m as usize, w as usize, Integer::from(k))));
    }
    SparseMatrix::from_triplets(&Integers, 1 << dst.circle_count, 1 << src.circle_count, trip)
}

/// Matrix of the unsigned edge map `A -> A + {c}` over Z in the monomial
/// bases, generator `w` being column/row `w`.
pub fn edge_map(d: &Diagram, a: u64, c: usize, h: i64, t: i64) -> SparseMatrix<Integer> {
    edge_matrix(d, a, c, MapKind::Frobenius { h, t })
}

/// Matrix of the unsigned odd edge map in the exterior bases.
pub fn odd_edge_map(d: &Diagram, a: u64, c: usize) -> SparseMatrix<Integer> {
    edge_matrix(d, a, c, MapKind::Odd)
}
