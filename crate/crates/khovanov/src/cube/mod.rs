//! The cube of resolutions and its flattening into a cochain complex.

mod complex;
mod maps;
mod signs;
#[cfg(test)]
mod tests;

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{CoeffRing, SparseMatrix};
use crate::diagram::{resolve, Diagram, ResolveMode, Resolution};
use crate::error::KhError;
pub use complex::ChainComplex;
pub use maps::{edge_geometry, edge_map, frobenius_image, odd_edge_map, odd_image, EdgeGeometry, Surgery};
pub use signs::{
    classify_faces, faces, ladybug_type, odd_resolutions, odd_sign_solve, odd_sign_solve_from, solve_with_targets,
    standard_signage, Face, FaceKind, OddSignage, SignAssignment,
};

/// Largest cube the explicit assembly will build.
pub const MAX_CUBE_CROSSINGS: usize = 22;

/// Which local coefficient system decorates the cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Truncated polynomial algebra, `x^2 = 0`.
    Ordinary,
    /// `x^2 = t + h x`; filtered unless `h = t = 0`.
    Frobenius { h: i64, t: i64 },
    /// Exterior algebras with arrow-dependent signs.
    Odd,
}

impl Theory {
    pub const LEE: Theory = Theory::Frobenius { h: 0, t: 1 };
    pub const BAR_NATAN: Theory = Theory::Frobenius { h: 1, t: 0 };

    /// `kh`, `odd`, `lee` or `barnatan`.
    pub fn parse(s: &str) -> Result<Theory, KhError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kh" | "khovanov" | "ordinary" => Ok(Theory::Ordinary),
            "odd" => Ok(Theory::Odd),
            "lee" => Ok(Theory::LEE),
            "barnatan" | "bar-natan" | "bn" => Ok(Theory::BAR_NATAN),
            other => Err(KhError::Unsupported(format!("unknown theory `{other}`"))),
        }
    }

    /// `(h, t)` of the Frobenius system; the ordinary and odd theories use
    /// `(0, 0)`.
    pub fn params(self) -> (i64, i64) {
        match self {
            Theory::Frobenius { h, t } => (h, t),
            _ => (0, 0),
        }
    }

    pub fn is_filtered(self) -> bool {
        self.params() != (0, 0)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Theory::Ordinary => write!(f, "kh"),
            Theory::Odd => write!(f, "odd"),
            Theory::LEE => write!(f, "lee"),
            Theory::BAR_NATAN => write!(f, "barnatan"),
            Theory::Frobenius { h, t } => write!(f, "frobenius(h={h},t={t})"),
        }
    }
}

/// Generators of one vertex: all circle subsets, or in the reduced theory
/// those containing the basepoint circle. Ordered by mask value.
fn vertex_masks(circles: usize, base: Option<u16>) -> impl Iterator<Item = u32> {
    (0u32..1 << circles).filter(move |m| base.is_none_or(|b| m >> b & 1 == 1))
}

fn local_index(mask: u32, base: Option<u16>) -> u32 {
    match base {
        None => mask,
        Some(b) => ((mask >> (b + 1)) << b) | (mask & ((1u32 << b) - 1)),
    }
}

/// Flatten the cube: homological degree `|A| - n_-`, quantum degree
/// `|A| + circles - 2 m + n_+ - 2 n_-` (plus one in the reduced theory).
pub fn assemble<R: CoeffRing>(d: &Diagram, theory: Theory, ring: &R, reduced: bool) -> Result<ChainComplex<R>, KhError> {
    let n = d.crossing_count();
    if n > MAX_CUBE_CROSSINGS {
        return Err(KhError::TooManyCrossings { n, limit: MAX_CUBE_CROSSINGS });
    }
    if reduced && theory.is_filtered() {
        return Err(KhError::Unsupported("reduced complex of a deformed theory".into()));
    }
    let bp = match (reduced, d.basepoint()) {
        (false, _) => None,
        (true, None) => return Err(KhError::BasepointMissing),
        (true, Some(b)) => Some(b),
    };
    let mode = if theory == Theory::Odd { ResolveMode::Odd } else { ResolveMode::Ordinary };
    let res: Vec<Resolution> = (0u64..1 << n).into_par_iter().map(|a| resolve(d, a, mode)).collect();
    let signs = match theory {
        Theory::Odd => {
            let kinds = classify_faces(d, &res)?;
            odd_sign_solve_from(n, &kinds, None)?.signs
        }
        _ => standard_signage(),
    };
    assemble_from(d, theory, ring, &res, &signs, bp)
}

/// Assembly with resolutions and signs supplied by the caller.
pub fn assemble_from<R: CoeffRing>(
    d: &Diagram,
    theory: Theory,
    ring: &R,
    res: &[Resolution],
    signs: &SignAssignment,
    basepoint: Option<u32>,
) -> Result<ChainComplex<R>, KhError> {
    let n = d.crossing_count();
    let (n_minus, n_plus) = (d.n_minus(), d.n_plus());
    let (h, t) = theory.params();
    let base_of = |a: u64| basepoint.map(|b| res[a as usize].circle_of_edge[b as usize]);
    let shift = n_plus as i32 - 2 * n_minus as i32 + i32::from(basepoint.is_some());

    // Vertices of each degree in mask order, with generator offsets.
    let mut by_degree: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for a in 0u64..1 << n {
        by_degree[a.count_ones() as usize].push(a);
    }
    let mut offset = vec![0u32; 1 << n];
    let mut complex = ChainComplex::new(ring.clone(), n_minus, n_plus, theory.is_filtered());
    for (k, verts) in by_degree.iter().enumerate() {
        let mut js = Vec::new();
        for &a in verts {
            offset[a as usize] = js.len() as u32;
            let r = &res[a as usize];
            for m in vertex_masks(r.circle_count, base_of(a)) {
                js.push(k as i32 + r.circle_count as i32 - 2 * m.count_ones() as i32 + shift);
            }
        }
        complex.groups.insert(k as i32 - n_minus as i32, js);
    }

    let diffs: Vec<(i32, SparseMatrix<R::Elem>)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let rows = complex.rank(k as i32 + 1 - n_minus as i32);
            let mut columns: Vec<Vec<(u32, R::Elem)>> = Vec::with_capacity(complex.rank(k as i32 - n_minus as i32));
            let mut buf = Vec::new();
            let mut acc: Vec<(u32, i64)> = Vec::new();
            for &a in &by_degree[k] {
                let src = &res[a as usize];
                let geoms: Vec<(u64, EdgeGeometry, bool)> = (0..n)
                    .filter(|&c| a >> c & 1 == 0)
                    .map(|c| {
                        let b = a | 1 << c;
                        (b, edge_geometry(d, src, &res[b as usize], c), signs.eps(a, c) == 1)
                    })
                    .collect();
                for m in vertex_masks(src.circle_count, base_of(a)) {
                    acc.clear();
                    for (b, g, neg) in &geoms {
                        match theory {
                            Theory::Odd => odd_image(g, m, &mut buf),
                            _ => frobenius_image(g, m, h, t, &mut buf),
                        }
                        let bb = base_of(*b);
                        for &(w, coeff) in &buf {
                            let row = offset[*b as usize] + local_index(w, bb);
                            acc.push((row, if *neg { -coeff } else { coeff }));
                        }
                    }
                    acc.sort_unstable_by_key(|e| e.0);
                    let mut col: Vec<(u32, R::Elem)> = Vec::with_capacity(acc.len());
                    let mut i = 0;
                    while i < acc.len() {
                        let (r, mut v) = acc[i];
                        i += 1;
                        while i < acc.len() && acc[i].0 == r {
                            v += acc[i].1;
                            i += 1;
                        }
                        let e = ring.from_i64(v);
                        if !ring.is_zero(&e) {
                            col.push((r, e));
                        }
                    }
                    columns.push(col);
                }
            }
            (k as i32 - n_minus as i32, SparseMatrix::from_columns(rows, columns))
        })
        .collect();
    for (i, m) in diffs {
        if !m.is_zero() {
            complex.diffs.insert(i, m);
        }
    }
    assert!(complex.check_d_squared(), "assembled complex has d^2 != 0");
    Ok(complex)
}
