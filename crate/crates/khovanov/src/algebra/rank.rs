//! Exact rank over fields.

use rustc_hash::FxHashMap;

use super::ring::{CoeffRing, Ring};
use super::sparse::SparseMatrix;
use crate::error::KhError;

/// Largest F2 matrix (in bits) handed to the dense bit-packed routine.
const DENSE_F2_LIMIT: u64 = 1 << 28;

/// Rank of `m` over the field `ring`. F2 goes through the bit-packed
/// routine unless the matrix is huge; other fields use sparse elimination
/// that reduces the sparsest columns first.
pub fn rank_over_field<R: CoeffRing>(ring: &R, m: &SparseMatrix<R::Elem>) -> Result<usize, KhError> {
    match ring.tag() {
        Ring::Z => Err(KhError::NotAField),
        Ring::F2 if (m.rows() as u64) * (m.cols() as u64) <= DENSE_F2_LIMIT => {
            let bits = BitMatrix::from_sparse(m.rows(), m.cols(), m.entries().filter(|(_, _, v)| !ring.is_zero(v)).map(|(r, c, _)| (r, c)));
            Ok(bits.rank())
        }
        _ => Ok(sparse_rank(ring, m)),
    }
}

/// Incremental echelon form: every column is reduced against the pivots
/// found so far, keyed by their leading row.
fn sparse_rank<R: CoeffRing>(ring: &R, m: &SparseMatrix<R::Elem>) -> usize {
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by_key(|&c| (m.column(c).len(), c));
    let mut pivots: FxHashMap<u32, Vec<(u32, R::Elem)>> = FxHashMap::default();
    for c in order {
        let mut v: Vec<(u32, R::Elem)> = m.column(c).to_vec();
        while let Some((lead, lv)) = v.first().cloned() {
            match pivots.get(&lead) {
                None => {
                    let inv = ring.inv(&lv).expect("nonzero field element");
                    let normalized = v.iter().map(|(r, x)| (*r, ring.mul(x, &inv))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
                Some(p) => v = axpy(ring, &v, &lv, p),
            }
        }
    }
    pivots.len()
}

/// `v - s * p` for sorted sparse vectors.
pub(crate) fn axpy<R: CoeffRing>(ring: &R, v: &[(u32, R::Elem)], s: &R::Elem, p: &[(u32, R::Elem)]) -> Vec<(u32, R::Elem)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, ring.neg(&ring.mul(s, &p[j].1))));
            j += 1;
        } else {
            let x = ring.sub(&v[i].1, &ring.mul(s, &p[j].1));
            if !ring.is_zero(&x) {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Dense matrix over F2 with rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn from_sparse(rows: usize, cols: usize, ones: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut b = BitMatrix::new(rows, cols);
        for (r, c) in ones {
            b.flip(r, c);
        }
        b
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if self.get(r, c) != v {
            self.flip(r, c);
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    /// Row-reduce in place; returns the pivot column of each pivot row.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            if top == self.rows {
                break;
            }
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (top..self.rows).find(|&r| self.data[r * w + word] & bit != 0) else {
                continue;
            };
            if p != top {
                for k in 0..w {
                    self.data.swap(p * w + k, top * w + k);
                }
            }
            let prow: Vec<u64> = self.data[top * w..(top + 1) * w].to_vec();
            let (head, tail) = self.data.split_at_mut(top * w);
            for row in tail[w..].chunks_mut(w) {
                if row[word] & bit != 0 {
                    for k in word..w {
                        row[k] ^= prow[k];
                    }
                }
            }
            for row in head.chunks_mut(w) {
                if row[word] & bit != 0 {
                    for k in word..w {
                        row[k] ^= prow[k];
                    }
                }
            }
            pivots.push(c);
            top += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            let mut t = BitMatrix::new(self.cols, self.rows);
            for r in 0..self.rows {
                for c in 0..self.cols {
                    if self.get(r, c) {
                        t.flip(c, r);
                    }
                }
            }
            return t.rank();
        }
        self.clone().echelonize().len()
    }
}
