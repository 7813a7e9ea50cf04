//! Column-major sparse matrices.

use super::ring::CoeffRing;

/// A sparse matrix over a coefficient ring. Column `c` holds its nonzero
/// entries as `(row, value)` pairs sorted by row; zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, E)>>,
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed and
    /// zeros dropped.
    pub fn from_triplets<R>(ring: &R, rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, E)>) -> Self
    where
        R: CoeffRing<Elem = E>,
    {
        let mut columns: Vec<Vec<(u32, E)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            columns[c].push((r as u32, v));
        }
        for col in columns.iter_mut() {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(u32, E)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 = ring.add(&last.1, &v),
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !ring.is_zero(v));
            *col = merged;
        }
        SparseMatrix { rows, cols, columns }
    }

    /// Build from columns already sorted by row with no zeros.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, E)>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().all(|c| c.iter().all(|e| (e.0 as usize) < rows)));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(u32, E)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        let col = &self.columns[c];
        col.binary_search_by_key(&(r as u32), |e| e.0).ok().map(|i| &col[i].1)
    }

    /// Iterate over `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(u32, E)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            cols[r].push((c as u32, v.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns: cols }
    }

    /// Restrict to the listed rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut row_map = vec![u32::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_map[r] = k as u32;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut col: Vec<(u32, E)> = self.columns[c]
                    .iter()
                    .filter(|(r, _)| row_map[*r as usize] != u32::MAX)
                    .map(|(r, v)| (row_map[*r as usize], v.clone()))
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), columns }
    }

    /// Product `self * other`.
    pub fn mul<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &SparseMatrix<E>) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut acc: Vec<Option<E>> = vec![None; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        let mut columns = Vec::with_capacity(other.cols);
        for ocol in &other.columns {
            for (k, b) in ocol {
                for (r, a) in &self.columns[*k as usize] {
                    let p = ring.mul(a, b);
                    let slot = &mut acc[*r as usize];
                    match slot {
                        Some(x) => *x = ring.add(x, &p),
                        None => {
                            *slot = Some(p);
                            touched.push(*r);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut col = Vec::new();
            for r in touched.drain(..) {
                if let Some(v) = acc[r as usize].take() {
                    if !ring.is_zero(&v) {
                        col.push((r, v));
                    }
                }
            }
            columns.push(col);
        }
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    /// Apply a coefficient map, dropping entries that become zero.
    pub fn map<R2: CoeffRing>(&self, target: &R2, f: impl Fn(&E) -> R2::Elem) -> SparseMatrix<R2::Elem> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(r, v)| {
                        let w = f(v);
                        (!target.is_zero(&w)).then_some((*r, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn scale<R: CoeffRing<Elem = E>>(&self, ring: &R, s: &E) -> Self {
        self.map(ring, |v| ring.mul(v, s))
    }

    pub fn to_dense<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        let mut m = vec![vec![ring.zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            m[r][c] = v.clone();
        }
        m
    }

    pub fn from_dense<R: CoeffRing<Elem = E>>(ring: &R, m: &[Vec<E>]) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let trip = m
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())));
        SparseMatrix::from_triplets(ring, rows, cols, trip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Integer, Integers, F2};

    fn z(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(&Integers, 2, 2, vec![(0, 0, z(1)), (0, 0, z(-1)), (1, 1, z(3))]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), Some(&z(3)));
        assert_eq!(m.get(0, 0), None);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&Integers, &[vec![z(1), z(2)], vec![z(0), z(1)]]);
        let b = SparseMatrix::from_dense(&Integers, &[vec![z(1), z(-2)], vec![z(0), z(1)]]);
        let p = a.mul(&Integers, &b);
        assert_eq!(p.to_dense(&Integers), vec![vec![z(1), z(0)], vec![z(0), z(1)]]);
        assert_eq!(a.transpose().get(1, 0), Some(&z(2)));
    }

    #[test]
    fn reduction_mod_two() {
        let a = SparseMatrix::from_dense(&Integers, &[vec![z(2), z(3)]]);
        let b = a.map(&F2, |v| F2.from_integer(v));
        assert_eq!(b.nnz(), 1);
        assert_eq!(b.get(0, 1), Some(&1));
    }
}
