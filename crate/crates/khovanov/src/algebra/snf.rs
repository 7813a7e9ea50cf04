//! Smith normal form over the integers.

use rustc_hash::{FxHashMap, FxHashSet};

use super::integer::Integer;
use super::sparse::SparseMatrix;

/// Invariant factors of an integer matrix: `diagonal[k]` divides
/// `diagonal[k + 1]`, all entries positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<Integer>,
    pub rank: usize,
}

impl SnfResult {
    /// Invariant factors different from 1, i.e. the torsion they produce.
    pub fn torsion(&self) -> impl Iterator<Item = &Integer> {
        self.diagonal.iter().filter(|d| !d.is_one())
    }
}

/// How the dense phase chooses its next pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Entry of minimal absolute value in the remaining block.
    MinAbs,
    /// First nonzero entry in row-major order.
    FirstNonzero,
}

pub fn smith_normal_form(m: &SparseMatrix<Integer>) -> SnfResult {
    smith_normal_form_with(m, PivotStrategy::MinAbs)
}

/// Unit pivots are cleared sparsely first (each contributes a factor 1),
/// then the leftover block is diagonalised densely with `strategy`. The
/// dense phase is where a sparser algorithm would plug in.
pub fn smith_normal_form_with(m: &SparseMatrix<Integer>, strategy: PivotStrategy) -> SnfResult {
    let (units, rest) = clear_unit_pivots(m);
    let mut diag = dense_diagonal(rest, strategy);
    normalize_chain(&mut diag);
    let mut diagonal = vec![Integer::ONE; units];
    diagonal.extend(diag);
    let rank = diagonal.len();
    SnfResult { diagonal, rank }
}

/// Sparse elimination on ±1 entries. Returns the number of pivots used and
/// the remaining rows (restricted to surviving columns) as dense rows.
fn clear_unit_pivots(m: &SparseMatrix<Integer>) -> (usize, Vec<Vec<Integer>>) {
    let mut rows: Vec<FxHashMap<u32, Integer>> = vec![FxHashMap::default(); m.rows()];
    let mut cols: Vec<FxHashSet<u32>> = vec![FxHashSet::default(); m.cols()];
    for (r, c, v) in m.entries() {
        rows[r].insert(c as u32, v.clone());
        cols[c].insert(r as u32);
    }
    let mut alive_col = vec![true; m.cols()];
    let mut alive_row = vec![true; m.rows()];
    let mut units = 0;
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..m.cols() {
            if !alive_col[c] {
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter(|&&r| rows[r as usize][&(c as u32)].is_unit())
                .min_by_key(|&&r| (rows[r as usize].len(), r))
                .copied();
            let Some(pr) = pivot else { continue };
            let pr = pr as usize;
            let u = rows[pr][&(c as u32)].clone();
            let prow: Vec<(u32, Integer)> = rows[pr].iter().map(|(k, v)| (*k, v.clone())).collect();
            let others: Vec<u32> = cols[c].iter().copied().filter(|&r| r as usize != pr).collect();
            for r in others {
                let r = r as usize;
                // factor = a[r][c] / u, and u = ±1 so division is multiplication
                let f = rows[r][&(c as u32)].mul(&u);
                for (k, v) in &prow {
                    let delta = f.mul(v);
                    let entry = rows[r].entry(*k).or_insert(Integer::ZERO);
                    *entry = entry.sub(&delta);
                    if entry.is_zero() {
                        rows[r].remove(k);
                        cols[*k as usize].remove(&(r as u32));
                    } else {
                        cols[*k as usize].insert(r as u32);
                    }
                }
            }
            for (k, _) in &prow {
                cols[*k as usize].remove(&(pr as u32));
            }
            rows[pr].clear();
            alive_row[pr] = false;
            alive_col[c] = false;
            debug_assert!(cols[c].is_empty());
            units += 1;
            progress = true;
        }
    }
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| alive_col[c] && !cols[c].is_empty()).collect();
    let dense = (0..m.rows())
        .filter(|&r| alive_row[r] && !rows[r].is_empty())
        .map(|r| live_cols.iter().map(|&c| rows[r].get(&(c as u32)).cloned().unwrap_or(Integer::ZERO)).collect())
        .collect();
    (units, dense)
}

fn find_pivot(a: &[Vec<Integer>], t: usize, strategy: PivotStrategy) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            match strategy {
                PivotStrategy::FirstNonzero => return Some((r, c)),
                PivotStrategy::MinAbs => {
                    if best.is_none_or(|(br, bc)| v.abs() < a[br][bc].abs()) {
                        best = Some((r, c));
                        if v.is_unit() {
                            return best;
                        }
                    }
                }
            }
        }
    }
    best
}

fn dense_diagonal(mut a: Vec<Vec<Integer>>, strategy: PivotStrategy) -> Vec<Integer> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = find_pivot(&a, t, strategy) else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let (q, rem) = a[r][t].div_mod_floor(&a[t][t]);
                for c in t..cols {
                    let d = q.mul(&a[t][c]);
                    a[r][c] = a[r][c].sub(&d);
                }
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let (q, rem) = a[t][c].div_mod_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = q.mul(&row[t]);
                    row[c] = row[c].sub(&d);
                }
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // A remainder survived: move the smallest entry of row/column t
            // into the pivot position and repeat.
            let mut best = (t, t);
            for r in t..rows {
                if !a[r][t].is_zero() && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if !a[t][c].is_zero() && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Turn any list of nonzero diagonal entries into the divisibility chain of
/// an equivalent diagonal matrix, using diag(a, b) ~ diag(gcd, lcm).
fn normalize_chain(d: &mut [Integer]) {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = d[i].mul(&d[j]).div_exact(&g);
                d[i] = g;
                d[j] = l;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Integers;

    fn m(rows: &[&[i64]]) -> SparseMatrix<Integer> {
        let dense: Vec<Vec<Integer>> = rows.iter().map(|r| r.iter().map(|&v| Integer::from(v)).collect()).collect();
        SparseMatrix::from_dense(&Integers, &dense)
    }

    fn diag(r: &SnfResult) -> Vec<i64> {
        r.diagonal.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn diag_two_three() {
        let r = smith_normal_form(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(diag(&r), vec![1, 6]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn zero_matrix() {
        let r = smith_normal_form(&SparseMatrix::zeros(3, 4));
        assert!(r.diagonal.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn classic_example() {
        let r = smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(diag(&r), vec![2, 6, 12]);
        let r = smith_normal_form_with(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), PivotStrategy::FirstNonzero);
        assert_eq!(diag(&r), vec![2, 6, 12]);
    }

    #[test]
    fn units_then_torsion() {
        let r = smith_normal_form(&m(&[&[1, 1, 0], &[1, -1, 0], &[0, 0, 4]]));
        assert_eq!(diag(&r), vec![1, 2, 4]);
    }
}
