//! Gaussian elimination of chain complexes.
//!
//! An invertible entry `u = <d x, y>` lets `x` and `y` be cancelled: every
//! other `z -> y` and `x -> w` are replaced by `z -> w` with coefficient
//! `-<d z, y> u^{-1} <d x, w>`. The result is chain homotopy equivalent.

use std::collections::BTreeMap;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::algebra::{CoeffRing, SparseMatrix};
use crate::cube::ChainComplex;

/// Bookkeeping of one elimination run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: usize,
    pub sizes_before: BTreeMap<i32, usize>,
    pub sizes_after: BTreeMap<i32, usize>,
}

struct Graph<E> {
    degree: Vec<i32>,
    q: Vec<i32>,
    out: Vec<FxHashMap<u32, E>>,
    inn: Vec<FxHashSet<u32>>,
    alive: Vec<bool>,
}

impl<E: Clone + PartialEq> Graph<E> {
    fn from_complex<R: CoeffRing<Elem = E>>(c: &ChainComplex<R>) -> (Self, BTreeMap<i32, u32>) {
        let mut offsets = BTreeMap::new();
        let (mut degree, mut q) = (Vec::new(), Vec::new());
        for (&i, js) in &c.groups {
            offsets.insert(i, degree.len() as u32);
            degree.extend(std::iter::repeat_n(i, js.len()));
            q.extend_from_slice(js);
        }
        let n = degree.len();
        let mut out: Vec<FxHashMap<u32, E>> = (0..n).map(|_| FxHashMap::default()).collect();
        let mut inn: Vec<FxHashSet<u32>> = (0..n).map(|_| FxHashSet::default()).collect();
        for (i, d) in &c.diffs {
            let (so, to) = (offsets[i], offsets[&(i + 1)]);
            for (r, col, v) in d.entries() {
                let (x, y) = (so + col as u32, to + r as u32);
                out[x as usize].insert(y, v.clone());
                inn[y as usize].insert(x);
            }
        }
        (Graph { degree, q, out, inn, alive: vec![true; n] }, offsets)
    }
}

/// Cancel invertible entries until none is left. In a filtered complex only
/// entries between equal quantum degrees are used, which keeps the
/// filtration. Pivots are taken in passes of increasing fill-in estimate
/// `(|in(y)| - 1)(|out(x)| - 1)`, each pass sweeping generators in order.
pub fn gauss_eliminate<R: CoeffRing>(c: &ChainComplex<R>) -> (ChainComplex<R>, ReductionTrace) {
    let ring = &c.ring;
    let (mut g, _) = Graph::from_complex(c);
    let n = g.degree.len();
    let mut trace = ReductionTrace {
        sizes_before: c.groups.iter().map(|(i, v)| (*i, v.len())).collect(),
        ..Default::default()
    };
    let mut threshold = 0usize;
    loop {
        let mut progress = false;
        for x in 0..n {
            if !g.alive[x] {
                continue;
            }
            let mut best: Option<(usize, u32)> = None;
            for (&y, v) in &g.out[x] {
                if c.filtered && g.q[y as usize] != g.q[x] {
                    continue;
                }
                if !ring.is_unit(v) {
                    continue;
                }
                let cost = (g.inn[y as usize].len() - 1) * (g.out[x].len() - 1);
                if best.is_none_or(|(bc, by)| (cost, y) < (bc, by)) {
                    best = Some((cost, y));
                }
            }
            if let Some((cost, y)) = best {
                if cost <= threshold {
                    cancel(ring, &mut g, x as u32, y);
                    trace.steps += 1;
                    progress = true;
                }
            }
        }
        if !progress {
            if threshold == usize::MAX {
                break;
            }
            threshold = if threshold >= 1 << 12 { usize::MAX } else { (threshold * 2).max(1) };
        }
    }
    let reduced = rebuild(c, &g);
    trace.sizes_after = reduced.groups.iter().map(|(i, v)| (*i, v.len())).collect();
    for i in trace.sizes_before.keys() {
        trace.sizes_after.entry(*i).or_insert(0);
    }
    (reduced, trace)
}

fn cancel<R: CoeffRing>(ring: &R, g: &mut Graph<R::Elem>, x: u32, y: u32) {
    let u = g.out[x as usize][&y].clone();
    let uinv = ring.inv(&u).expect("unit pivot");
    let xs: Vec<(u32, R::Elem)> = g.out[x as usize].iter().filter(|(w, _)| **w != y).map(|(w, v)| (*w, v.clone())).collect();
    let zs: Vec<u32> = g.inn[y as usize].iter().copied().filter(|&z| z != x).collect();
    for z in zs {
        let czy = g.out[z as usize][&y].clone();
        let f = ring.neg(&ring.mul(&czy, &uinv));
        for (w, cxw) in &xs {
            let delta = ring.mul(&f, cxw);
            let zo = &mut g.out[z as usize];
            match zo.get_mut(w) {
                Some(v) => {
                    let s = ring.add(v, &delta);
                    if ring.is_zero(&s) {
                        zo.remove(w);
                        g.inn[*w as usize].remove(&z);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    zo.insert(*w, delta);
                    g.inn[*w as usize].insert(z);
                }
            }
        }
    }
    for v in [x, y] {
        let outs: Vec<u32> = g.out[v as usize].keys().copied().collect();
        for w in outs {
            g.inn[w as usize].remove(&v);
        }
        let ins: Vec<u32> = g.inn[v as usize].iter().copied().collect();
        for z in ins {
            g.out[z as usize].remove(&v);
        }
        g.out[v as usize].clear();
        g.inn[v as usize].clear();
        g.alive[v as usize] = false;
    }
}

fn rebuild<R: CoeffRing>(c: &ChainComplex<R>, g: &Graph<R::Elem>) -> ChainComplex<R> {
    let mut out = ChainComplex::new(c.ring.clone(), c.n_minus, c.n_plus, c.filtered);
    let mut new_index = vec![u32::MAX; g.degree.len()];
    for v in 0..g.degree.len() {
        if g.alive[v] {
            let grp = out.groups.entry(g.degree[v]).or_default();
            new_index[v] = grp.len() as u32;
            grp.push(g.q[v]);
        }
    }
    let mut cols: BTreeMap<i32, Vec<Vec<(u32, R::Elem)>>> = BTreeMap::new();
    for v in 0..g.degree.len() {
        if !g.alive[v] {
            continue;
        }
        let mut col: Vec<(u32, R::Elem)> = g.out[v].iter().map(|(w, e)| (new_index[*w as usize], e.clone())).collect();
        col.sort_unstable_by_key(|e| e.0);
        cols.entry(g.degree[v]).or_default().push(col);
    }
    for (i, cs) in cols {
        let rows = out.rank(i + 1);
        let m = SparseMatrix::from_columns(rows, cs);
        if !m.is_zero() {
            out.diffs.insert(i, m);
        }
    }
    out
}
