//! Kauffman state sum, swept crossing by crossing.
//!
//! After some crossings have been smoothed, what matters for the rest of
//! the sum is only how the smoothed part pairs up the edges leaving it. The
//! sweep keeps one polynomial per such pairing and closes circles as they
//! appear, so the work grows with the width of the frontier rather than
//! with `2^n`.

use rustc_hash::FxHashMap;

use crate::algebra::LaurentPoly;
use crate::diagram::Diagram;

/// Pairing of frontier edges, stored as sorted `(low, high)` pairs.
type Pairing = Vec<(u32, u32)>;

/// Unnormalised bracket `sum_s (-q)^{r(s)} (q + q^{-1})^{circles(s)}`.
pub fn bracket(d: &Diagram) -> LaurentPoly {
    let cr = d.crossings();
    let order = sweep_order(d);
    let mut states: FxHashMap<Pairing, LaurentPoly> = FxHashMap::default();
    states.insert(Vec::new(), LaurentPoly::one());
    let circle = LaurentPoly::unknot();
    for k in order {
        let [a, b, c, dd] = cr[k].edges;
        let mut next: FxHashMap<Pairing, LaurentPoly> = FxHashMap::default();
        for (pairing, poly) in &states {
            for (smoothing, arcs) in [(0, [(a, b), (c, dd)]), (1, [(a, dd), (b, c)])] {
                let (new_pairing, loops) = join(pairing, &arcs);
                let mut w = if smoothing == 1 { poly.shift(1, 0).scale(-1) } else { poly.clone() };
                for _ in 0..loops {
                    w = w.mul(&circle);
                }
                let slot = next.entry(new_pairing).or_default();
                *slot = slot.add(&w);
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let mut total = states.remove(&Vec::new()).unwrap_or_default();
    debug_assert!(states.is_empty(), "frontier left open");
    for _ in 0..d.loops().len() {
        total = total.mul(&circle);
    }
    total
}

/// Glue two new arcs onto a pairing. Every edge label is a node; the old
/// pairs and the new arcs are links. Paths between nodes of degree one
/// form the new pairing, cycles are closed circles.
fn join(pairing: &Pairing, arcs: &[(u32, u32); 2]) -> (Pairing, usize) {
    let mut links: Vec<(u32, u32)> = pairing.clone();
    links.extend_from_slice(arcs);
    let mut at: FxHashMap<u32, Vec<usize>> = FxHashMap::default();
    for (id, &(x, y)) in links.iter().enumerate() {
        at.entry(x).or_default().push(id);
        at.entry(y).or_default().push(id);
    }
    let mut used = vec![false; links.len()];
    let walk = |start: u32, used: &mut Vec<bool>| -> u32 {
        let mut node = start;
        loop {
            let Some(&l) = at[&node].iter().find(|&&l| !used[l]) else { return node };
            used[l] = true;
            let (x, y) = links[l];
            node = if x == node { y } else { x };
        }
    };
    let mut ends: Vec<u32> = at.iter().filter(|(_, v)| v.len() == 1).map(|(k, _)| *k).collect();
    ends.sort_unstable();
    let mut out = Vec::new();
    for e in ends {
        if at[&e].iter().all(|&l| used[l]) {
            continue;
        }
        let f = walk(e, &mut used);
        out.push((e.min(f), e.max(f)));
    }
    let mut loops = 0;
    for l in 0..links.len() {
        if !used[l] {
            let (x, _) = links[l];
            walk(x, &mut used);
            loops += 1;
        }
    }
    out.sort_unstable();
    (out, loops)
}

/// Greedy order keeping the frontier small: next is the crossing sharing
/// the most edges with those already taken.
fn sweep_order(d: &Diagram) -> Vec<usize> {
    let cr = d.crossings();
    let n = cr.len();
    let mut taken = vec![false; n];
    let mut touched: FxHashMap<u32, u8> = FxHashMap::default();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let k = (0..n)
            .filter(|&k| !taken[k])
            .max_by_key(|&k| (cr[k].edges.iter().filter(|e| touched.contains_key(e)).count(), std::cmp::Reverse(k)))
            .unwrap();
        taken[k] = true;
        for e in cr[k].edges {
            *touched.entry(e).or_insert(0) += 1;
        }
        order.push(k);
    }
    order
}

/// Jones polynomial normalised so the unknot gives `q + q^{-1}`:
/// `(-1)^{n_-} q^{n_+ - 2 n_-}` times the bracket.
pub fn jones_skein(d: &Diagram) -> LaurentPoly {
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    bracket(d).shift(np - 2 * nm, 0).scale(sign)
}
