//! Turning bare crossing tuples into an oriented, checked [`Diagram`].

use rustc_hash::FxHashMap;

use super::{Crossing, Diagram};
use crate::error::KhError;

/// A crossing slot: (crossing index, position 0..4).
pub(crate) type Slot = (usize, u8);

/// Crossing tuples with arbitrary edge ids, under-strand at positions 0 and
/// 2 but with no direction fixed yet, plus a number of free loops.
#[derive(Clone, Debug)]
pub(crate) struct RawDiagram {
    pub tuples: Vec<[u32; 4]>,
    pub loops: usize,
}

/// How component orientations are chosen.
pub(crate) enum Orient<'a> {
    /// Every under-strand must already run from position 0 to 2.
    Under,
    /// Preferred head slot per edge id. A component follows the hint of its
    /// lowest hinted edge; tuples are rotated to restore the convention.
    Prefer(&'a FxHashMap<u32, Slot>),
}

impl RawDiagram {
    /// Orient, sign and check the diagram. With `relabel`, edges are renamed
    /// `1..` in traversal order, components ordered by their lowest old id;
    /// otherwise the ids must already be exactly `1..=E`.
    pub fn build(&self, orient: Orient<'_>, relabel: bool, basepoint: Option<u32>) -> Result<Diagram, KhError> {
        let mut slots: FxHashMap<u32, Vec<Slot>> = FxHashMap::default();
        for (k, t) in self.tuples.iter().enumerate() {
            for (p, &e) in t.iter().enumerate() {
                slots.entry(e).or_default().push((k, p as u8));
            }
        }
        let mut ids: Vec<u32> = slots.keys().copied().collect();
        ids.sort_unstable();
        for &e in &ids {
            let n = slots[&e].len();
            if n != 2 {
                return Err(KhError::EdgeCount { label: e, count: n });
            }
        }
        if !relabel {
            if let Some(missing) = (1..=ids.len() as u32).find(|e| !slots.contains_key(e)) {
                return Err(KhError::EdgeCount { label: missing, count: 0 });
            }
        }
        let at = |s: Slot| self.tuples[s.0][s.1 as usize];
        let other = |e: u32, s: Slot| {
            let v = &slots[&e];
            if v[0] == s { v[1] } else { v[0] }
        };

        // Trace every component as a list of (edge, tail slot, head slot).
        let mut seen: FxHashMap<u32, ()> = FxHashMap::default();
        let mut comps: Vec<Vec<(u32, Slot, Slot)>> = Vec::new();
        for &start in &ids {
            if seen.contains_key(&start) {
                continue;
            }
            let s0 = slots[&start][0];
            let mut trace = Vec::new();
            let (mut e, mut tail) = (start, s0);
            loop {
                let head = other(e, tail);
                seen.insert(e, ());
                trace.push((e, tail, head));
                let out = (head.0, head.1 ^ 2);
                e = at(out);
                tail = out;
                if e == start && tail == s0 {
                    break;
                }
            }
            comps.push(trace);
        }

        // Decide directions.
        let mut reversed = vec![false; comps.len()];
        for (ci, trace) in comps.iter().enumerate() {
            let choice = match &orient {
                Orient::Under => {
                    let (mut fwd, mut bwd) = (0, 0);
                    for &(_, _, head) in trace {
                        match head.1 {
                            0 => fwd += 1,
                            2 => bwd += 1,
                            _ => {}
                        }
                    }
                    if fwd > 0 && bwd > 0 {
                        return Err(KhError::Orientation(format!(
                            "component through edge {} passes under both ways",
                            trace[0].0
                        )));
                    }
                    (fwd + bwd > 0).then_some(bwd > 0)
                }
                Orient::Prefer(hints) => trace
                    .iter()
                    .filter(|(e, _, _)| hints.contains_key(e))
                    .min_by_key(|(e, _, _)| *e)
                    .map(|(e, _, head)| hints[e] != *head),
            };
            reversed[ci] = choice.unwrap_or_else(|| label_order_reversed(trace));
        }

        // Oriented passages: head slots per edge.
        let mut head_of: FxHashMap<u32, Slot> = FxHashMap::default();
        let mut oriented: Vec<Vec<u32>> = Vec::with_capacity(comps.len());
        for (trace, &rev) in comps.iter().zip(&reversed) {
            let mut cyc: Vec<u32> = Vec::with_capacity(trace.len());
            if rev {
                // Start at the same edge, then walk backwards.
                for i in 0..trace.len() {
                    let (e, tail, _) = trace[(trace.len() - i) % trace.len()];
                    head_of.insert(e, tail);
                    cyc.push(e);
                }
            } else {
                for &(e, _, head) in trace {
                    head_of.insert(e, head);
                    cyc.push(e);
                }
            }
            oriented.push(cyc);
        }

        // Rotate tuples whose under-strand now enters at 2, then sign.
        let mut crossings = Vec::with_capacity(self.tuples.len());
        for (k, t) in self.tuples.iter().enumerate() {
            let mut edges = *t;
            // The under-strand enters at 0 or, failing that, at 2.
            let rot = if head_of[&t[0]] == (k, 0) { 0 } else { 2 };
            if rot == 2 {
                if matches!(orient, Orient::Under) {
                    return Err(KhError::Orientation(format!("under-strand of crossing {} runs against its label order", k + 1)));
                }
                edges = [t[2], t[3], t[0], t[1]];
            }
            let d_in = head_of[&t[(3 + rot) % 4]] == (k, ((3 + rot) % 4) as u8);
            crossings.push(Crossing { edges, sign: if d_in { 1 } else { -1 } });
        }

        // Labels.
        let mut label: FxHashMap<u32, u32> = FxHashMap::default();
        let mut components: Vec<Vec<u32>> = Vec::new();
        if relabel {
            let mut next = 1u32;
            for cyc in &oriented {
                let mut c = Vec::with_capacity(cyc.len());
                for &e in cyc {
                    label.insert(e, next);
                    c.push(next);
                    next += 1;
                }
                components.push(c);
            }
        } else {
            for cyc in &oriented {
                let m = cyc.iter().position(|e| e == cyc.iter().min().unwrap()).unwrap();
                let mut c = cyc[m..].to_vec();
                c.extend_from_slice(&cyc[..m]);
                components.push(c);
            }
            for &e in &ids {
                label.insert(e, e);
            }
        }
        for c in crossings.iter_mut() {
            c.edges = c.edges.map(|e| label[&e]);
        }
        let base = ids.len() as u32;
        let loops: Vec<u32> = (1..=self.loops as u32).map(|i| base + i).collect();
        components.extend(loops.iter().map(|&e| vec![e]));
        let basepoint = match basepoint {
            None => None,
            Some(b) => match label.get(&b) {
                Some(&l) => Some(l),
                None if !relabel && b > base && b <= base + self.loops as u32 => Some(b),
                None => return Err(KhError::BadBasepoint(b)),
            },
        };
        let d = Diagram { crossings, edge_count: base + self.loops as u32, loops, components, basepoint };
        check_planar(&d)?;
        Ok(d)
    }
}

/// Fall back to the direction in which labels mostly increase by one.
fn label_order_reversed(trace: &[(u32, Slot, Slot)]) -> bool {
    let n = trace.len();
    let (mut up, mut down) = (0, 0);
    for i in 0..n {
        let (a, b) = (trace[i].0, trace[(i + 1) % n].0);
        if b == a + 1 {
            up += 1;
        } else if a == b + 1 {
            down += 1;
        }
    }
    down > up
}

/// A PD code is realised on the sphere iff its faces (orbits of "follow the
/// edge, turn counterclockwise") number `n + 2 * (connected pieces)`.
pub(crate) fn check_planar(d: &Diagram) -> Result<(), KhError> {
    let n = d.crossings.len();
    if n == 0 {
        return Ok(());
    }
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); d.edge_count as usize + 1];
    for (k, c) in d.crossings.iter().enumerate() {
        for p in 0..4 {
            ends[c.edges[p] as usize].push(4 * k + p);
        }
    }
    let alpha = |s: usize| {
        let e = &ends[d.crossings[s / 4].edges[s % 4] as usize];
        if e[0] == s { e[1] } else { e[0] }
    };
    let mut visited = vec![false; 4 * n];
    let mut faces = 0;
    for s in 0..4 * n {
        if visited[s] {
            continue;
        }
        faces += 1;
        let mut x = s;
        while !visited[x] {
            visited[x] = true;
            let y = alpha(x);
            x = 4 * (y / 4) + (y % 4 + 1) % 4;
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in ends.iter().filter(|e| e.len() == 2) {
        let (a, b) = (find(&mut parent, e[0] / 4), find(&mut parent, e[1] / 4));
        parent[a] = b;
    }
    let pieces = (0..n).filter(|&k| find(&mut parent, k) == k).count();
    if faces != n + 2 * pieces {
        return Err(KhError::NonPlanar(format!("{faces} faces for {n} crossings in {pieces} pieces")));
    }
    Ok(())
}
