//! Oriented link diagrams given as planar diagram (PD) codes.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand, so the under-strand runs
//! `a -> c`. The over-strand runs `d -> b` at a positive crossing and
//! `b -> d` at a negative one. The 0-smoothing joins `(a,b)` and `(c,d)`,
//! the 1-smoothing joins `(a,d)` and `(b,c)`.

mod build;
mod parse;
mod resolution;
pub mod table;
#[cfg(test)]
mod tests;

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::KhError;
use build::{Orient, RawDiagram};
pub use resolution::{resolve, ResolveMode, Resolution};

/// A crossing of an oriented diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [u32; 4],
    /// +1 or -1.
    pub sign: i8,
}

/// An oriented link diagram. Edges are labelled `1..=edge_count`; labels in
/// `loops` are crossingless circles and appear in no crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    edge_count: u32,
    loops: Vec<u32>,
    components: Vec<Vec<u32>>,
    basepoint: Option<u32>,
}

impl Diagram {
    /// Parse the PD grammar: `X(a,b,c,d)` and `U(k)` items separated by `;`,
    /// with an optional trailing `@b` naming the basepoint edge.
    pub fn parse_pd(text: &str) -> Result<Diagram, KhError> {
        parse::parse_pd(text)
    }

    /// The k-component unlink with no crossings.
    pub fn unlink(k: usize) -> Diagram {
        Diagram {
            crossings: Vec::new(),
            edge_count: k as u32,
            loops: (1..=k as u32).collect(),
            components: (1..=k as u32).map(|e| vec![e]).collect(),
            basepoint: None,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    /// Components as edge cycles in orientation order.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn basepoint(&self) -> Option<u32> {
        self.basepoint
    }

    pub fn with_basepoint(mut self, edge: Option<u32>) -> Result<Diagram, KhError> {
        if let Some(e) = edge {
            if e == 0 || e > self.edge_count {
                return Err(KhError::BadBasepoint(e));
            }
        }
        self.basepoint = edge;
        Ok(self)
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Index of the component containing `edge`.
    pub fn component_of(&self, edge: u32) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&edge))
    }

    /// Mirror image: every crossing changes sign. The tuple is rotated so
    /// it again starts at the incoming under-strand, which is the old
    /// incoming over-strand.
    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                let edges = if c.sign > 0 { [d, a, b, cc] } else { [b, cc, d, a] };
                Crossing { edges, sign: -c.sign }
            })
            .collect();
        Diagram { crossings, ..self.clone() }
    }

    /// Disjoint union with the labels of `other` shifted past ours. The
    /// basepoint of `self` is kept, else that of `other`.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let s = self.edge_count;
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing { edges: c.edges.map(|e| e + s), sign: c.sign }));
        let mut loops = self.loops.clone();
        loops.extend(other.loops.iter().map(|e| e + s));
        let mut components = self.components.clone();
        components.extend(other.components.iter().map(|c| c.iter().map(|e| e + s).collect()));
        Diagram {
            crossings,
            edge_count: s + other.edge_count,
            loops,
            components,
            basepoint: self.basepoint.or(other.basepoint.map(|b| b + s)),
        }
    }

    /// Tail and head slot `(crossing, position)` of every edge, indexed by
    /// label. Free loops get `None`.
    pub fn edge_ends(&self) -> Vec<Option<[(usize, u8); 2]>> {
        let mut tail = vec![None; self.edge_count as usize + 1];
        let mut head = vec![None; self.edge_count as usize + 1];
        for (k, c) in self.crossings.iter().enumerate() {
            let [a, b, cc, d] = c.edges;
            head[a as usize] = Some((k, 0));
            tail[cc as usize] = Some((k, 2));
            if c.sign > 0 {
                head[d as usize] = Some((k, 3));
                tail[b as usize] = Some((k, 1));
            } else {
                head[b as usize] = Some((k, 1));
                tail[d as usize] = Some((k, 3));
            }
        }
        tail.into_iter().zip(head).map(|(t, h)| Some([t?, h?])).collect()
    }

    /// Relabel edges in traversal order, components ordered by lowest label.
    pub fn canonicalize(&self) -> Diagram {
        let raw = RawDiagram { tuples: self.crossings.iter().map(|c| c.edges).collect(), loops: self.loops.len() };
        raw.build(Orient::Under, true, self.basepoint.filter(|b| !self.loops.contains(b)))
            .expect("relabelling a valid diagram")
    }

    /// The diagram obtained by smoothing crossing `k` (0-based) with the
    /// given smoothing (0 or 1). Edges are relabelled. Where the smoothing
    /// is not the oriented one, each new component follows the direction of
    /// its lowest old edge. The basepoint is dropped.
    pub fn smoothing(&self, k: usize, which: u8) -> Diagram {
        let [a, b, c, d] = self.crossings[k].edges;
        let pairs = if which == 0 { [(a, b), (c, d)] } else { [(a, d), (b, c)] };
        let mut parent: Vec<u32> = (0..=self.edge_count).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for (x, y) in pairs {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx.max(ry) as usize] = rx.min(ry);
        }
        let shift = |s: (usize, u8)| (if s.0 > k { s.0 - 1 } else { s.0 }, s.1);
        let ends = self.edge_ends();
        let mut hints: FxHashMap<u32, (usize, u8)> = FxHashMap::default();
        let mut classes: Vec<u32> = Vec::new();
        for e in 1..=self.edge_count {
            let Some([t, h]) = ends[e as usize] else { continue };
            let r = find(&mut parent, e);
            classes.push(r);
            if hints.contains_key(&r) {
                continue;
            }
            if h.0 != k {
                hints.insert(r, shift(h));
            } else if t.0 != k {
                // Only the tail survives: the head is the other far end.
                let far: Vec<(usize, u8)> = (1..=self.edge_count)
                    .filter(|&f| find(&mut parent, f) == r)
                    .filter_map(|f| ends[f as usize])
                    .flatten()
                    .filter(|s| s.0 != k && *s != t)
                    .collect();
                hints.insert(r, shift(far[0]));
            }
        }
        classes.sort_unstable();
        classes.dedup();
        let new_loops = classes.iter().filter(|r| !hints.contains_key(r)).count();
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, c)| c.edges.map(|e| find(&mut parent, e)))
            .collect();
        RawDiagram { tuples, loops: self.loops.len() + new_loops }
            .build(Orient::Prefer(&hints), true, None)
            .expect("smoothing a valid diagram")
    }

    /// Connected sum along the basepoint edge of each summand (edge 1 when
    /// unset). The result carries no basepoint.
    pub fn connected_sum(&self, other: &Diagram) -> Result<Diagram, KhError> {
        if self.crossings.is_empty() && self.loops.len() == 1 {
            return other.clone().with_basepoint(None);
        }
        if other.crossings.is_empty() && other.loops.len() == 1 {
            return self.clone().with_basepoint(None);
        }
        let e1 = self.basepoint.unwrap_or(1);
        let e2 = other.basepoint.unwrap_or(1) + self.edge_count;
        let sum = self.disjoint_union(other);
        if sum.loops.contains(&e1) || sum.loops.contains(&e2) {
            return Err(KhError::Unsupported("connected sum along a crossingless circle".into()));
        }
        let ends = sum.edge_ends();
        let mut hints: FxHashMap<u32, (usize, u8)> = FxHashMap::default();
        for e in 1..=sum.edge_count {
            if let Some([_, h]) = ends[e as usize] {
                hints.insert(e, h);
            }
        }
        let (h1, h2) = (hints[&e1], hints[&e2]);
        let mut tuples: Vec<[u32; 4]> = sum.crossings.iter().map(|c| c.edges).collect();
        tuples[h1.0][h1.1 as usize] = e2;
        tuples[h2.0][h2.1 as usize] = e1;
        hints.insert(e1, h2);
        hints.insert(e2, h1);
        // Loops of the summands are relabelled after the crossing edges.
        RawDiagram { tuples, loops: sum.loops.len() }.build(Orient::Prefer(&hints), true, None)
    }

    /// Closure of a braid on `strands` strands. Generator `i` (1-based) is
    /// a positive crossing between strands `i` and `i+1`, `-i` its inverse.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, KhError> {
        let mut cur: Vec<u32> = (1..=strands as u32).collect();
        let mut next = strands as u32 + 1;
        let mut tuples = Vec::with_capacity(word.len());
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i >= strands {
                return Err(KhError::MalformedPd(format!("generator {g} on {strands} strands")));
            }
            let (l, r) = (i - 1, i);
            let (el, er, fl, fr) = (cur[l], cur[r], next, next + 1);
            next += 2;
            tuples.push(if g > 0 { [er, fr, fl, el] } else { [el, er, fr, fl] });
            cur[l] = fl;
            cur[r] = fr;
        }
        // Close up: the top label of each strand becomes its bottom label.
        let mut rename: FxHashMap<u32, u32> = FxHashMap::default();
        let mut loops = 0;
        for (s, &top) in cur.iter().enumerate() {
            if top == s as u32 + 1 {
                loops += 1;
            } else {
                rename.insert(top, s as u32 + 1);
            }
        }
        for t in tuples.iter_mut() {
            *t = t.map(|e| rename.get(&e).copied().unwrap_or(e));
        }
        RawDiagram { tuples, loops }.build(Orient::Under, true, None)
    }

    /// The torus link T(p,q) as the closure of `(s_1 ... s_{p-1})^q`.
    pub fn torus(p: usize, q: usize) -> Result<Diagram, KhError> {
        let word: Vec<i32> = (0..q).flat_map(|_| 1..p as i32).collect();
        Diagram::braid_closure(p, &word)
    }

    /// Canonical PD text.
    pub fn to_pd_string(&self) -> String {
        let mut items: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("X({},{},{},{})", c.edges[0], c.edges[1], c.edges[2], c.edges[3]))
            .collect();
        if !self.loops.is_empty() {
            items.push(format!("U({})", self.loops.len()));
        }
        let mut s = items.join(";");
        if let Some(b) = self.basepoint {
            s.push_str(&format!("@{b}"));
        }
        s
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}
