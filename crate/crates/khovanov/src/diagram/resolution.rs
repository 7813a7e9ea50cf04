//! Complete resolutions of a diagram.

use super::Diagram;

/// Whether to record the arrows of the odd theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolveMode {
    Ordinary,
    Odd,
}

/// The circles of one resolution. Bit `k` of `subset` set means crossing `k`
/// takes its 1-smoothing. Circles are numbered by their lowest edge label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub subset: u64,
    pub circle_count: usize,
    /// Indexed by edge label; entry 0 is unused.
    pub circle_of_edge: Vec<u16>,
    /// Per crossing, the arrow from the arc of edge `a` to the arc of edge
    /// `c` as (tail circle, head circle). Empty in ordinary mode.
    pub arrows: Vec<(u16, u16)>,
}

impl Resolution {
    /// Edge labels on each circle, ascending.
    pub fn circles(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.circle_count];
        for (e, &c) in self.circle_of_edge.iter().enumerate().skip(1) {
            out[c as usize].push(e as u32);
        }
        out
    }
}

pub fn resolve(d: &Diagram, subset: u64, mode: ResolveMode) -> Resolution {
    let e = d.edge_count() as usize;
    let mut parent: Vec<u32> = (0..=e as u32).collect();
    fn find(p: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        let mut y = x;
        while p[y as usize] != r {
            let n = p[y as usize];
            p[y as usize] = r;
            y = n;
        }
        r
    }
    let union = |p: &mut Vec<u32>, x: u32, y: u32| {
        let (a, b) = (find(p, x), find(p, y));
        // Keep the smaller label as root so circles sort by lowest edge.
        if a < b {
            p[b as usize] = a;
        } else if b < a {
            p[a as usize] = b;
        }
    };
    for (k, c) in d.crossings().iter().enumerate() {
        let [a, b, cc, dd] = c.edges;
        if subset >> k & 1 == 0 {
            union(&mut parent, a, b);
            union(&mut parent, cc, dd);
        } else {
            union(&mut parent, a, dd);
            union(&mut parent, b, cc);
        }
    }
    let mut number = vec![u16::MAX; e + 1];
    let mut circle_of_edge = vec![0u16; e + 1];
    let mut count = 0u16;
    for x in 1..=e as u32 {
        let r = find(&mut parent, x) as usize;
        if number[r] == u16::MAX {
            number[r] = count;
            count += 1;
        }
        circle_of_edge[x as usize] = number[r];
    }
    let arrows = match mode {
        ResolveMode::Ordinary => Vec::new(),
        ResolveMode::Odd => d
            .crossings()
            .iter()
            .map(|c| (circle_of_edge[c.edges[0] as usize], circle_of_edge[c.edges[2] as usize]))
            .collect(),
    };
    Resolution { subset, circle_count: count as usize, circle_of_edge, arrows }
}
