//! Khovanov homology by scanning the diagram one crossing at a time.
//!
//! The partial complex lives over the dotted cobordism category with
//! `h = t = 0`: objects are crossingless matchings of the current boundary
//! with a homological degree and a quantum shift. Neck cutting reduces every
//! cobordism between two matchings `S`, `T` to one disk per cycle of
//! `S ∪ T`, each dotted or not, so a morphism is a map from dot patterns
//! (bit masks over those cycles) to coefficients. After each crossing is
//! tensored in, closed circles are delooped and every isomorphism is
//! cancelled, which keeps the complex small. Once the boundary is empty the
//! result is an ordinary complex whose homology is the unreduced Khovanov
//! homology of the diagram.

use std::collections::BTreeMap;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::algebra::{CoeffRing, SparseMatrix};
use crate::cube::ChainComplex;
use crate::diagram::Diagram;
use crate::error::KhError;

/// Partner of each boundary position.
type Matching = Vec<u8>;
type Morph<E> = Vec<(u64, E)>;

const MAX_BOUNDARY: usize = 120;

/// Cycle index of every position for the union of two matchings on the
/// same points, numbered by least position.
fn cycle_ids(s: &[u8], t: &[u8]) -> (Vec<u8>, usize) {
    let mut id = vec![u8::MAX; s.len()];
    let mut k = 0;
    for start in 0..s.len() {
        if id[start] != u8::MAX {
            continue;
        }
        let mut p = start;
        loop {
            let q = s[p] as usize;
            id[p] = k as u8;
            id[q] = k as u8;
            p = t[q] as usize;
            if p == start {
                break;
            }
        }
        k += 1;
    }
    (id, k)
}

/// One connected piece of a glued surface.
#[derive(Clone, Debug)]
struct Comp {
    left: u64,
    right: u64,
    out: u64,
    genus: u32,
}

/// How two disk families glue: `n_left + n_right` pieces joined along
/// intervals, each output cycle bounding one piece.
#[derive(Clone, Debug)]
struct Plan {
    comps: Vec<Comp>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Plan {
    fn build(n_left: usize, n_right: usize, joins: &[(usize, usize)], outputs: &[usize]) -> Plan {
        let n = n_left + n_right;
        let mut parent: Vec<usize> = (0..n).collect();
        for &(a, b) in joins {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut slot: FxHashMap<usize, usize> = FxHashMap::default();
        let mut comps: Vec<Comp> = Vec::new();
        let mut chi: Vec<i64> = Vec::new();
        for p in 0..n {
            let r = find(&mut parent, p);
            let k = *slot.entry(r).or_insert_with(|| {
                comps.push(Comp { left: 0, right: 0, out: 0, genus: 0 });
                chi.push(0);
                comps.len() - 1
            });
            if p < n_left {
                comps[k].left |= 1 << p;
            } else {
                comps[k].right |= 1 << (p - n_left);
            }
            chi[k] += 1;
        }
        for &(a, _) in joins {
            let r = find(&mut parent, a);
            chi[slot[&r]] -= 1;
        }
        for (c, &p) in outputs.iter().enumerate() {
            let r = find(&mut parent, p);
            comps[slot[&r]].out |= 1 << c;
        }
        for (k, comp) in comps.iter_mut().enumerate() {
            let twice_genus = 2 - comp.out.count_ones() as i64 - chi[k];
            debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
            comp.genus = (twice_genus / 2) as u32;
        }
        Plan { comps }
    }

    /// Glue every term of `a` (left) with every term of `b` (right), times
    /// `scale`, into `acc`. A piece with `m` dots and genus `g` vanishes
    /// once `m + g > 1`; at `m + g = 1` it becomes `2^g` dotted disks on all
    /// its boundary cycles; at 0 it is the sum over leaving one of them
    /// undotted.
    fn apply<R: CoeffRing>(&self, ring: &R, a: &Morph<R::Elem>, b: &Morph<R::Elem>, scale: &R::Elem, acc: &mut FxHashMap<u64, R::Elem>) {
        let mut splits: Vec<u64> = Vec::new();
        let mut masks: Vec<u64> = Vec::new();
        for (ma, ca) in a {
            'term: for (mb, cb) in b {
                let mut coef = ring.mul(&ring.mul(ca, cb), scale);
                let mut base = 0u64;
                splits.clear();
                for c in &self.comps {
                    let m = (ma & c.left).count_ones() + (mb & c.right).count_ones() + c.genus;
                    match m {
                        0 => splits.push(c.out),
                        1 => {
                            base |= c.out;
                            if c.genus > 0 {
                                coef = ring.mul(&coef, &ring.from_i64(1 << c.genus));
                            }
                        }
                        _ => continue 'term,
                    }
                }
                if ring.is_zero(&coef) {
                    continue;
                }
                masks.clear();
                masks.push(base);
                for &o in &splits {
                    let prev = std::mem::take(&mut masks);
                    for m in prev {
                        let mut bits = o;
                        while bits != 0 {
                            let bit = bits & bits.wrapping_neg();
                            masks.push(m | (o & !bit));
                            bits &= bits - 1;
                        }
                    }
                }
                for &m in &masks {
                    match acc.get_mut(&m) {
                        Some(v) => *v = ring.add(v, &coef),
                        None => {
                            acc.insert(m, coef.clone());
                        }
                    }
                }
            }
        }
    }
}

fn collect<R: CoeffRing>(ring: &R, acc: FxHashMap<u64, R::Elem>) -> Morph<R::Elem> {
    let mut v: Morph<R::Elem> = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
    v.sort_unstable_by_key(|t| t.0);
    v
}

#[derive(Clone, Copy, Debug)]
struct Obj {
    m: u32,
    h: i32,
    s: i32,
}

/// The partial complex.
struct Scan<R: CoeffRing> {
    ring: R,
    boundary: Vec<u32>,
    matchings: Vec<Matching>,
    matching_index: FxHashMap<Matching, u32>,
    objs: Vec<Obj>,
    out: Vec<FxHashMap<u32, Morph<R::Elem>>>,
    inn: Vec<FxHashSet<u32>>,
    alive: Vec<bool>,
    compose_plans: FxHashMap<(u32, u32, u32), Plan>,
}

/// Result of gluing a matching to a crossing smoothing.
struct Glued {
    m: Matching,
    /// A combined point on each closed circle.
    loops: Vec<usize>,
}

/// Geometry of adding one crossing: points `0..old` are old boundary
/// positions, `old..old + 4` the crossing slots.
struct Join {
    old: usize,
    twin: Vec<Option<usize>>,
    new_pos: Vec<Option<u8>>,
    new_points: Vec<usize>,
    new_boundary: Vec<u32>,
}

const SMOOTHINGS: [[u8; 4]; 2] = [[1, 0, 3, 2], [3, 2, 1, 0]];

impl Join {
    fn new(boundary: &[u32], edges: [u32; 4]) -> Join {
        let old = boundary.len();
        let mut labels: Vec<u32> = boundary.to_vec();
        labels.extend_from_slice(&edges);
        let mut by_label: FxHashMap<u32, Vec<usize>> = FxHashMap::default();
        for (x, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(x);
        }
        let mut twin = vec![None; old + 4];
        let mut fresh: Vec<(u32, usize)> = Vec::new();
        for (l, xs) in &by_label {
            match xs.as_slice() {
                [x, y] => {
                    twin[*x] = Some(*y);
                    twin[*y] = Some(*x);
                }
                [x] => fresh.push((*l, *x)),
                _ => unreachable!("edge label seen more than twice"),
            }
        }
        fresh.sort_unstable();
        let mut new_pos = vec![None; old + 4];
        for (k, &(_, x)) in fresh.iter().enumerate() {
            new_pos[x] = Some(k as u8);
        }
        Join {
            old,
            twin,
            new_pos,
            new_points: fresh.iter().map(|t| t.1).collect(),
            new_boundary: fresh.iter().map(|t| t.0).collect(),
        }
    }

    fn arc(&self, s: &[u8], sigma: &[u8; 4], x: usize) -> usize {
        if x < self.old {
            s[x] as usize
        } else {
            self.old + sigma[x - self.old] as usize
        }
    }

    fn glue(&self, s: &[u8], sigma: &[u8; 4]) -> Glued {
        let total = self.old + 4;
        let mut seen = vec![false; total];
        let mut m = vec![0u8; self.new_points.len()];
        for (np, &start) in self.new_points.iter().enumerate() {
            if seen[start] {
                continue;
            }
            let mut x = start;
            loop {
                let y = self.arc(s, sigma, x);
                seen[x] = true;
                seen[y] = true;
                if let Some(np2) = self.new_pos[y] {
                    m[np] = np2;
                    m[np2 as usize] = np as u8;
                    break;
                }
                x = self.twin[y].expect("interior point");
            }
        }
        let mut loops = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut x = start;
            loop {
                let y = self.arc(s, sigma, x);
                seen[x] = true;
                seen[y] = true;
                x = self.twin[y].expect("interior point");
                if x == start {
                    break;
                }
            }
            loops.push(start);
        }
        Glued { m, loops }
    }

    /// Plan for the tensor product of a cobordism `S -> T` of the old
    /// tangle with one `sigma -> tau` at the crossing. Output cycles are
    /// those of `S' ∪ T'`, then the circles of `S'`, then those of `T'`.
    fn tensor_plan(&self, s: &[u8], t: &[u8], sigma: &[u8; 4], tau: &[u8; 4], gs: &Glued, gt: &Glued) -> (Plan, usize) {
        let (cl, nl) = cycle_ids(s, t);
        let (cr, nr) = cycle_ids(sigma, tau);
        let piece = |x: usize| if x < self.old { cl[x] as usize } else { nl + cr[x - self.old] as usize };
        let mut joins = Vec::new();
        for (x, tw) in self.twin.iter().enumerate() {
            if let Some(y) = *tw {
                if x < y {
                    joins.push((piece(x), piece(y)));
                }
            }
        }
        let (co, no) = cycle_ids(&gs.m, &gt.m);
        let mut outputs = vec![usize::MAX; no];
        for (p, &c) in co.iter().enumerate() {
            if outputs[c as usize] == usize::MAX {
                outputs[c as usize] = piece(self.new_points[p]);
            }
        }
        outputs.extend(gs.loops.iter().map(|&x| piece(x)));
        outputs.extend(gt.loops.iter().map(|&x| piece(x)));
        (Plan::build(nl, nr, &joins, &outputs), no)
    }
}

/// Keep the terms compatible with the chosen circle labels and drop the
/// circle bits. A set label bit means the circle carries `1` (shift +1).
/// Leaving the source, a `1` circle needs a dot; entering the target, a
/// `1` circle needs none.
fn deloop<E: Clone>(m: &Morph<E>, no: usize, ls: usize, src: u32, lt: usize, dst: u32) -> Morph<E> {
    let low = if no == 64 { u64::MAX } else { (1u64 << no) - 1 };
    let mut want = 0u64;
    let mut care = 0u64;
    for k in 0..ls {
        care |= 1 << (no + k);
        if src >> k & 1 == 1 {
            want |= 1 << (no + k);
        }
    }
    for k in 0..lt {
        care |= 1 << (no + ls + k);
        if dst >> k & 1 == 0 {
            want |= 1 << (no + ls + k);
        }
    }
    m.iter().filter(|(mask, _)| mask & care == want).map(|(mask, c)| (mask & low, c.clone())).collect()
}

fn label_shift(label: u32, loops: usize) -> i32 {
    2 * label.count_ones() as i32 - loops as i32
}

impl<R: CoeffRing> Scan<R> {
    fn start(ring: R, circles: usize) -> Scan<R> {
        let mut sc = Scan {
            ring,
            boundary: Vec::new(),
            matchings: vec![Vec::new()],
            matching_index: FxHashMap::from_iter([(Vec::new(), 0)]),
            objs: Vec::new(),
            out: Vec::new(),
            inn: Vec::new(),
            alive: Vec::new(),
            compose_plans: FxHashMap::default(),
        };
        for label in 0..1u32 << circles {
            sc.push(Obj { m: 0, h: 0, s: label_shift(label, circles) });
        }
        sc
    }

    fn push(&mut self, o: Obj) -> u32 {
        self.objs.push(o);
        self.out.push(FxHashMap::default());
        self.inn.push(FxHashSet::default());
        self.alive.push(true);
        (self.objs.len() - 1) as u32
    }

    fn intern(&mut self, m: Matching) -> u32 {
        if let Some(&k) = self.matching_index.get(&m) {
            return k;
        }
        let k = self.matchings.len() as u32;
        self.matchings.push(m.clone());
        self.matching_index.insert(m, k);
        k
    }

    fn add_to(&mut self, x: u32, y: u32, m: Morph<R::Elem>) {
        if m.is_empty() {
            return;
        }
        let ring = self.ring.clone();
        let slot = self.out[x as usize].entry(y).or_default();
        if slot.is_empty() {
            *slot = m;
        } else {
            let mut acc: FxHashMap<u64, R::Elem> = slot.drain(..).collect();
            for (k, c) in m {
                match acc.get_mut(&k) {
                    Some(v) => *v = ring.add(v, &c),
                    None => {
                        acc.insert(k, c);
                    }
                }
            }
            *slot = collect(&ring, acc);
        }
        if self.out[x as usize][&y].is_empty() {
            self.out[x as usize].remove(&y);
            self.inn[y as usize].remove(&x);
        } else {
            self.inn[y as usize].insert(x);
        }
    }

    /// Tensor with the crossing `edges` and deloop.
    fn add_crossing(&mut self, edges: [u32; 4]) -> Result<(), KhError> {
        let join = Join::new(&self.boundary, edges);
        if join.new_boundary.len() > MAX_BOUNDARY {
            return Err(KhError::Unsupported(format!("scan boundary of {} points", join.new_boundary.len())));
        }
        let ring = self.ring.clone();
        let unit: Morph<R::Elem> = vec![(0, ring.one())];
        let neg_unit: Morph<R::Elem> = vec![(0, ring.neg(&ring.one()))];
        let old_live: Vec<u32> = (0..self.objs.len() as u32).filter(|&x| self.alive[x as usize]).collect();
        let old_m: Vec<Matching> = self.matchings.clone();

        let mut next = Scan {
            ring: ring.clone(),
            boundary: join.new_boundary.clone(),
            matchings: Vec::new(),
            matching_index: FxHashMap::default(),
            objs: Vec::new(),
            out: Vec::new(),
            inn: Vec::new(),
            alive: Vec::new(),
            compose_plans: FxHashMap::default(),
        };
        // first new object of each (old object, smoothing), and its gluing
        let mut first: FxHashMap<(u32, usize), (u32, Glued)> = FxHashMap::default();
        for &x in &old_live {
            let o = self.objs[x as usize];
            for (sm, sigma) in SMOOTHINGS.iter().enumerate() {
                let g = join.glue(&old_m[o.m as usize], sigma);
                let mid = next.intern(g.m.clone());
                let l = g.loops.len();
                let base = next.objs.len() as u32;
                for label in 0..1u32 << l {
                    next.push(Obj { m: mid, h: o.h + sm as i32, s: o.s + sm as i32 + label_shift(label, l) });
                }
                first.insert((x, sm), (base, g));
            }
        }
        let mut plans: FxHashMap<(u32, u32, usize, usize), (Plan, usize)> = FxHashMap::default();
        let mut emit = |next: &mut Scan<R>, src: (u32, usize), dst: (u32, usize), sm: (usize, usize), left: &Morph<R::Elem>, right: &Morph<R::Elem>, ms: u32, mt: u32| {
            let (bs, gs) = &first[&src];
            let (bt, gt) = &first[&dst];
            let key = (ms, mt, sm.0, sm.1);
            let (plan, no) = plans.entry(key).or_insert_with(|| {
                join.tensor_plan(&old_m[ms as usize], &old_m[mt as usize], &SMOOTHINGS[sm.0], &SMOOTHINGS[sm.1], gs, gt)
            });
            let mut acc = FxHashMap::default();
            plan.apply(&ring, left, right, &ring.one(), &mut acc);
            let full = collect(&ring, acc);
            let (ls, lt) = (gs.loops.len(), gt.loops.len());
            for a in 0..1u32 << ls {
                for b in 0..1u32 << lt {
                    let part = deloop(&full, *no, ls, a, lt, b);
                    next.add_to(bs + a, bt + b, part);
                }
            }
        };
        for &x in &old_live {
            let o = self.objs[x as usize];
            let saddle = if o.h % 2 == 0 { &unit } else { &neg_unit };
            emit(&mut next, (x, 0), (x, 1), (0, 1), &unit, saddle, o.m, o.m);
            let targets: Vec<(u32, Morph<R::Elem>)> = self.out[x as usize].iter().map(|(y, m)| (*y, m.clone())).collect();
            for (y, m) in targets {
                let mt = self.objs[y as usize].m;
                for sm in 0..2 {
                    emit(&mut next, (x, sm), (y, sm), (sm, sm), &m, &unit, o.m, mt);
                }
            }
        }
        *self = next;
        Ok(())
    }

    fn compose(&mut self, z: u32, x: u32, w: u32, a: &Morph<R::Elem>, b: &Morph<R::Elem>, scale: &R::Elem) -> Morph<R::Elem> {
        let key = (self.objs[z as usize].m, self.objs[x as usize].m, self.objs[w as usize].m);
        let ms = &self.matchings;
        let plan = self.compose_plans.entry(key).or_insert_with(|| {
            let (zm, sm, wm) = (&ms[key.0 as usize], &ms[key.1 as usize], &ms[key.2 as usize]);
            let (c1, n1) = cycle_ids(zm, sm);
            let (c2, n2) = cycle_ids(sm, wm);
            let (c3, n3) = cycle_ids(zm, wm);
            let joins: Vec<(usize, usize)> =
                (0..sm.len()).filter(|&p| p < sm[p] as usize).map(|p| (c1[p] as usize, n1 + c2[p] as usize)).collect();
            let mut outputs = vec![usize::MAX; n3];
            for p in 0..zm.len() {
                if outputs[c3[p] as usize] == usize::MAX {
                    outputs[c3[p] as usize] = c1[p] as usize;
                }
            }
            let _ = n2;
            Plan::build(n1, n2, &joins, &outputs)
        });
        let mut acc = FxHashMap::default();
        plan.apply(&self.ring, a, b, scale, &mut acc);
        collect(&self.ring, acc)
    }

    fn pivot(&self, x: u32, y: u32, m: &Morph<R::Elem>) -> bool {
        let (ox, oy) = (self.objs[x as usize], self.objs[y as usize]);
        ox.m == oy.m && ox.s == oy.s && m.len() == 1 && m[0].0 == 0 && self.ring.is_unit(&m[0].1)
    }

    /// Cancel isomorphisms, cheapest fill-in first.
    fn eliminate(&mut self) {
        let n = self.objs.len();
        let mut threshold = 0usize;
        loop {
            let mut progress = false;
            for x in 0..n as u32 {
                if !self.alive[x as usize] {
                    continue;
                }
                let mut best: Option<(usize, u32)> = None;
                for (&y, m) in &self.out[x as usize] {
                    if !self.pivot(x, y, m) {
                        continue;
                    }
                    let cost = (self.inn[y as usize].len() - 1) * (self.out[x as usize].len() - 1);
                    if best.is_none_or(|(bc, by)| (cost, y) < (bc, by)) {
                        best = Some((cost, y));
                    }
                }
                if let Some((cost, y)) = best {
                    if cost <= threshold {
                        self.cancel(x, y);
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
    }

    fn cancel(&mut self, x: u32, y: u32) {
        let ring = self.ring.clone();
        let u = self.out[x as usize][&y][0].1.clone();
        let f = ring.neg(&ring.inv(&u).expect("unit pivot"));
        let xs: Vec<(u32, Morph<R::Elem>)> =
            self.out[x as usize].iter().filter(|(w, _)| **w != y).map(|(w, m)| (*w, m.clone())).collect();
        let zs: Vec<u32> = self.inn[y as usize].iter().copied().filter(|&z| z != x).collect();
        for z in zs {
            let a = self.out[z as usize][&y].clone();
            for (w, b) in &xs {
                let c = self.compose(z, x, *w, &a, b, &f);
                self.add_to(z, *w, c);
            }
        }
        for v in [x, y] {
            let outs: Vec<u32> = self.out[v as usize].keys().copied().collect();
            for w in outs {
                self.inn[w as usize].remove(&v);
            }
            let ins: Vec<u32> = self.inn[v as usize].iter().copied().collect();
            for z in ins {
                self.out[z as usize].remove(&v);
            }
            self.out[v as usize].clear();
            self.inn[v as usize].clear();
            self.alive[v as usize] = false;
        }
    }

    fn finish(&self, n_minus: usize, n_plus: usize) -> ChainComplex<R> {
        let shift_i = -(n_minus as i32);
        let shift_j = n_plus as i32 - 2 * n_minus as i32;
        let mut out = ChainComplex::new(self.ring.clone(), n_minus, n_plus, false);
        let mut index = vec![u32::MAX; self.objs.len()];
        for (v, o) in self.objs.iter().enumerate() {
            if self.alive[v] {
                let g = out.groups.entry(o.h + shift_i).or_default();
                index[v] = g.len() as u32;
                g.push(o.s + shift_j);
            }
        }
        let mut cols: BTreeMap<i32, Vec<Vec<(u32, R::Elem)>>> = BTreeMap::new();
        for (v, o) in self.objs.iter().enumerate() {
            if !self.alive[v] {
                continue;
            }
            let mut col: Vec<(u32, R::Elem)> =
                self.out[v].iter().map(|(w, m)| (index[*w as usize], m[0].1.clone())).collect();
            col.sort_unstable_by_key(|e| e.0);
            cols.entry(o.h + shift_i).or_default().push(col);
        }
        for (i, cs) in cols {
            let m = SparseMatrix::from_columns(out.rank(i + 1), cs);
            if !m.is_zero() {
                out.diffs.insert(i, m);
            }
        }
        out
    }
}

/// Order keeping the boundary short: each step takes the crossing that
/// leaves the fewest boundary points.
pub fn scan_order(d: &Diagram) -> Vec<usize> {
    let cr = d.crossings();
    let mut taken = vec![false; cr.len()];
    let mut boundary: FxHashSet<u32> = FxHashSet::default();
    let mut order = Vec::with_capacity(cr.len());
    for _ in 0..cr.len() {
        let after = |k: usize| {
            let mut b = boundary.clone();
            for e in cr[k].edges {
                if !b.remove(&e) {
                    b.insert(e);
                }
            }
            b
        };
        let k = (0..cr.len()).filter(|&k| !taken[k]).min_by_key(|&k| (after(k).len(), k)).unwrap();
        boundary = after(k);
        taken[k] = true;
        order.push(k);
    }
    order
}

/// A complex over `ring` homotopy equivalent to the unreduced Khovanov
/// complex, built without the cube of resolutions.
pub fn scan_complex<R: CoeffRing>(d: &Diagram, ring: &R) -> Result<ChainComplex<R>, KhError> {
    let mut sc = Scan::start(ring.clone(), d.loops().len());
    for k in scan_order(d) {
        sc.add_crossing(d.crossings()[k].edges)?;
        sc.eliminate();
    }
    debug_assert!(sc.boundary.is_empty());
    Ok(sc.finish(d.n_minus(), d.n_plus()))
}
