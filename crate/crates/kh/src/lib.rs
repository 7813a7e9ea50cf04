//! Job model and report formats behind the `kh` binary.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use khovanov::algebra::Ring;
use khovanov::cube::Theory;
use khovanov::diagram::table::parse_table;
use khovanov::diagram::Diagram;
use khovanov::homology::BigradedGroup;
use serde::{Deserialize, Serialize};

/// A named input diagram.
#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub pd: String,
}

impl Input {
    pub fn diagram(&self, basepoint: Option<u32>, max_crossings: usize) -> Result<Diagram> {
        let d = Diagram::parse_pd(&self.pd)?;
        if d.crossing_count() > max_crossings {
            bail!("{} crossings is above --max-crossings {}", d.crossing_count(), max_crossings);
        }
        match basepoint {
            Some(b) => Ok(d.with_basepoint(Some(b))?),
            None => Ok(d),
        }
    }
}

/// Inputs from a PD string or a table file, in input order.
pub fn load_inputs(pd: Option<&str>, table: Option<&str>) -> Result<Vec<Input>> {
    match (pd, table) {
        (Some(p), None) => Ok(vec![Input { name: "pd".into(), pd: p.into() }]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let rows = parse_table(&text)?;
            Ok(rows.into_iter().map(|r| Input { name: r.name, pd: r.pd }).collect())
        }
        _ => bail!("give exactly one of --pd and --table"),
    }
}

/// Provenance block preceding each diagram's entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub diagram: String,
    pub theory: String,
    pub ring: String,
    pub reduced: bool,
    pub n_minus: usize,
    pub n_plus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub diagram: String,
    pub i: i32,
    pub j: i32,
    pub rank: usize,
    /// `(prime, power, multiplicity)`.
    pub torsion: Vec<(u64, u32, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Line {
    Metadata { metadata: Metadata },
    Entry(Entry),
}

pub fn entries(name: &str, g: &BigradedGroup) -> Vec<Entry> {
    g.support()
        .into_iter()
        .map(|(i, j)| Entry {
            diagram: name.to_string(),
            i,
            j,
            rank: g.rank(i, j),
            torsion: g.torsion.get(&(i, j)).map_or(Vec::new(), |t| t.iter().map(|(&(p, e), &m)| (p, e, m)).collect()),
        })
        .collect()
}

pub fn to_json_lines(meta: &Metadata, g: &BigradedGroup) -> String {
    let mut s = serde_json::to_string(&Line::Metadata { metadata: meta.clone() }).expect("serializable");
    s.push('\n');
    for e in entries(&meta.diagram, g) {
        s.push_str(&serde_json::to_string(&Line::Entry(e)).expect("serializable"));
        s.push('\n');
    }
    s
}

/// Read json-lines output back into one group per diagram.
pub fn parse_json_lines(text: &str) -> Result<Vec<(Metadata, BigradedGroup)>> {
    let mut out: Vec<(Metadata, BigradedGroup)> = Vec::new();
    for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let parsed: Line = serde_json::from_str(line).with_context(|| format!("line {}", n + 1))?;
        match parsed {
            Line::Metadata { metadata } => out.push((metadata, BigradedGroup::default())),
            Line::Entry(e) => {
                let Some((meta, g)) = out.last_mut() else { bail!("line {}: entry before metadata", n + 1) };
                if meta.diagram != e.diagram {
                    bail!("line {}: entry for {} inside block of {}", n + 1, e.diagram, meta.diagram);
                }
                g.add_free(e.i, e.j, e.rank);
                for (p, k, m) in e.torsion {
                    g.add_torsion(e.i, e.j, p, k, m);
                }
            }
        }
    }
    Ok(out)
}

fn ring_letter(ring: Ring) -> String {
    match ring {
        Ring::F2 => "F2".into(),
        Ring::Fp(p) => format!("F{p}"),
        Ring::Q => "Q".into(),
        Ring::Z => "Z".into(),
    }
}

/// One line per nonzero bidegree, e.g. `  3   7  Z/2`.
pub fn to_text(meta: &Metadata, g: &BigradedGroup, ring: Ring) -> String {
    let mut s = format!(
        "{}: theory {} over {}{} (n- = {}, n+ = {})\n",
        meta.diagram,
        meta.theory,
        meta.ring,
        if meta.reduced { ", reduced" } else { "" },
        meta.n_minus,
        meta.n_plus
    );
    if g.is_zero() {
        s.push_str("  zero\n");
    }
    for e in entries(&meta.diagram, g) {
        let mut parts = Vec::new();
        if e.rank > 0 {
            parts.push(if e.rank == 1 { ring_letter(ring) } else { format!("{}^{}", ring_letter(ring), e.rank) });
        }
        for (p, k, m) in &e.torsion {
            let order = if *k == 1 { format!("Z/{p}") } else { format!("Z/{p}^{k}") };
            parts.push(if *m == 1 { order } else { format!("({order})^{m}") });
        }
        let _ = writeln!(s, "  {:>3} {:>4}  {}", e.i, e.j, parts.join(" + "));
    }
    s
}

pub fn metadata(name: &str, d: &Diagram, theory: Theory, ring: Ring, reduced: bool) -> Metadata {
    Metadata {
        diagram: name.to_string(),
        theory: theory.to_string(),
        ring: ring.to_string(),
        reduced,
        n_minus: d.n_minus(),
        n_plus: d.n_plus(),
    }
}
