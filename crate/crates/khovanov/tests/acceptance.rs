//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use khovanov::algebra::{CoeffRing, Integers, LaurentPoly, Ring, F2};
use khovanov::cube::{assemble, Theory};
use khovanov::diagram::table::{bundled_table, TableEntry};
use khovanov::diagram::Diagram;
use khovanov::homology::{homology, khovanov, reduce_and_homology, scan_khovanov, BigradedGroup};
use khovanov::lee::{lee_homology, s_invariant, Variant};
use khovanov::oracle::{graded_euler, jones_skein, les_dimension_check, mirror_check, parity_holds, reduced_factor_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Table {
    entries: Vec<(TableEntry, Diagram)>,
}

impl Table {
    fn load() -> Table {
        Table { entries: bundled_table().into_iter().map(|e| { let d = e.diagram().unwrap(); (e, d) }).collect() }
    }

    fn knots(&self, max: usize) -> impl Iterator<Item = &(TableEntry, Diagram)> {
        self.entries.iter().filter(move |(_, d)| d.component_count() == 1 && d.crossing_count() <= max)
    }

    fn all(&self, max: usize) -> impl Iterator<Item = &(TableEntry, Diagram)> {
        self.entries.iter().filter(move |(_, d)| d.crossing_count() <= max)
    }

    fn get(&self, name: &str) -> &Diagram {
        &self.entries.iter().find(|(e, _)| e.name == name).unwrap().1
    }
}

fn based(d: &Diagram) -> Diagram {
    d.clone().with_basepoint(Some(1)).unwrap()
}

fn euler_jones(t: &Table) -> Outcome {
    let start = Instant::now();
    for (e, d) in &t.entries {
        let g = khovanov(d, Theory::Ordinary, Ring::Q, false).map_err(err)?;
        ensure(graded_euler(&g) == jones_skein(d), || format!("{} disagrees", e.name))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), || format!("took {took:?}"))?;
    Ok(format!("{} diagrams in {:.1?}", t.entries.len(), took))
}

fn unknot_normalisation(_: &Table) -> Outcome {
    let u = Diagram::unlink(1);
    let g = khovanov(&u, Theory::Ordinary, Ring::F2, false).map_err(err)?;
    ensure(g.support() == vec![(0, -1), (0, 1)] && g.total_rank() == 2, || format!("unknot {g:?}"))?;
    let r = khovanov(&based(&u), Theory::Ordinary, Ring::F2, true).map_err(err)?;
    ensure(r.support() == vec![(0, 0)] && r.total_rank() == 1, || format!("reduced unknot {r:?}"))?;
    for k in 1..=4 {
        let g = khovanov(&Diagram::unlink(k), Theory::Ordinary, Ring::F2, false).map_err(err)?;
        ensure(g.poincare() == LaurentPoly::unknot().pow(k as u32), || format!("U({k})"))?;
    }
    Ok("U(1), reduced U(1), U(1..4)".into())
}

fn mirror_duality(t: &Table) -> Outcome {
    let mut n = 0;
    for (e, d) in t.knots(9) {
        for ring in [Ring::F2, Ring::Q] {
            ensure(mirror_check(d, ring).map_err(err)?, || format!("{} over {ring}", e.name))?;
        }
        n += 1;
    }
    Ok(format!("{n} knots over F2 and Q"))
}

fn reduced_factorisation(t: &Table) -> Outcome {
    let mut n = 0;
    for (e, d) in t.knots(9) {
        ensure(reduced_factor_check(d).map_err(err)?, || e.name.clone())?;
        n += 1;
    }
    Ok(format!("{n} knots"))
}

/// The table stores signatures with the positive trefoil at -2; the
/// diagonal carrying reduced homology is `j - 2i = -signature`.
fn alternating_thin(t: &Table) -> Outcome {
    let mut n = 0;
    for (e, d) in t.knots(9).filter(|(e, _)| e.alternating) {
        let g = khovanov(&based(d), Theory::Ordinary, Ring::F2, true).map_err(err)?;
        ensure(g.support().iter().all(|&(i, j)| j - 2 * i == -e.signature), || format!("{}: {:?}", e.name, g.support()))?;
        n += 1;
    }
    Ok(format!("{n} alternating knots"))
}

fn parity(t: &Table) -> Outcome {
    let mut n = 0;
    for (e, d) in t.entries.iter().filter(|(_, d)| d.component_count() > 1) {
        let g = khovanov(d, Theory::Ordinary, Ring::Z, false).map_err(err)?;
        ensure(parity_holds(&g, d.component_count()), || e.name.clone())?;
        n += 1;
    }
    Ok(format!("{n} links over Z"))
}

fn trefoil_torsion(t: &Table) -> Outcome {
    let d = t.get("3_1");
    let g = khovanov(d, Theory::Ordinary, Ring::Z, false).map_err(err)?;
    let torsion: Vec<_> = g.torsion.iter().collect();
    ensure(torsion.len() == 1 && g.torsion_count(3, 7, 2) == 1 && g.torsion[&(3, 7)].len() == 1, || format!("{:?}", g.torsion))?;
    let r = khovanov(&based(d), Theory::Ordinary, Ring::Z, true).map_err(err)?;
    ensure(!r.has_torsion(), || format!("reduced {:?}", r.torsion))?;
    Ok("one Z/2 at (3,7); reduced torsion-free".into())
}

fn torus_torsion(_: &Table) -> Outcome {
    let start = Instant::now();
    let d = Diagram::torus(5, 6).map_err(err)?;
    let g = scan_khovanov(&d, Ring::Z).map_err(err)?;
    let at = |p: u64| g.torsion.iter().filter(|(_, t)| t.keys().any(|k| k.0 == p)).map(|(k, _)| *k).collect::<Vec<_>>();
    let (three, five) = (at(3), at(5));
    ensure(!three.is_empty() && !five.is_empty(), || format!("torsion {:?}", g.torsion))?;
    Ok(format!("Z/3 at {three:?}, Z/5 at {five:?}, {:.1?}", start.elapsed()))
}

fn odd_theory(t: &Table) -> Outcome {
    let mut n = 0;
    for (e, d) in t.all(8) {
        let odd = assemble(d, Theory::Odd, &Integers, false).map_err(err)?;
        ensure(odd.check_d_squared(), || format!("{}: d^2 != 0", e.name))?;
        let mod2 = odd.map_ring(&F2, |v| F2.from_integer(v));
        let even = assemble(d, Theory::Ordinary, &F2, false).map_err(err)?;
        ensure(mod2.groups == even.groups, || format!("{}: generators differ", e.name))?;
        for i in even.groups.keys() {
            ensure(mod2.diff(*i) == even.diff(*i), || format!("{}: d^{i} differs mod 2", e.name))?;
        }
        n += 1;
    }
    let mut k = 0;
    for (e, d) in t.knots(8) {
        let full = khovanov(d, Theory::Odd, Ring::Q, false).map_err(err)?;
        let red = khovanov(&based(d), Theory::Odd, Ring::Q, true).map_err(err)?;
        let mut split = BigradedGroup::default();
        for (&(i, j), &r) in &red.free {
            split.add_free(i, j - 1, r);
            split.add_free(i, j + 1, r);
        }
        ensure(full == split, || format!("{}: unreduced odd is not two shifted copies", e.name))?;
        k += 1;
    }
    Ok(format!("(a),(c) on {n} diagrams; (b) on {k} knots"))
}

fn lee_degeneration(t: &Table) -> Outcome {
    for (e, d) in &t.entries {
        let h = lee_homology(d, Variant::Lee, Ring::Q).map_err(err)?;
        ensure(h.total_dim() == 1 << d.component_count(), || format!("{}: dimension {}", e.name, h.total_dim()))?;
        if d.component_count() == 1 {
            ensure(h.dims.keys().eq([0].iter()), || format!("{}: degrees {:?}", e.name, h.dims))?;
        }
    }
    Ok(format!("{} diagrams", t.entries.len()))
}

fn s_values(t: &Table) -> Outcome {
    let s = |d: &Diagram| s_invariant(d, Variant::Lee, Ring::Q).map_err(err);
    ensure(s(&Diagram::unlink(1))? == 0, || "unknot".into())?;
    let tre = t.get("3_1");
    let (a, b) = (s(tre)?, s(&tre.mirror())?);
    ensure(a.abs() == 2 && b == -a, || format!("trefoil {a}, mirror {b}"))?;
    ensure(s(t.get("4_1"))? == 0, || "figure-eight".into())?;
    let mut n = 0;
    for (e, d) in t.knots(9).filter(|(e, _)| e.alternating) {
        ensure(s(d)? == -e.signature, || format!("{}: s = {} against signature {}", e.name, s(d).unwrap_or(0), e.signature))?;
        n += 1;
    }
    for (p, q, want) in [(2, 5, 4), (3, 4, 6)] {
        let got = s(&Diagram::torus(p, q).map_err(err)?)?;
        ensure(got == want, || format!("T({p},{q}): {got}"))?;
    }
    Ok(format!("unknot, trefoil pair, figure-eight, {n} alternating, T(2,5), T(3,4)"))
}

fn les(t: &Table) -> Outcome {
    let mut n = 0;
    for (e, d) in t.all(7) {
        for c in 0..d.crossing_count() {
            ensure(les_dimension_check(d, c).map_err(err)?, || format!("{} crossing {c}", e.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} (diagram, crossing) pairs"))
}

fn reduction_soundness(_: &Table) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut n = 0;
    while n < 200 {
        let strands = rng.random_range(2..=4usize);
        let len = rng.random_range(1..=7usize);
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.random_range(1..strands as i32);
                if rng.random_bool(0.5) { g } else { -g }
            })
            .collect();
        let d = Diagram::braid_closure(strands, &word).map_err(err)?;
        let c = assemble(&d, Theory::Ordinary, &Integers, false).map_err(err)?;
        let plain = homology(&c).map_err(err)?;
        let reduced = reduce_and_homology(&c).map_err(err)?;
        ensure(plain == reduced, || format!("braid {strands} {word:?}"))?;
        n += 1;
    }
    Ok(format!("{n} random braid closures over Z"))
}

fn main() -> ExitCode {
    let table = Table::load();
    let criteria: [(&str, fn(&Table) -> Outcome); 13] = [
        ("euler characteristic equals Jones on the table", euler_jones),
        ("unknot and unlink normalisation", unknot_normalisation),
        ("mirror duality", mirror_duality),
        ("reduced/unreduced factorisation", reduced_factorisation),
        ("alternating knots are thin", alternating_thin),
        ("quantum parity of links", parity),
        ("trefoil integral torsion", trefoil_torsion),
        ("T(5,6) has Z/3 and Z/5", torus_torsion),
        ("odd theory", odd_theory),
        ("Lee degeneration", lee_degeneration),
        ("s-invariant", s_values),
        ("exact-sequence identities", les),
        ("elimination soundness", reduction_soundness),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run(&table);
        let took = start.elapsed();
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{took:.1?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{took:.1?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
