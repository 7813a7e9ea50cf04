//! Homology does not see the choice of diagram, and elimination does not
//! change it.

use khovanov::algebra::{Integers, Ring};
use khovanov::cube::{assemble, Theory};
use khovanov::diagram::table::bundled_table;
use khovanov::diagram::Diagram;
use khovanov::homology::{gauss_eliminate, homology, khovanov, reduce_and_homology, universal_coefficient_check};

fn table(name: &str) -> Diagram {
    bundled_table().into_iter().find(|e| e.name == name).unwrap().diagram().unwrap()
}

fn kh_z(d: &Diagram) -> khovanov::homology::BigradedGroup {
    khovanov(d, Theory::Ordinary, Ring::Z, false).unwrap()
}

#[test]
fn different_diagrams_same_homology() {
    let kink = Diagram::parse_pd("X(1,1,2,2)").unwrap();
    let negative_kink = Diagram::parse_pd("X(1,2,2,1)").unwrap();
    let trefoil = table("3_1");
    let pairs = [
        (trefoil.clone(), Diagram::braid_closure(2, &[1, 1, 1]).unwrap()),
        (trefoil.clone(), trefoil.connected_sum(&kink).unwrap()),
        (trefoil.clone(), trefoil.connected_sum(&negative_kink).unwrap()),
        (table("4_1"), Diagram::braid_closure(3, &[1, -2, 1, -2]).unwrap()),
        (table("5_1"), Diagram::torus(2, 5).unwrap()),
        (table("8_19"), Diagram::torus(3, 4).unwrap()),
        (Diagram::unlink(1), kink.clone()),
        (Diagram::unlink(2), Diagram::braid_closure(2, &[1, -1]).unwrap()),
    ];
    for (k, (a, b)) in pairs.iter().enumerate() {
        assert_eq!(kh_z(a), kh_z(b), "pair {k}");
    }
}

#[test]
fn elimination_is_exact_on_table() {
    for e in bundled_table() {
        let d = e.diagram().unwrap();
        if d.crossing_count() > 8 {
            continue;
        }
        let c = assemble(&d, Theory::Ordinary, &Integers, false).unwrap();
        assert_eq!(homology(&c).unwrap(), reduce_and_homology(&c).unwrap(), "{}", e.name);
        assert!(universal_coefficient_check(&d).unwrap(), "{}", e.name);
    }
}

#[test]
fn trefoil_reduces_to_six_generators() {
    let c = assemble(&table("3_1"), Theory::Ordinary, &khovanov::algebra::F2, false).unwrap();
    let (small, trace) = gauss_eliminate(&c);
    assert_eq!(c.generator_count(), 30);
    assert!(small.generator_count() <= 6);
    assert_eq!(trace.steps * 2, 30 - small.generator_count());
    assert!(trace.sizes_after.iter().all(|(i, n)| *n <= trace.sizes_before[i]));
    assert_eq!(homology(&small).unwrap(), homology(&c).unwrap());
}

/// Over Z the mirror has dual free ranks and torsion one degree over:
/// `T^{i,j}(mirror) = T^{1-i,-j}`.
#[test]
fn integral_mirror_duality() {
    for e in bundled_table().into_iter().filter(|e| !e.name.starts_with('L')).take(40) {
        let d = e.diagram().unwrap();
        let (g, m) = (kh_z(&d), kh_z(&d.mirror()));
        assert_eq!(m.free, g.mirror_free().free, "{}", e.name);
        let moved: std::collections::BTreeMap<_, _> = g.torsion.iter().map(|(&(i, j), t)| ((1 - i, -j), t.clone())).collect();
        assert_eq!(m.torsion, moved, "{}", e.name);
    }
}
