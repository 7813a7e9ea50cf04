use super::*;
use crate::algebra::{Integers, Rationals, SparseMatrix};
use crate::diagram::table::bundled_table;

const TREFOIL: &str = "X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)";

fn table(g: &BigradedGroup) -> Vec<(i32, i32, usize)> {
    g.free.iter().map(|(&(i, j), &r)| (i, j, r)).collect()
}

#[test]
fn trefoil_over_q_and_z() {
    let d = Diagram::parse_pd(TREFOIL).unwrap();
    let q = khovanov(&d, Theory::Ordinary, Ring::Q, false).unwrap();
    assert_eq!(table(&q), vec![(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]);
    let z = khovanov(&d, Theory::Ordinary, Ring::Z, false).unwrap();
    assert_eq!(z.free, q.free);
    assert_eq!(z.torsion.len(), 1);
    assert_eq!(z.torsion[&(3, 7)], BTreeMap::from([((2, 1), 1)]));
    assert!(universal_coefficient_check(&d).unwrap());
    let r = khovanov(&d.clone().with_basepoint(Some(1)).unwrap(), Theory::Ordinary, Ring::Z, true).unwrap();
    assert_eq!(table(&r), vec![(0, 2, 1), (2, 6, 1), (3, 8, 1)]);
    assert!(!r.has_torsion());
}

#[test]
fn unknot_and_unlink() {
    let u = khovanov(&Diagram::unlink(1), Theory::Ordinary, Ring::F2, false).unwrap();
    assert_eq!(table(&u), vec![(0, -1, 1), (0, 1, 1)]);
    let u2 = khovanov(&Diagram::unlink(2), Theory::Ordinary, Ring::F2, false).unwrap();
    assert_eq!(table(&u2), vec![(0, -2, 1), (0, 0, 2), (0, 2, 1)]);
    let kink = khovanov(&Diagram::parse_pd("X(1,2,2,1)").unwrap(), Theory::Ordinary, Ring::Z, false).unwrap();
    assert_eq!(kink, khovanov(&Diagram::unlink(1), Theory::Ordinary, Ring::Z, false).unwrap());
}

#[test]
fn figure_eight_reduced_is_thin() {
    let e = bundled_table().into_iter().find(|e| e.name == "4_1").unwrap();
    let d = e.diagram().unwrap().with_basepoint(Some(1)).unwrap();
    let r = khovanov(&d, Theory::Ordinary, Ring::F2, true).unwrap();
    assert_eq!(r.total_rank(), 5);
    assert!(r.free.keys().all(|&(i, j)| j - 2 * i == 0));
}

#[test]
fn mirror_duality_for_trefoil() {
    let d = Diagram::parse_pd(TREFOIL).unwrap();
    let a = khovanov(&d, Theory::Ordinary, Ring::Z, false).unwrap();
    let b = khovanov(&d.mirror(), Theory::Ordinary, Ring::Z, false).unwrap();
    assert_eq!(a.mirror_free(), BigradedGroup { free: b.free.clone(), ..Default::default() });
    // Torsion moves from (3,7) to (-2,-7).
    assert_eq!(b.torsion_count(-2, -7, 2), 1);
}

#[test]
fn elimination_examples() {
    let mut c = ChainComplex::new(Rationals, 0, 0, false);
    c.groups.insert(0, vec![0]);
    c.groups.insert(1, vec![0]);
    c.diffs.insert(0, SparseMatrix::from_dense(&Rationals, &[vec![Rationals.one()]]));
    let (r, t) = gauss_eliminate(&c);
    assert_eq!((r.generator_count(), t.steps), (0, 1));

    let mut z = ChainComplex::new(Integers, 0, 0, false);
    z.groups.insert(0, vec![1, 3]);
    let (r, t) = gauss_eliminate(&z);
    assert_eq!((r.generator_count(), t.steps), (2, 0));

    let d = Diagram::parse_pd(TREFOIL).unwrap();
    let c = assemble(&d, Theory::Ordinary, &F2, false).unwrap();
    assert_eq!(c.generator_count(), 30);
    let (r, t) = gauss_eliminate(&c);
    assert!(r.generator_count() <= 6);
    assert_eq!(t.sizes_before.values().sum::<usize>(), 30);
    assert!(r.check_d_squared());
    assert_eq!(homology(&r).unwrap(), homology(&c).unwrap());
}

#[test]
fn elimination_keeps_torsion() {
    for e in bundled_table().iter().take(12) {
        let d = e.diagram().unwrap();
        let c = assemble(&d, Theory::Ordinary, &Integers, false).unwrap();
        let (r, _) = gauss_eliminate(&c);
        assert_eq!(homology(&r).unwrap(), homology(&c).unwrap(), "{}", e.name);
    }
}

#[test]
fn scan_matches_cube_on_small_table() {
    use crate::diagram::table::bundled_table;
    for e in bundled_table().iter().take(60) {
        let d = e.diagram().unwrap();
        let cube = khovanov(&d, Theory::Ordinary, Ring::Z, false).unwrap();
        let scan = scan_khovanov(&d, Ring::Z).unwrap();
        assert_eq!(cube, scan, "{}", e.name);
    }
    let u = Diagram::unlink(2);
    assert_eq!(scan_khovanov(&u, Ring::Z).unwrap(), khovanov(&u, Theory::Ordinary, Ring::Z, false).unwrap());
}
