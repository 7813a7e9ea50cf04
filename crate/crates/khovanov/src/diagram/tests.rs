use proptest::prelude::*;

use super::table::bundled_table;
use super::*;
use crate::error::KhError;

const TREFOIL: &str = "X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)";

#[test]
fn one_crossing_unknots() {
    let pos = Diagram::parse_pd("X(1,1,2,2)").unwrap();
    assert_eq!(pos.crossings()[0].sign, 1);
    assert_eq!(pos.component_count(), 1);
    let neg = Diagram::parse_pd("X(1,2,2,1)").unwrap();
    assert_eq!(neg.crossings()[0].sign, -1);
}

#[test]
fn right_trefoil_is_positive() {
    let d = Diagram::parse_pd(TREFOIL).unwrap();
    assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
    assert_eq!(d.components(), &[vec![1, 2, 3, 4, 5, 6]]);
    assert_eq!(d.mirror().writhe(), -3);
}

#[test]
fn malformed_input() {
    assert!(matches!(Diagram::parse_pd(""), Err(KhError::MalformedPd(_))));
    assert!(matches!(Diagram::parse_pd("X(1,2,3)"), Err(KhError::MalformedPd(_))));
    assert!(matches!(Diagram::parse_pd("Y(1,2,3,4)"), Err(KhError::MalformedPd(_))));
    assert!(matches!(
        Diagram::parse_pd("X(1,4,2,3);X(3,6,4,5)"),
        Err(KhError::EdgeCount { .. })
    ));
    assert!(matches!(Diagram::parse_pd("X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)@9"), Err(KhError::BadBasepoint(9))));
}

#[test]
fn three_two_edge_loops_are_not_planar() {
    let r = Diagram::parse_pd("X(1,4,2,3);X(3,6,4,5);X(5,2,6,1)");
    assert!(matches!(r, Err(KhError::NonPlanar(_))), "{r:?}");
}

#[test]
fn inconsistent_under_strands() {
    // The under-strand of the second crossing runs against the first.
    let r = Diagram::parse_pd("X(1,3,2,4);X(1,4,2,3)");
    assert!(matches!(r, Err(KhError::Orientation(_)) | Err(KhError::NonPlanar(_))), "{r:?}");
    let r = Diagram::parse_pd("X(2,5,3,4);X(3,1,4,6);X(5,2,6,1)");
    assert!(r.is_err());
}

#[test]
fn loops_and_basepoint() {
    let d = Diagram::parse_pd("X(1,5,2,4);X(3,1,4,6);X(5,3,6,2);U(2)@7").unwrap();
    assert_eq!(d.loops(), &[7, 8]);
    assert_eq!(d.component_count(), 3);
    assert_eq!(d.basepoint(), Some(7));
    let u = Diagram::parse_pd("U(1)").unwrap();
    assert_eq!(u, Diagram::unlink(1));
}

#[test]
fn pd_text_round_trips() {
    let d = Diagram::parse_pd("X(1,5,2,4);X(3,1,4,6);X(5,3,6,2);U(1)@2").unwrap();
    assert_eq!(Diagram::parse_pd(&d.to_pd_string()).unwrap(), d);
}

#[test]
fn resolution_circle_counts() {
    let d = Diagram::parse_pd(TREFOIL).unwrap();
    // Oriented resolution of a positive braid closure: its Seifert circles.
    assert_eq!(resolve(&d, 0, ResolveMode::Ordinary).circle_count, 2);
    assert_eq!(resolve(&d, 0b111, ResolveMode::Ordinary).circle_count, 3);
    let counts: Vec<usize> = (0..8).map(|s| resolve(&d, s, ResolveMode::Ordinary).circle_count).collect();
    assert_eq!(counts, vec![2, 1, 1, 2, 1, 2, 2, 3]);
    let r = resolve(&d, 0b001, ResolveMode::Odd);
    assert_eq!(r.arrows.len(), 3);
    assert_eq!(r.circles().iter().map(Vec::len).sum::<usize>(), 6);
}

#[test]
fn smoothing_the_trefoil() {
    let d = Diagram::parse_pd(TREFOIL).unwrap();
    let hopf = d.smoothing(0, 0);
    assert_eq!(hopf.crossing_count(), 2);
    assert_eq!(hopf.component_count(), 2);
    assert_eq!(hopf.n_plus(), 2);
    let kink = d.smoothing(0, 1);
    assert_eq!((kink.crossing_count(), kink.component_count()), (2, 1));
    let u = Diagram::parse_pd("X(1,1,2,2)").unwrap();
    assert_eq!(u.smoothing(0, 0), Diagram::unlink(2));
    assert_eq!(u.smoothing(0, 1), Diagram::unlink(1));
}

#[test]
fn sums_and_braids() {
    let t = Diagram::parse_pd(TREFOIL).unwrap();
    let tt = t.connected_sum(&t).unwrap();
    assert_eq!((tt.crossing_count(), tt.component_count(), tt.writhe()), (6, 1, 6));
    let granny_mirror = t.connected_sum(&t.mirror()).unwrap();
    assert_eq!(granny_mirror.writhe(), 0);
    assert_eq!(t.connected_sum(&Diagram::unlink(1)).unwrap().crossing_count(), 3);

    let t23 = Diagram::torus(2, 3).unwrap();
    assert_eq!((t23.n_plus(), t23.component_count()), (3, 1));
    let t56 = Diagram::torus(5, 6).unwrap();
    assert_eq!((t56.crossing_count(), t56.component_count()), (24, 1));
    let t33 = Diagram::torus(3, 3).unwrap();
    assert_eq!(t33.component_count(), 3);
    let split = Diagram::braid_closure(3, &[1, 1]).unwrap();
    assert_eq!((split.component_count(), split.loops().len()), (3, 1));

    let u2 = Diagram::unlink(1).disjoint_union(&Diagram::unlink(1));
    assert_eq!((u2.component_count(), u2.crossing_count()), (2, 0));
}

#[test]
fn whole_table_parses() {
    let table = bundled_table();
    assert!(table.len() > 250);
    for e in &table {
        let d = e.diagram().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert_eq!(d.mirror().mirror(), d, "{}", e.name);
        if !e.name.starts_with('L') && !e.name.starts_with('U') {
            assert_eq!(d.component_count(), 1, "{}", e.name);
        }
        let c = d.canonicalize();
        assert_eq!((c.crossing_count(), c.writhe(), c.component_count()), (d.crossing_count(), d.writhe(), d.component_count()));
    }
}

fn braid_word() -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..6).prop_flat_map(|s| {
        let gen = (1..s as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        (Just(s), prop::collection::vec(gen, 1..14))
    })
}

proptest! {
    #[test]
    fn braid_closures_are_planar_and_signed((s, w) in braid_word()) {
        let d = Diagram::braid_closure(s, &w).unwrap();
        prop_assert_eq!(d.crossing_count(), w.len());
        prop_assert_eq!(d.writhe(), w.iter().map(|g| g.signum() as i64).sum::<i64>());
        let inv: Vec<i32> = w.iter().map(|g| -g).collect();
        let m = Diagram::braid_closure(s, &inv).unwrap();
        prop_assert_eq!(d.mirror().writhe(), m.writhe());
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        prop_assert_eq!(Diagram::parse_pd(&d.to_pd_string()).unwrap(), d);
    }

    #[test]
    fn smoothings_stay_planar((s, w) in braid_word(), k in 0usize..14, which in 0u8..2) {
        let d = Diagram::braid_closure(s, &w).unwrap();
        let k = k % d.crossing_count();
        let e = d.smoothing(k, which);
        prop_assert_eq!(e.crossing_count(), d.crossing_count() - 1);
        if (d.crossings()[k].sign > 0) == (which == 0) {
            // Oriented smoothing keeps every other sign.
            prop_assert_eq!(e.writhe(), d.writhe() - d.crossings()[k].sign as i64);
        }
    }
}
