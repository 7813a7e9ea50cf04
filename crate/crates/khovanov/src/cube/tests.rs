use super::*;
use crate::algebra::{Integer, Integers, F2};
use crate::diagram::table::bundled_table;

const TREFOIL: &str = "X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)";

fn z(v: i64) -> Integer {
    Integer::from(v)
}

#[test]
fn merge_and_split_matrices() {
    // One positive kink: the 0-resolution has two circles, the 1-resolution one.
    let d = Diagram::parse_pd("X(1,1,2,2)").unwrap();
    let merge = edge_map(&d, 0, 0, 0, 0);
    let dense = merge.to_dense(&Integers);
    // columns 1, x_a, x_a', x_a x_a'; rows 1, x_b
    assert_eq!(dense, vec![vec![z(1), z(0), z(0), z(0)], vec![z(0), z(1), z(1), z(0)]]);
    let deformed = edge_map(&d, 0, 0, 0, 1).to_dense(&Integers);
    assert_eq!(deformed[0][3], z(1));

    let neg = Diagram::parse_pd("X(1,2,2,1)").unwrap();
    let split = edge_map(&neg, 0, 0, 0, 0).to_dense(&Integers);
    // 1 -> x_b + x_b', x -> x_b x_b'
    assert_eq!(split, vec![vec![z(0), z(0)], vec![z(1), z(0)], vec![z(1), z(0)], vec![z(0), z(1)]]);
    let lee = edge_map(&neg, 0, 0, 0, 1).to_dense(&Integers);
    assert_eq!(lee[0][1], z(1));
    let odd = odd_edge_map(&neg, 0, 0).to_dense(&Integers);
    assert_eq!(odd[1][0].abs(), z(1));
    assert_eq!(odd[1][0], odd[2][0].neg());
    assert_eq!(odd[3][1].abs(), z(1));
}

#[test]
fn standard_signage_faces() {
    let s = standard_signage();
    assert_eq!((s.eps(0, 0), s.eps(1, 1)), (0, 1));
    let fs: Vec<Face> = faces(4).collect();
    assert_eq!(fs.len(), 24);
    assert!(fs.iter().all(|&(a, c1, c2)| s.face_sum(a, c1 as usize, c2 as usize) == 1));
}

#[test]
fn trefoil_chain_groups() {
    let d = Diagram::parse_pd(TREFOIL).unwrap();
    let c = assemble(&d, Theory::Ordinary, &F2, false).unwrap();
    let dims: Vec<usize> = (0..4).map(|i| c.rank(i)).collect();
    assert_eq!(dims, vec![4, 6, 12, 8]);
    assert!(c.check_grading());
    let zc = assemble(&d, Theory::Ordinary, &Integers, false).unwrap();
    assert!(zc.check_d_squared());
}

#[test]
fn unknot_complexes() {
    let u = Diagram::unlink(1);
    let c = assemble(&u, Theory::Ordinary, &F2, false).unwrap();
    assert_eq!(c.groups[&0], vec![1, -1]);
    let r = assemble(&u.clone().with_basepoint(Some(1)).unwrap(), Theory::Ordinary, &F2, true).unwrap();
    assert_eq!(r.groups[&0], vec![0]);
    assert!(matches!(assemble(&u, Theory::Ordinary, &F2, true), Err(KhError::BasepointMissing)));
}

#[test]
fn odd_signs_on_small_knots() {
    for e in bundled_table().iter().filter(|e| e.diagram().unwrap().crossing_count() <= 6) {
        let d = e.diagram().unwrap();
        let c = assemble(&d, Theory::Odd, &Integers, false).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert!(c.check_d_squared(), "{}", e.name);
        let ord = assemble(&d, Theory::Ordinary, &F2, false).unwrap();
        let red = c.map_ring(&F2, |v| F2.from_integer(v));
        assert_eq!(red.diffs, ord.diffs, "{}", e.name);
    }
}

#[test]
fn both_ladybug_parities_are_solvable() {
    for name in ["3_1", "4_1", "5_2", "6_2", "7_4"] {
        let e = bundled_table().into_iter().find(|e| e.name == name).unwrap();
        let d = e.diagram().unwrap();
        let kinds = classify_faces(&d, &odd_resolutions(&d)).unwrap();
        for g in [0, 1] {
            assert!(odd_sign_solve_from(d.crossing_count(), &kinds, Some(g)).is_ok(), "{name} parity {g}");
        }
    }
}
