use std::collections::BTreeSet;

use vexgeom::gvd;
use vexgeom::{Budget, Cell, Permutation};

fn vexillary(n: usize) -> Vec<Permutation> {
    Permutation::all(n).into_iter().filter(|p| p.is_vexillary()).collect()
}

#[test]
fn every_step_in_s4_is_a_decomposition() {
    let b = Budget::default();
    for p in vexillary(4) {
        for cell in p.accessible_boxes() {
            let s = gvd::gvd_step_schubert(&p, cell, &b).unwrap();
            assert!(s.split.is_gvd && s.hilbert.equal, "{p} at {cell}");
            assert!(s.perm_p.is_vexillary() && s.perm_c.is_vexillary());
        }
    }
}

#[test]
fn grassmannian_outputs_are_vexillary() {
    let b = Budget::default();
    for p in Permutation::all(5).into_iter().filter(|p| p.is_grassmannian()) {
        let acc = p.accessible_boxes();
        if let Some(&cell) = acc.iter().next() {
            assert_eq!(acc.len(), 1, "{p}");
            let s = gvd::gvd_step_schubert(&p, cell, &b).unwrap();
            assert!(s.perm_p.is_vexillary() && s.perm_c.is_vexillary(), "{p}");
        }
    }
}

#[test]
fn limit_is_independent_of_box_choice() {
    let b = Budget::default();
    let northwest = |acc: &BTreeSet<Cell>| *acc.iter().next().unwrap();
    for p in vexillary(5).into_iter().step_by(7) {
        let a = gvd::iterate_gvd(&p, &b).unwrap();
        let c = gvd::iterate_gvd_with(&p, &northwest, &b).unwrap();
        assert_eq!(a.monomial_ideal, c.monomial_ideal, "{p}");
        assert!(a.steps.iter().all(|s| s.is_gvd && s.hilbert_equal));
    }
}

#[test]
fn large_example_cone_permutation() {
    let p = Permutation::new(vec![8, 7, 1, 6, 2, 9, 5, 3, 4]).unwrap();
    let s = gvd::gvd_step_schubert(&p, Cell::new(7, 4), &Budget::default()).unwrap();
    assert_eq!(s.perm_c, Permutation::new(vec![8, 7, 1, 6, 4, 9, 2, 3, 5]).unwrap());
}
