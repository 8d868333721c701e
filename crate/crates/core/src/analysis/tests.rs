use super::*;
use crate::arith::Field;
use crate::graph::{build_graph, enumerate_cycles};
use crate::quaternion::lattice::det;
use alloc::vec;

fn vertex(g: &IsogenyGraph, j: u64) -> usize {
    g.vertex_of(&g.field.from_u64(j)).unwrap()
}

fn via(g: &IsogenyGraph, base: usize, path: &[u64]) -> Vec<Cycle> {
    let verts: Vec<usize> = path.iter().map(|&j| vertex(g, j)).collect();
    enumerate_cycles(g, base, path.len() - 1)
        .into_iter()
        .filter(|c| c.vertices(g) == verts)
        .collect()
}

#[test]
fn primitivity() {
    let g = build_graph(31, 2).unwrap();
    for e in &g.edges {
        let c = Cycle::new(&g, vec![e.id, e.dual]).unwrap();
        assert!(!is_primitive(&g, &c));
    }
    for v in 0..g.vertices.len() {
        assert!(enumerate_cycles(&g, v, 4).iter().all(|c| is_primitive(&g, c)));
    }
}

#[test]
fn commutation() {
    let g = build_graph(31, 2).unwrap();
    let v2 = vertex(&g, 2);
    let loop2 = &via(&g, v2, &[2, 2])[0];
    let long = &via(&g, v2, &[2, 4, 4, 2])[0];
    assert!(!commutes(&g, loop2, long).unwrap());
    assert!(commutes(&g, long, &long.then(long).unwrap()).unwrap());
    assert!(commutes(&g, long, &long.reverse_dual(&g)).unwrap());
}

#[test]
fn commuting_iff_dependent() {
    let g = build_graph(31, 2).unwrap();
    for v in 0..g.vertices.len() {
        let cs = enumerate_cycles(&g, v, 3);
        for (i, a) in cs.iter().enumerate() {
            for b in &cs[i..] {
                let r = independence_report(&g, a, b, BoundMode::Sharp).unwrap();
                assert_eq!(r.commute, !r.independent, "{:?} {:?}", a, b);
                if r.independent {
                    assert!(det(&r.gram4) > num_rational::BigRational::zero());
                }
            }
        }
    }
}

#[test]
fn p31_vertex4_pair_is_maximal() {
    let g = build_graph(31, 2).unwrap();
    let v = vertex(&g, 4);
    let loops = via(&g, v, &[4, 4]);
    let a = loops.iter().find(|c| trace(&cycle_to_chain(&g, c).unwrap(), BoundMode::Sharp).unwrap().trace.abs() == BigInt::one()).unwrap();
    let b = &via(&g, v, &[4, 2, 2, 4])[0];
    let r = independence_report(&g, a, b, BoundMode::Sharp).unwrap();
    assert!(r.independent);
    assert_eq!(r.order_status, OrderStatus::Maximal);
    assert_eq!(r.disc_reduced, Some(BigInt::from(31)));
    assert!(r.obstruction.is_none());
    let same = independence_report(&g, a, a, BoundMode::Sharp).unwrap();
    assert!(!same.independent);
    assert_eq!(same.order_status, OrderStatus::Undetermined);
}

#[test]
fn shared_first_edge_blocks_maximality() {
    let g = build_graph(31, 2).unwrap();
    let v = vertex(&g, 2);
    let mut found = 0;
    let cs = enumerate_cycles(&g, v, 5);
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            let Some(w) = shared_path_obstruction(&g, a, b) else { continue };
            assert_eq!(w[0], v);
            let r = independence_report(&g, a, b, BoundMode::Sharp).unwrap();
            assert_ne!(r.order_status, OrderStatus::Maximal);
            if r.independent {
                assert!(r.disc_reduced.unwrap() > BigInt::from(31));
                found += 1;
            }
        }
    }
    assert!(found >= 5);
    let e4 = &via(&g, vertex(&g, 4), &[4, 4])[0];
    let e42 = &via(&g, vertex(&g, 4), &[4, 2, 2, 4])[0];
    assert!(shared_path_obstruction(&g, e4, e42).is_none());
}

#[test]
fn conductor_and_splitting() {
    let c = conductor_predicates(2, 1, &BigInt::from(1));
    assert!(c.conductor_coprime_to_ell && c.ell_splits);
    let c = conductor_predicates(2, 1, &BigInt::from(0));
    assert!(!c.conductor_coprime_to_ell && !c.ell_splits);
    // ℓ = 3, t = 1, e = 1: d = −11 ≡ 1 mod 3, a square
    let c = conductor_predicates(3, 1, &BigInt::from(1));
    assert!(c.conductor_coprime_to_ell && c.ell_splits);
    // ℓ = 3, t = 2, e = 1: d = −8 ≡ 1
    assert!(conductor_predicates(3, 1, &BigInt::from(2)).ell_splits);
    // ℓ = 5, t = 1, e = 1: d = −19 ≡ 1 mod 5
    assert!(conductor_predicates(5, 1, &BigInt::from(1)).ell_splits);
    // ℓ = 5, t = 3, e = 1: d = −11 ≡ 4, a square
    assert!(conductor_predicates(5, 1, &BigInt::from(3)).ell_splits);
    // ℓ = 5, t = 0: d = −20 ≡ 0
    assert!(!conductor_predicates(5, 1, &BigInt::from(0)).conductor_coprime_to_ell);
}
