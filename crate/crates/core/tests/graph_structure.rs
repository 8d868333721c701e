use isoendo_core::arith::Field;
use isoendo_core::curves::automorphism_units;
use isoendo_core::graph::{build_graph, cycle_to_chain, enumerate_cycles, Cycle};
use isoendo_core::schoof::{trace, trace_oracle, BoundMode};
use num_bigint::BigInt;

#[test]
fn out_degree_and_conjugation() {
    for (p, ell) in [(31, 2), (101, 2), (103, 2), (67, 3), (83, 5)] {
        let g = build_graph(p, ell).unwrap();
        for v in 0..g.vertices.len() {
            assert_eq!(g.out[v].len() as u64, ell + 1, "p={} ℓ={}", p, ell);
            // j ↦ j^p maps the neighbourhood of v onto that of its conjugate
            let mut a: Vec<usize> = g.out[v].iter().map(|&e| g.conjugate(g.edges[e].to)).collect();
            let mut b: Vec<usize> = g.out[g.conjugate(v)].iter().map(|&e| g.edges[e].to).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn there_and_back_is_ell() {
    for (p, ell) in [(31, 2), (103, 2), (67, 3)] {
        let g = build_graph(p, ell).unwrap();
        for e in &g.edges {
            let plain = |v: usize| automorphism_units(&g.vertices[v].curve).len() == 2;
            if e.dual == e.id || g.edges[e.dual].dual != e.id || !plain(e.from) || !plain(e.to) {
                continue;
            }
            let c = Cycle::new(&g, vec![e.id, e.dual]).unwrap();
            let t = trace(&cycle_to_chain(&g, &c).unwrap(), BoundMode::Sharp).unwrap();
            assert_eq!(t.trace, BigInt::from(2 * ell), "p={} edge {}", p, e.id);
        }
    }
}

#[test]
fn bound_modes_agree() {
    let g = build_graph(103, 2).unwrap();
    let v = g.vertex_of(&g.field.from_u64(23)).unwrap();
    for c in enumerate_cycles(&g, v, 4) {
        let chain = cycle_to_chain(&g, &c).unwrap();
        let sharp = trace(&chain, BoundMode::Sharp).unwrap();
        let wide = trace(&chain, BoundMode::Paper).unwrap();
        assert_eq!(sharp.trace, wide.trace);
        assert!(wide.residues.len() >= sharp.residues.len());
        assert_eq!(sharp.trace, BigInt::from(trace_oracle(&chain).unwrap()));
    }
}
