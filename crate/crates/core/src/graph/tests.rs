use super::*;
use crate::arith::PolyRing;
use crate::curves::Point;
use alloc::vec;
use alloc::vec::Vec;

fn targets(g: &IsogenyGraph, j: u64) -> Vec<u64> {
    let v = g.vertex_of(&g.field.from_u64(j)).unwrap();
    let mut t: Vec<u64> = g.out[v].iter().map(|&e| g.vertices[g.edges[e].to].j[0]).collect();
    t.sort();
    t
}

#[test]
fn p31_adjacency() {
    let g = build_graph(31, 2).unwrap();
    let js: Vec<_> = g.vertices.iter().map(|v| v.j).collect();
    assert_eq!(js, vec![[2, 0], [4, 0], [23, 0]]);
    assert_eq!(targets(&g, 2), [2, 4, 23]);
    assert_eq!(targets(&g, 4), [2, 4, 4]);
    assert_eq!(targets(&g, 23), [2, 2, 23]);
    vertex_count_check(&g).unwrap();
}

#[test]
fn vertex_sets_of_worked_examples() {
    let g = build_graph(103, 2).unwrap();
    assert_eq!(g.vertices.len(), 9);
    let rational: Vec<u64> = g.vertices.iter().filter(|v| v.j[1] == 0).map(|v| v.j[0]).collect();
    assert_eq!(rational, [23, 24, 34, 69, 80]);
    let g = build_graph(101, 2).unwrap();
    let rational: Vec<u64> = g.vertices.iter().filter(|v| v.j[1] == 0).map(|v| v.j[0]).collect();
    assert_eq!(rational, [0, 3, 21, 57, 59, 64, 66]);
    assert_eq!(g.vertices.len(), 9);
}

#[test]
fn start_vertices() {
    assert_eq!(start_j(31).unwrap(), 1728 % 31);
    assert_eq!(start_j(101).unwrap(), 0);
    let j = start_j(37).unwrap();
    let f = PrimeField::new(37).unwrap();
    assert_eq!(crate::curves::count_points(&curve_from_j(&f, &j)).unwrap(), 38);
}

#[test]
fn duals_are_involutive_and_compose_to_ell() {
    for (p, ell) in [(31u64, 2u64), (103, 2), (37, 3)] {
        let g = build_graph(p, ell).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for e in &g.edges {
            let d = &g.edges[e.dual];
            // extra automorphisms at the source identify several edges with one dual
            let special = automorphism_units(&g.vertices[e.from].curve).len() > 2;
            if !special {
                assert_eq!(d.dual, e.id, "p={} ell={}", p, ell);
            }
            assert_eq!((d.from, d.to), (e.to, e.from));
            let c = &g.vertices[e.from].curve;
            for _ in 0..3 {
                let pt = c.random_point(&mut rng);
                let img = e.dual_map.evaluate(&e.map.evaluate(&pt).unwrap()).unwrap();
                assert_eq!(img, c.mul_u64(ell, &pt));
            }
        }
    }
}

#[test]
fn cycles_without_backtracking() {
    let g = build_graph(31, 2).unwrap();
    let v2 = g.vertex_of(&g.field.from_u64(2)).unwrap();
    let cs = enumerate_cycles(&g, v2, 3);
    assert!(cs.iter().any(|c| c.len() == 1));
    for c in &cs {
        assert!(c.no_backtracking(&g));
        assert_eq!(Cycle::new(&g, c.edges.clone()).unwrap(), *c);
        let ch = cycle_to_chain(&g, c).unwrap();
        assert!(ch.is_closed());
    }
    // a length-3 cycle through vertex 4
    let v4 = g.vertex_of(&g.field.from_u64(4)).unwrap();
    assert!(cs.iter().any(|c| c.len() == 3 && c.vertices(&g)[1] == v4));
    assert!(enumerate_cycles(&g, v2, 0).is_empty());
    // the reverse dual chain composed after the chain is [2^e]
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for c in cs.iter().take(6) {
        let ch = cycle_to_chain(&g, c).unwrap().then(&reverse_dual_chain(&g, c).unwrap()).unwrap();
        let e = &g.vertices[v2].curve;
        let pt = e.random_point(&mut rng);
        assert_eq!(ch.evaluate(&pt).unwrap(), e.mul_u64(1 << c.len(), &pt));
        let _ = Point::<Fp2Elem>::Infinity;
    }
}

/// Φ₂(X, Y) evaluated at X = j as a polynomial in Y.
fn phi2_at(f: &Fp2, j: &Fp2Elem) -> Poly<Fp2Elem> {
    let ring = PolyRing::new(*f);
    let c = |v: i64| f.from_i64(v);
    let j2 = f.square(j);
    let j3 = f.mul(&j2, j);
    let big = |s: &str| {
        let n: u128 = s.parse().unwrap();
        f.from_u64((n % f.p() as u128) as u64)
    };
    // X³ + Y³ − X²Y² + 1488(X²Y + XY²) − 162000(X² + Y²) + 40773375XY
    //   + 8748000000(X + Y) − 157464000000000
    let y0 = f.sub(
        &f.add(&f.sub(&j3, &f.mul(&c(162000), &j2)), &f.mul(&big("8748000000"), j)),
        &big("157464000000000"),
    );
    let y1 = f.add(
        &f.add(&f.mul(&c(1488), &j2), &f.mul(&c(40773375), j)),
        &big("8748000000"),
    );
    let y2 = f.sub(&f.sub(&f.mul(&c(1488), j), &j2), &c(162000));
    ring.from_coeffs(vec![y0, y1, y2, f.one()])
}

#[test]
fn targets_are_roots_of_the_modular_polynomial() {
    for p in [31u64, 101, 103, 59] {
        let g = build_graph(p, 2).unwrap();
        let ring = PolyRing::new(g.field);
        for (vi, v) in g.vertices.iter().enumerate() {
            let roots: Vec<_> = g.out[vi].iter().map(|&e| g.vertices[g.edges[e].to].j).collect();
            assert_eq!(ring.from_roots(&roots), phi2_at(&g.field, &v.j), "p={} j={:?}", p, v.j);
        }
    }
}
