use super::*;
use crate::arith::Fp2;
use crate::curves::{supersingular_model, torsion_basis};
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn model(p: u64, j: u64) -> (Fp2, Curve<Fp2>) {
    let f = Fp2::new(p).unwrap();
    let e = supersingular_model(&f, &f.from_u64(j)).unwrap();
    (f, e)
}

#[test]
fn two_isogenies_from_vertex_two() {
    let (f, e) = model(31, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ks = kernel_polynomials(&e, 2, &mut rng).unwrap();
    assert_eq!(ks.len(), 3);
    let mut js: Vec<u64> = ks
        .iter()
        .map(|k| {
            let j = velu(&e, k, 2).unwrap().codomain.j_invariant();
            assert!(f.in_prime_field(&j));
            f.to_coeffs(&j)[0]
        })
        .collect();
    js.sort();
    assert_eq!(js, [2, 4, 23]);
}

#[test]
fn kernel_dies_and_images_land_on_codomain() {
    let (_, e) = model(31, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for ell in [2u64, 3, 5] {
        for k in kernel_polynomials(&e, ell, &mut rng).unwrap() {
            let phi = velu(&e, &k, ell).unwrap();
            for _ in 0..10 {
                let p = e.random_point(&mut rng);
                let q = e.random_point(&mut rng);
                let ip = phi.evaluate(&p).unwrap();
                let iq = phi.evaluate(&q).unwrap();
                assert!(phi.codomain.contains(&ip));
                let lhs = phi.evaluate(&e.add(&p, &q)).unwrap();
                assert_eq!(lhs, phi.codomain.add(&ip, &iq));
            }
        }
    }
}

#[test]
fn kernel_points_map_to_infinity() {
    let (_, e) = model(31, 23);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let b = torsion_basis(&e, 3, &mut rng).unwrap();
    let c = &b.curve;
    let gens = [b.p.clone(), b.q.clone(), c.add(&b.p, &b.q), c.sub(&b.p, &b.q)];
    let mut seen = Vec::new();
    for g in gens {
        let k = kernel_polynomial_from_point(c, &g, 3).unwrap();
        let phi = velu(c, &k, 3).unwrap();
        assert!(phi.evaluate(&g).unwrap().is_infinity());
        assert!(phi.evaluate(&c.double(&g)).unwrap().is_infinity());
        let r = c.random_point(&mut rng);
        assert_eq!(phi.evaluate(&c.add(&r, &g)).unwrap(), phi.evaluate(&r).unwrap());
        seen.push(k);
    }
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 4);
    // the four kernels from the base field agree with those from points
    let mut base: Vec<_> = kernel_polynomials(&e, 3, &mut rng)
        .unwrap()
        .iter()
        .map(|k| PolyRing::new(e.field).map_coeffs(&PolyRing::new(c.field.clone()), k, |x| b.embedding.embed(x)))
        .collect();
    base.sort();
    assert_eq!(base, seen);
}

#[test]
fn dual_composes_to_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (p, j) in [(31u64, 2u64), (103, 69), (101, 3)] {
        let (f, e) = model(p, j);
        if !f.is_zero(&e.j_invariant()) && e.j_invariant() != f.from_u64(j) {
            panic!("bad model");
        }
        for ell in [2u64, 3] {
            for k in kernel_polynomials(&e, ell, &mut rng).unwrap() {
                let phi = velu(&e, &k, ell).unwrap();
                let back: Vec<_> = kernel_polynomials(&phi.codomain, ell, &mut rng)
                    .unwrap()
                    .into_iter()
                    .map(|k2| velu(&phi.codomain, &k2, ell).unwrap())
                    .filter(|psi| psi.codomain.j_invariant() == e.j_invariant())
                    .map(|psi| psi.onto(&e).unwrap())
                    .filter(|psi| dual_edge(&phi, psi).unwrap())
                    .collect();
                assert_eq!(back.len(), 1);
                let psi = &back[0];
                let units = crate::curves::automorphism_units(&e);
                let pts: Vec<_> = (0..10).map(|_| e.random_point(&mut rng)).collect();
                let ok = units.iter().any(|u| {
                    let u2 = f.square(u);
                    let u3 = f.mul(&u2, u);
                    pts.iter().all(|pt| {
                        let img = psi.evaluate(&phi.evaluate(pt).unwrap()).unwrap();
                        let want = e.mul_u64(ell, pt);
                        match (img, want) {
                            (Point::Infinity, Point::Infinity) => true,
                            (Point::Affine(x, y), Point::Affine(x2, y2)) => {
                                x == f.mul(&u2, &x2) && y == f.mul(&u3, &y2)
                            }
                            _ => false,
                        }
                    })
                });
                assert!(ok, "p={} j={} ell={}", p, j, ell);
            }
        }
    }
}

#[test]
fn isomorphism_onto_normalized_model() {
    let (f, e) = model(103, 34);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in kernel_polynomials(&e, 2, &mut rng).unwrap() {
        let phi = velu(&e, &k, 2).unwrap();
        let target = supersingular_model(&f, &phi.codomain.j_invariant()).unwrap();
        let psi = phi.onto(&target).unwrap();
        for _ in 0..5 {
            let pt = e.random_point(&mut rng);
            assert!(target.contains(&psi.evaluate(&pt).unwrap()));
        }
    }
}

#[test]
fn chain_checks_endpoints() {
    let (_, e) = model(31, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ks = kernel_polynomials(&e, 2, &mut rng).unwrap();
    let a = velu(&e, &ks[0], 2).unwrap();
    let b = velu(&e, &ks[1], 2).unwrap();
    assert_eq!(compose_chain(alloc::vec![a.clone(), b]).unwrap_err(), Error::BadChain(1));
    let c = compose_chain(alloc::vec![a]).unwrap();
    assert_eq!(c.degree(), num_bigint::BigUint::from(2u32));
}

#[test]
fn bad_kernels_are_rejected() {
    let (f, e) = model(31, 2);
    let ring = PolyRing::new(f);
    let fake = ring.linear(&f.from_u64(1));
    assert!(matches!(velu(&e, &fake, 2), Err(Error::BadKernel(_))));
    assert!(kernel_polynomial_from_point(&e, &Point::Infinity, 3).is_err());
}
