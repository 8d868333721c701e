use alloc::collections::BTreeMap;
use alloc::vec;

use super::Curve;
use crate::arith::{Field, Poly, PolyRing};
use crate::error::{Error, Result};

/// Division polynomials in x alone.
///
/// Convention: f_k = ψ_k for odd k and f_k = ψ_k/(2y) for even k, so every
/// f_k is a polynomial in x. With R = (2y)² = 4(x³ + Ax + B):
///
/// f_{2n+1} = R²·f_{n+2}·f_n³ − f_{n−1}·f_{n+1}³   (n even)
/// f_{2n+1} = f_{n+2}·f_n³ − R²·f_{n−1}·f_{n+1}³   (n odd)
/// f_{2n}   = f_n·(f_{n+2}·f_{n−1}² − f_{n−2}·f_{n+1}²)
///
/// Only the indices reachable from the requested one are computed.
pub struct DivisionPolynomials<F: Field> {
    ring: PolyRing<F>,
    r: Poly<F::Elem>,
    memo: BTreeMap<u64, Poly<F::Elem>>,
}

impl<F: Field> DivisionPolynomials<F> {
    pub fn new(e: &Curve<F>) -> Self {
        let f = &e.field;
        let ring = PolyRing::new(f.clone());
        let (a, b) = (&e.a, &e.b);
        let cubic = ring.from_coeffs(vec![b.clone(), a.clone(), f.zero(), f.one()]);
        let r = ring.scale(&cubic, &f.from_u64(4));
        let a2 = f.square(a);
        let g3 = ring.from_coeffs(vec![
            f.neg(&a2),
            f.mul_u64(b, 12),
            f.mul_u64(a, 6),
            f.zero(),
            f.from_u64(3),
        ]);
        let g4 = ring.from_coeffs(vec![
            f.mul_u64(&f.neg(&f.add(&f.mul_u64(&f.square(b), 8), &f.mul(&a2, a))), 2),
            f.mul_u64(&f.neg(&f.mul_u64(&f.mul(a, b), 4)), 2),
            f.mul_u64(&f.neg(&f.mul_u64(&a2, 5)), 2),
            f.mul_u64(b, 40),
            f.mul_u64(a, 10),
            f.zero(),
            f.from_u64(2),
        ]);
        let mut memo = BTreeMap::new();
        memo.insert(0, ring.zero());
        memo.insert(1, ring.one());
        memo.insert(2, ring.one());
        memo.insert(3, g3);
        memo.insert(4, g4);
        DivisionPolynomials { ring, r, memo }
    }

    pub fn get(&mut self, k: u64) -> Poly<F::Elem> {
        if let Some(g) = self.memo.get(&k) {
            return g.clone();
        }
        let n = k / 2;
        let ring = self.ring.clone();
        let g = if k % 2 == 1 {
            let (gn2, gn, gm1, gn1) = (self.get(n + 2), self.get(n), self.get(n - 1), self.get(n + 1));
            let t1 = ring.mul(&gn2, &ring.pow(&gn, 3));
            let t2 = ring.mul(&gm1, &ring.pow(&gn1, 3));
            let r2 = ring.square(&self.r);
            if n % 2 == 0 {
                ring.sub(&ring.mul(&r2, &t1), &t2)
            } else {
                ring.sub(&t1, &ring.mul(&r2, &t2))
            }
        } else {
            let (gn, gn2, gm1, gm2, gn1) =
                (self.get(n), self.get(n + 2), self.get(n - 1), self.get(n - 2), self.get(n + 1));
            let inner = ring.sub(
                &ring.mul(&gn2, &ring.square(&gm1)),
                &ring.mul(&gm2, &ring.square(&gn1)),
            );
            ring.mul(&gn, &inner)
        };
        self.memo.insert(k, g.clone());
        g
    }
}

/// The k-th division polynomial in the x-only convention described on
/// [`DivisionPolynomials`].
pub fn division_polynomial<F: Field>(e: &Curve<F>, k: u64) -> Result<Poly<F::Elem>> {
    if k == 0 {
        return Err(Error::BadInput("division polynomial index must be positive".into()));
    }
    if k % e.field.characteristic() == 0 {
        return Err(Error::Unsupported("index divisible by the characteristic".into()));
    }
    Ok(DivisionPolynomials::new(e).get(k))
}

/// Monic polynomial whose roots are the x-coordinates of E[ℓ] \ {O}:
/// x³ + Ax + B for ℓ = 2, the monic f_ℓ for odd ℓ.
pub fn torsion_x_poly<F: Field>(e: &Curve<F>, ell: u64) -> Result<Poly<F::Elem>> {
    let ring = PolyRing::new(e.field.clone());
    if ell == 2 {
        let f = &e.field;
        return Ok(ring.from_coeffs(vec![e.b.clone(), e.a.clone(), f.zero(), f.one()]));
    }
    Ok(ring.monic(&division_polynomial(e, ell)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor::roots;
    use crate::arith::{build_tower, Embedding, Fp2};
    use crate::curves::{embed_point, Point};
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn degrees() {
        let f = Fp2::new(31).unwrap();
        let e = Curve::new(f, f.from_u64(3), f.from_u64(5)).unwrap();
        let mut d = DivisionPolynomials::new(&e);
        assert_eq!(d.get(3).deg(), 4);
        assert_eq!(d.get(5).deg(), 12);
        assert_eq!(d.get(7).deg(), 24);
        assert_eq!(d.get(6).deg(), 16);
        assert_eq!(d.get(11).deg(), 60);
        assert!(division_polynomial(&e, 31).is_err());
    }

    #[test]
    fn roots_are_torsion_x_coordinates() {
        // E(2) over F_{31²} after normalization has E[3] ⊂ E(F_{31⁴}) since (−31)² ≡ 1 (mod 3).
        let f = Fp2::new(31).unwrap();
        let e = crate::curves::supersingular_model(&f, &f.from_u64(2)).unwrap();
        let t = build_tower(31, 4).unwrap();
        let emb = Embedding::new(f, t.clone()).unwrap();
        let et = e.base_change(&emb);
        let ring = PolyRing::new(t.clone());
        let f3 = division_polynomial(&e, 3).unwrap();
        let f3t = PolyRing::new(f).map_coeffs(&ring, &f3, |c| emb.embed(c));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let xs = roots(&ring, &f3t, &mut rng);
        assert_eq!(xs.len(), 4);
        for x in &xs {
            let p = et.lift_x(x).unwrap();
            assert!(et.mul_u64(3, &p).is_infinity());
        }
        // conversely every point killed by 3 has its x among the roots
        for _ in 0..30 {
            let p = et.random_point(&mut rng);
            // #E(F_{31⁴}) = (31² − 1)², cofactor to the 3-part
            let q = et.mul_u64(960 * 960 / 9, &p);
            if let Point::Affine(x, _) = &q {
                assert!(xs.contains(x));
            }
        }
        let _ = embed_point(&emb, &Point::<[u64; 2]>::Infinity);
    }
}
