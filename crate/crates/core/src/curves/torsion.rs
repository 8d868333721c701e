use alloc::format;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand_core::RngCore;

use super::{Curve, Point};
use crate::arith::{build_tower, Embedding, Field, GaloisField};
use crate::error::{Error, Result};

/// A basis of E[m] for a prime m, over the smallest even-degree extension
/// where it is rational.
#[derive(Clone, Debug)]
pub struct TorsionBasis<F: Field> {
    pub m: u64,
    pub embedding: Embedding<F, GaloisField>,
    pub curve: Curve<GaloisField>,
    pub p: Point<alloc::vec::Vec<u64>>,
    pub q: Point<alloc::vec::Vec<u64>>,
}

/// Smallest k ≥ 1 with (−p)^k ≡ 1 (mod m).
pub fn torsion_degree(p: u64, m: u64) -> Option<u64> {
    if m < 2 || p % m == 0 {
        return None;
    }
    let r = (m - p % m) % m;
    let mut acc = r;
    for k in 1..=m {
        if acc == 1 % m {
            return Some(k);
        }
        acc = (acc as u128 * r as u128 % m as u128) as u64;
    }
    None
}

/// Basis of E[m] for a curve over F_{p²} with Frobenius −p. Over F_{p^{2k}}
/// such a curve has (p^k − (−1)^k)² points, and E[m] is rational as soon as
/// m divides p^k − (−1)^k.
pub fn torsion_basis<F: Field, R: RngCore>(e: &Curve<F>, m: u64, rng: &mut R) -> Result<TorsionBasis<F>> {
    let p = e.field.characteristic();
    if e.field.degree() != 2 {
        return Err(Error::Unsupported("torsion bases are built over F_{p²} curves".into()));
    }
    if !crate::arith::is_prime_u64(m) || m == p {
        return Err(Error::BadInput(format!("torsion order {} must be a prime other than p", m)));
    }
    let k = torsion_degree(p, m).ok_or_else(|| Error::BadInput("no torsion degree".into()))?;
    if 2 * k > 48 {
        return Err(Error::TooLarge(format!("E[{}] needs an extension of degree {}", m, 2 * k)));
    }
    let big = build_tower(p, 2 * k as usize)?;
    let emb = Embedding::new(e.field.clone(), big.clone())?;
    let ec = e.base_change(&emb);
    let pk = num_traits::pow(BigUint::from(p), k as usize);
    let n = if k % 2 == 0 { pk - BigUint::one() } else { pk + BigUint::one() };
    let mb = BigUint::from(m);
    let mut cof = n.clone();
    while (&cof % &mb).is_zero() {
        cof /= &mb;
    }
    let find = |rng: &mut R| -> Point<alloc::vec::Vec<u64>> {
        loop {
            let pt = ec.mul_big(&cof, &ec.random_point(rng));
            if pt.is_infinity() {
                continue;
            }
            // reduce an element of order m^i (i ≥ 1) to order m
            let mut q = pt;
            loop {
                let next = ec.mul_u64(m, &q);
                if next.is_infinity() {
                    return q;
                }
                q = next;
            }
        }
    };
    let bp = find(rng);
    for _ in 0..256 {
        let cand = find(rng);
        let mut inside = false;
        let mut acc = Point::Infinity;
        for _ in 0..m {
            acc = ec.add(&acc, &bp);
            if acc == cand {
                inside = true;
                break;
            }
        }
        if !inside {
            return Ok(TorsionBasis { m, embedding: emb, curve: ec, p: bp, q: cand });
        }
    }
    Err(Error::Integrity(format!("E[{}] is not fully rational where expected", m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp2;
    use crate::curves::supersingular_model;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn degree_rule() {
        assert_eq!(torsion_degree(31, 2), Some(1));
        assert_eq!(torsion_degree(31, 3), Some(2));
        assert_eq!(torsion_degree(31, 5), Some(2));
        assert_eq!(torsion_degree(103, 13), Some(1));
        assert_eq!(torsion_degree(31, 31), None);
    }

    #[test]
    fn basis_is_independent_and_killed_by_m() {
        let f = Fp2::new(31).unwrap();
        let e = supersingular_model(&f, &f.from_u64(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in [2u64, 3, 5, 7] {
            let b = torsion_basis(&e, m, &mut rng).unwrap();
            let c = &b.curve;
            assert!(c.contains(&b.p) && c.contains(&b.q));
            assert!(c.mul_u64(m, &b.p).is_infinity());
            assert!(c.mul_u64(m, &b.q).is_infinity());
            assert!(!b.p.is_infinity() && !b.q.is_infinity());
            let mut acc = Point::Infinity;
            for _ in 0..m {
                acc = c.add(&acc, &b.p);
                assert_ne!(acc, b.q);
            }
        }
    }
}
