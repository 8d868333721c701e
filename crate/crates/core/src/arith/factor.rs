use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand_core::RngCore;

use super::field::Field;
use super::poly::{Poly, PolyRing};

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> bool {
    let k = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(k) => k,
    };
    let x = ring.x();
    let xq = match ring.frobenius_power_x(k, f) {
        Ok(v) => v,
        Err(_) => return false,
    };
    if !ring.sub(&xq, &ring.rem(&x, f).unwrap()).is_zero() {
        return false;
    }
    for r in prime_divisors(k) {
        let t = ring.frobenius_power_x(k / r, f).unwrap();
        let g = ring.gcd(&ring.sub(&t, &x), f);
        if !ring.is_one(&g) {
            return false;
        }
    }
    true
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// pairs (d, product of all irreducible factors of degree d).
pub fn distinct_degree<F: Field>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
) -> Vec<(usize, Poly<F::Elem>)> {
    let mut out = Vec::new();
    let mut rest = ring.monic(f);
    let q = ring.field().order();
    let x = ring.x();
    let mut h = ring.rem(&x, &rest).unwrap_or_else(|_| ring.zero());
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = ring.powmod(&h, &q, &rest).unwrap();
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if !ring.is_one(&g) {
            rest = ring.div_exact(&rest, &g).unwrap();
            h = ring.rem(&h, &rest).unwrap_or_else(|_| ring.zero());
            out.push((d, g));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    out
}

fn random_poly<F: Field, R: RngCore>(
    ring: &PolyRing<F>,
    deg_bound: usize,
    rng: &mut R,
) -> Poly<F::Elem> {
    let c = (0..deg_bound).map(|_| ring.field().random(rng)).collect();
    ring.from_coeffs(c)
}

/// Cantor–Zassenhaus splitting of a monic product of distinct irreducibles
/// of common degree d. Output is sorted.
pub fn equal_degree<F: Field, R: RngCore>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    d: usize,
    rng: &mut R,
) -> Vec<Poly<F::Elem>>
where
    F::Elem: Ord,
{
    let f = ring.monic(f);
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f];
    }
    let qd = num_traits::pow(ring.field().order(), d);
    let e: BigUint = (qd - BigUint::one()) >> 1;
    loop {
        let a = random_poly(ring, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = ring.powmod(&a, &e, &f).unwrap();
        let g = ring.gcd(&ring.sub(&b, &ring.one()), &f);
        if g.deg() > 0 && g.deg() < n {
            let h = ring.div_exact(&f, &g).unwrap();
            let mut out = equal_degree(ring, &g, d, rng);
            out.extend(equal_degree(ring, &h, d, rng));
            out.sort();
            return out;
        }
    }
}

/// All monic irreducible factors of a squarefree polynomial, sorted by
/// (degree, coefficients).
pub fn factor_squarefree<F: Field, R: RngCore>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    rng: &mut R,
) -> Vec<Poly<F::Elem>>
where
    F::Elem: Ord,
{
    let mut out = Vec::new();
    for (d, g) in distinct_degree(ring, f) {
        out.extend(equal_degree(ring, &g, d, rng));
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.cmp(b)));
    out
}

/// One irreducible factor of degree at most `max_degree`, if any.
pub fn irreducible_factor<F: Field, R: RngCore>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    max_degree: usize,
    rng: &mut R,
) -> Option<Poly<F::Elem>>
where
    F::Elem: Ord,
{
    let sf = squarefree_part(ring, f);
    for (d, g) in distinct_degree(ring, &sf) {
        if d <= max_degree {
            return equal_degree(ring, &g, d, rng).into_iter().next();
        }
    }
    None
}

/// f / gcd(f, f'); exact for polynomials of degree below the characteristic.
pub fn squarefree_part<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    let g = ring.gcd(f, &ring.derivative(f));
    ring.monic(&ring.div_exact(f, &g).unwrap())
}

/// Distinct roots in the field, in canonical order.
pub fn roots<F: Field, R: RngCore>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    rng: &mut R,
) -> Vec<F::Elem>
where
    F::Elem: Ord,
{
    if f.deg() == 0 {
        return Vec::new();
    }
    let f = ring.monic(f);
    let q = ring.field().order();
    let xq = ring.powmod(&ring.x(), &q, &f).unwrap();
    let g = ring.gcd(&ring.sub(&xq, &ring.x()), &f);
    let mut out: Vec<F::Elem> = equal_degree(ring, &g, 1, rng)
        .into_iter()
        .map(|lin| ring.field().neg(&lin.coeffs()[0]))
        .collect();
    let fld = ring.field().clone();
    out.sort_by(|a, b| fld.canonical_cmp(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp2::Fp2;
    use crate::arith::prime::PrimeField;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn roots_match_brute_force() {
        let f = Fp2::new(31).unwrap();
        let ring = PolyRing::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x³ + x over F_{31²}: roots 0, ±i
        let poly = ring.from_coeffs(vec![[0, 0], [1, 0], [0, 0], [1, 0]]);
        let r = roots(&ring, &poly, &mut rng);
        let brute: Vec<_> = (0..961u64)
            .map(|n| f.nth_element(n))
            .filter(|x| f.is_zero(&ring.eval(&poly, x)))
            .collect();
        assert_eq!(r.len(), brute.len());
        for x in brute {
            assert!(r.contains(&x));
        }
    }

    #[test]
    fn factorization_multiplies_back() {
        let f = PrimeField::new(101).unwrap();
        let ring = PolyRing::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let poly = ring.from_coeffs(vec![7, 3, 0, 11, 5, 0, 1]);
        let sf = squarefree_part(&ring, &poly);
        let fs = factor_squarefree(&ring, &sf, &mut rng);
        let prod = fs.iter().fold(ring.one(), |a, b| ring.mul(&a, b));
        assert_eq!(prod, ring.monic(&sf));
        for g in &fs {
            assert!(is_irreducible(&ring, g));
        }
    }

    #[test]
    fn rabin_rejects_products() {
        let f = PrimeField::new(31).unwrap();
        let ring = PolyRing::new(f);
        let a = ring.from_coeffs(vec![1, 0, 1]); // x² + 1, irreducible mod 31
        assert!(is_irreducible(&ring, &a));
        assert!(!is_irreducible(&ring, &ring.mul(&a, &a)));
        assert!(!is_irreducible(&ring, &ring.from_roots(&[1, 2])));
    }
}
