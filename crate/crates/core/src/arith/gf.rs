use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::factor::is_irreducible;
use super::field::Field;
use super::poly::PolyRing;
use super::prime::PrimeField;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    base: PrimeField,
    k: usize,
    /// Monic modulus, ascending, length k + 1.
    modulus: Vec<u64>,
}

/// F_{p^k} as F_p[t]/(m(t)) with m the least monic irreducible of degree k
/// in the base-p enumeration (constant coefficient least significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    inner: Arc<Inner>,
}

/// Builds the tower F_{p^k} with its deterministic modulus.
pub fn build_tower(p: u64, k: usize) -> Result<GaloisField> {
    GaloisField::new(p, k)
}

impl GaloisField {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Self::with_base(base, k)
    }

    pub(crate) fn with_base(base: PrimeField, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadInput("extension degree must be positive".into()));
        }
        let p = base.p();
        let ring = PolyRing::new(base);
        let mut n: u64 = 0;
        let modulus = loop {
            let mut c = Vec::with_capacity(k + 1);
            let mut m = n;
            for _ in 0..k {
                c.push(m % p);
                m /= p;
            }
            if m > 0 {
                return Err(Error::TooLarge("no irreducible polynomial found".into()));
            }
            c.push(1);
            if k == 1 || c[0] != 0 {
                let f = ring.from_coeffs(c.clone());
                if is_irreducible(&ring, &f) {
                    break c;
                }
            }
            n += 1;
        };
        Ok(GaloisField { inner: Arc::new(Inner { base, k, modulus }) })
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    fn reduce_full(&self, mut c: Vec<u64>) -> Vec<u64> {
        let k = self.inner.k;
        let f = &self.inner.base;
        let m = &self.inner.modulus;
        for top in (k..c.len()).rev() {
            let coef = c[top];
            if coef == 0 {
                continue;
            }
            for i in 0..k {
                c[top - k + i] = f.subm(c[top - k + i], f.mulm(coef, m[i]));
            }
            c[top] = 0;
        }
        c.truncate(k);
        c.resize(k, 0);
        c
    }
}

impl Field for GaloisField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.inner.base.p()
    }
    fn degree(&self) -> usize {
        self.inner.k
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.inner.k]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.inner.k];
        v[0] = 1;
        v
    }
    fn from_u64(&self, v: u64) -> Vec<u64> {
        let mut r = vec![0; self.inner.k];
        r[0] = v % self.characteristic();
        r
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.addm(*x, *y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.subm(*x, *y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.base;
        a.iter().map(|x| f.subm(0, *x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let k = self.inner.k;
        let p = self.characteristic();
        let mut c = vec![0u64; 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        self.reduce_full(c)
    }
    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let ring = PolyRing::new(self.inner.base);
        let m = ring.from_coeffs(self.inner.modulus.clone());
        let (g, s, _) = ring.xgcd(&ring.from_coeffs(a.clone()), &m);
        if !ring.is_one(&g) {
            return Err(Error::Integrity("tower modulus is reducible".into()));
        }
        let mut r = s.into_coeffs();
        r.resize(self.inner.k, 0);
        Ok(r)
    }
    fn frobenius(&self, a: &Vec<u64>) -> Vec<u64> {
        self.pow_u64(a, self.characteristic())
    }
    fn to_coeffs(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }
    fn from_coeffs(&self, c: &[u64]) -> Vec<u64> {
        let p = self.characteristic();
        let mut v: Vec<u64> = c.iter().map(|x| x % p).collect();
        if v.len() > self.inner.k {
            v = self.reduce_full(v);
        }
        v.resize(self.inner.k, 0);
        v
    }
    fn modulus_coeffs(&self) -> Vec<u64> {
        self.inner.modulus.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp2::Fp2;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn quadratic_modulus_matches_fp2() {
        for p in [31u64, 101, 103] {
            let g = build_tower(p, 2).unwrap();
            assert_eq!(g.modulus_coeffs(), Fp2::new(p).unwrap().modulus_coeffs());
        }
    }

    #[test]
    fn frobenius_has_order_k() {
        let g = build_tower(101, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let a = g.random(&mut rng);
            let mut b = a.clone();
            for _ in 0..12 {
                b = g.frobenius(&b);
            }
            assert_eq!(a, b);
        }
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let g = build_tower(31, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = g.random(&mut rng);
            let b = g.random(&mut rng);
            let c = g.random(&mut rng);
            assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
            assert_eq!(
                g.frobenius(&g.mul(&a, &b)),
                g.mul(&g.frobenius(&a), &g.frobenius(&b))
            );
            assert_eq!(g.frobenius(&g.add(&a, &b)), g.add(&g.frobenius(&a), &g.frobenius(&b)));
            if !g.is_zero(&a) {
                assert_eq!(g.mul(&a, &g.inv(&a).unwrap()), g.one());
                let s = g.square(&a);
                let r = g.sqrt(&s).unwrap();
                assert_eq!(g.square(&r), s);
            }
        }
    }
}
