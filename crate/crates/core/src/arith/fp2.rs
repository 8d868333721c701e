use alloc::vec;
use alloc::vec::Vec;

use super::field::Field;
use super::prime::PrimeField;
use crate::error::{Error, Result};

/// F_{p²} = F_p[t]/(t² + c1·t + c0), with the modulus chosen as the least
/// monic irreducible quadratic when coefficient vectors (c0, c1) are read as
/// base-p integers c0 + c1·p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    base: PrimeField,
    c0: u64,
    c1: u64,
}

/// Element a0 + a1·t.
pub type Fp2Elem = [u64; 2];

impl Fp2 {
    pub fn new(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        for n in 0..p * p {
            let (c0, c1) = (n % p, n / p);
            // t² + c1 t + c0 is irreducible iff c1² − 4c0 is a non-residue.
            let disc = base.subm(base.mulm(c1, c1), base.mulm(4, c0));
            if base.legendre_u64(disc) == -1 {
                return Ok(Fp2 { base, c0, c1 });
            }
        }
        unreachable!("a non-residue always exists")
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    /// Norm to F_p.
    pub fn norm(&self, a: &Fp2Elem) -> u64 {
        let f = &self.base;
        // N(a0 + a1 t) = a0² − c1 a0 a1 + c0 a1²
        let t0 = f.mulm(a[0], a[0]);
        let t1 = f.mulm(self.c1, f.mulm(a[0], a[1]));
        let t2 = f.mulm(self.c0, f.mulm(a[1], a[1]));
        f.addm(f.subm(t0, t1), t2)
    }

    pub fn from_base(&self, a: u64) -> Fp2Elem {
        [a % self.p(), 0]
    }

    /// The generator t.
    pub fn gen(&self) -> Fp2Elem {
        [0, 1]
    }
}

impl Field for Fp2 {
    type Elem = Fp2Elem;

    fn characteristic(&self) -> u64 {
        self.base.p()
    }
    fn degree(&self) -> usize {
        2
    }
    fn zero(&self) -> Fp2Elem {
        [0, 0]
    }
    fn one(&self) -> Fp2Elem {
        [1, 0]
    }
    fn from_u64(&self, v: u64) -> Fp2Elem {
        [v % self.p(), 0]
    }
    fn is_zero(&self, a: &Fp2Elem) -> bool {
        a[0] == 0 && a[1] == 0
    }
    #[inline]
    fn add(&self, a: &Fp2Elem, b: &Fp2Elem) -> Fp2Elem {
        [self.base.addm(a[0], b[0]), self.base.addm(a[1], b[1])]
    }
    #[inline]
    fn sub(&self, a: &Fp2Elem, b: &Fp2Elem) -> Fp2Elem {
        [self.base.subm(a[0], b[0]), self.base.subm(a[1], b[1])]
    }
    fn neg(&self, a: &Fp2Elem) -> Fp2Elem {
        self.sub(&[0, 0], a)
    }
    #[inline]
    fn mul(&self, a: &Fp2Elem, b: &Fp2Elem) -> Fp2Elem {
        let p = self.p();
        // products are < 2^64 since p < 2^32; accumulate with reductions
        let a0b0 = a[0] * b[0] % p;
        let a1b1 = a[1] * b[1] % p;
        let cross = (a[0] * b[1] % p + a[1] * b[0] % p) % p;
        // t² = −c1 t − c0
        let r0 = (a0b0 + p - self.c0 * a1b1 % p) % p;
        let r1 = (cross + p - self.c1 * a1b1 % p) % p;
        [r0, r1]
    }
    fn inv(&self, a: &Fp2Elem) -> Result<Fp2Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm(a);
        let ni = self.base.invm(n)?;
        let c = self.frobenius(a);
        Ok([self.base.mulm(c[0], ni), self.base.mulm(c[1], ni)])
    }
    fn frobenius(&self, a: &Fp2Elem) -> Fp2Elem {
        // t^p = −c1 − t
        let f = &self.base;
        [f.subm(a[0], f.mulm(a[1], self.c1)), f.subm(0, a[1])]
    }
    fn to_coeffs(&self, a: &Fp2Elem) -> Vec<u64> {
        vec![a[0], a[1]]
    }
    fn from_coeffs(&self, c: &[u64]) -> Fp2Elem {
        let p = self.p();
        [c.first().copied().unwrap_or(0) % p, c.get(1).copied().unwrap_or(0) % p]
    }
    fn modulus_coeffs(&self) -> Vec<u64> {
        vec![self.c0, self.c1, 1]
    }
    fn legendre(&self, a: &Fp2Elem) -> i32 {
        // a is a square in F_{p²} iff its norm is a square in F_p
        if self.is_zero(a) {
            0
        } else {
            self.base.legendre_u64(self.norm(a))
        }
    }
    fn pow_u64(&self, a: &Fp2Elem, mut e: u64) -> Fp2Elem {
        let mut base = *a;
        let mut acc = [1, 0];
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_choice() {
        assert_eq!(Fp2::new(31).unwrap().modulus_coeffs(), vec![1, 0, 1]);
        assert_eq!(Fp2::new(103).unwrap().modulus_coeffs(), vec![1, 0, 1]);
        // 101 = 1 mod 4, so t² + 1 is reducible; −2 is a non-residue mod 101
        assert_eq!(Fp2::new(101).unwrap().modulus_coeffs(), vec![2, 0, 1]);
    }

    #[test]
    fn frobenius_is_pth_power() {
        let f = Fp2::new(101).unwrap();
        for a in [[3u64, 28], [0, 1], [100, 55]] {
            assert_eq!(f.frobenius(&a), f.pow_u64(&a, 101));
            assert_eq!(f.frobenius(&f.frobenius(&a)), a);
        }
    }

    #[test]
    fn sqrt_and_inverse() {
        let f = Fp2::new(31).unwrap();
        for n in 1..961u64 {
            let a = f.nth_element(n);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            let sq = f.square(&a);
            let r = f.sqrt(&sq).unwrap();
            assert_eq!(f.square(&r), sq);
        }
        // squares are exactly half of the nonzero elements
        let squares = (1..961u64).filter(|&n| f.is_square(&f.nth_element(n))).count();
        assert_eq!(squares, 480);
    }

    #[test]
    fn encoding_roundtrip() {
        let f = Fp2::new(31).unwrap();
        let a = [3, 28];
        assert_eq!(f.encode(&a), "3,28");
        assert_eq!(f.decode("3,28").unwrap(), a);
        assert_eq!(f.decode("7").unwrap(), [7, 0]);
        assert!(f.decode("31").is_err());
        assert!(f.decode("1,2,3").is_err());
    }
}
