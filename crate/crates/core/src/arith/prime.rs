use alloc::vec;
use alloc::vec::Vec;

use super::field::{is_prime_u64, Field};
use crate::error::{Error, Result};

/// Largest supported characteristic; products of two reduced elements fit in a u64.
pub const MAX_CHARACTERISTIC: u64 = 1 << 32;

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || p >= MAX_CHARACTERISTIC || !is_prime_u64(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// Like `new` but also accepts 3; used by auxiliary computations only.
    pub(crate) fn new_small(p: u64) -> Result<Self> {
        if p == 3 {
            return Ok(PrimeField { p });
        }
        Self::new(p)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn red(&self, v: u64) -> u64 {
        v % self.p
    }

    #[inline]
    pub fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mulm(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn invm(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i64) as u64)
    }

    pub fn legendre_u64(&self, a: u64) -> i32 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.powm(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.addm(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.subm(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulm(*a, *b)
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        self.invm(*a)
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
    fn to_coeffs(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_coeffs(&self, c: &[u64]) -> u64 {
        c.first().copied().unwrap_or(0) % self.p
    }
    fn modulus_coeffs(&self) -> Vec<u64> {
        vec![0, 1]
    }
    fn legendre(&self, a: &u64) -> i32 {
        self.legendre_u64(*a)
    }
    fn pow_u64(&self, a: &u64, e: u64) -> u64 {
        self.powm(*a, e)
    }
}
