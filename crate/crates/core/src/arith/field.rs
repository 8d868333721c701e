use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{Debug, Write};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::error::{Error, Result};

/// A finite field of odd characteristic, used as a context object.
///
/// Elements carry no reference to their field; every operation goes
/// through the field value. Field values are cheap to clone.
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// The p-th power map.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;

    /// Coefficients over F_p in the power basis of the tower generator.
    fn to_coeffs(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_coeffs(&self, c: &[u64]) -> Self::Elem;
    /// Monic defining polynomial over F_p, ascending coefficients.
    fn modulus_coeffs(&self) -> Vec<u64>;

    fn from_i64(&self, v: i64) -> Self::Elem {
        let p = self.characteristic();
        let r = v.rem_euclid(p as i64) as u64;
        self.from_u64(r)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn mul_u64(&self, a: &Self::Elem, k: u64) -> Self::Elem {
        self.mul(a, &self.from_u64(k % self.characteristic()))
    }

    fn pow_u64(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Number of elements, p^k.
    fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.characteristic()), self.degree())
    }

    fn random<R: RngCore>(&self, rng: &mut R) -> Self::Elem {
        let p = self.characteristic();
        let c: Vec<u64> = (0..self.degree()).map(|_| rng.next_u64() % p).collect();
        self.from_coeffs(&c)
    }

    /// The n-th element in the enumeration by base-p digits of n.
    fn nth_element(&self, mut n: u64) -> Self::Elem {
        let p = self.characteristic();
        let mut c = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            c.push(n % p);
            n /= p;
        }
        self.from_coeffs(&c)
    }

    /// Quadratic character: 0, 1 or -1.
    fn legendre(&self, a: &Self::Elem) -> i32 {
        if self.is_zero(a) {
            return 0;
        }
        let e = (self.order() - 1u32) >> 1;
        if self.is_one(&self.pow(a, &e)) {
            1
        } else {
            -1
        }
    }

    fn is_square(&self, a: &Self::Elem) -> bool {
        self.legendre(a) >= 0
    }

    /// Square root; of the two roots, the one whose coefficient vector is
    /// lexicographically smaller is returned.
    fn sqrt(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Ok(self.zero());
        }
        if !self.is_square(a) {
            return Err(Error::NotASquare);
        }
        let q = self.order();
        let r = if (&q % 4u32) == BigUint::from(3u32) {
            self.pow(a, &((q + 1u32) >> 2))
        } else {
            tonelli_shanks(self, a, &q)?
        };
        Ok(self.canonical_root(r))
    }

    /// Picks the canonical representative of {r, -r}.
    fn canonical_root(&self, r: Self::Elem) -> Self::Elem {
        let n = self.neg(&r);
        if self.canonical_cmp(&n, &r) == Ordering::Less {
            n
        } else {
            r
        }
    }

    /// Lexicographic order on coefficient vectors, constant term first.
    fn canonical_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        self.to_coeffs(a).cmp(&self.to_coeffs(b))
    }

    /// Comma separated ascending coefficient list, e.g. "3,28".
    fn encode(&self, a: &Self::Elem) -> String {
        let mut s = String::new();
        for (i, c) in self.to_coeffs(a).iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", c);
        }
        s
    }

    fn decode(&self, s: &str) -> Result<Self::Elem> {
        let p = self.characteristic();
        let mut c = Vec::new();
        for part in s.split(',') {
            let v: u64 = part
                .trim()
                .parse()
                .map_err(|_| Error::BadInput(alloc::format!("bad field element '{}'", s)))?;
            if v >= p {
                return Err(Error::BadInput(alloc::format!("coefficient {} >= p", v)));
            }
            c.push(v);
        }
        if c.is_empty() || c.len() > self.degree() {
            return Err(Error::BadInput(alloc::format!("bad field element '{}'", s)));
        }
        c.resize(self.degree(), 0);
        Ok(self.from_coeffs(&c))
    }

    /// Whether the element lies in the prime field.
    fn in_prime_field(&self, a: &Self::Elem) -> bool {
        self.to_coeffs(a).iter().skip(1).all(|&c| c == 0)
    }
}

fn tonelli_shanks<F: Field + ?Sized>(f: &F, a: &F::Elem, q: &BigUint) -> Result<F::Elem> {
    let qm1 = q - 1u32;
    let s = qm1.trailing_zeros().unwrap_or(0);
    let t = &qm1 >> s;
    let mut n = 1u64;
    let z = loop {
        let cand = f.nth_element(n);
        if f.legendre(&cand) == -1 {
            break cand;
        }
        n += 1;
    };
    let mut m = s;
    let mut c = f.pow(&z, &t);
    let mut tt = f.pow(a, &t);
    let mut r = f.pow(a, &((&t + 1u32) >> 1));
    while !f.is_one(&tt) {
        let mut i = 0u64;
        let mut probe = tt.clone();
        while !f.is_one(&probe) {
            probe = f.square(&probe);
            i += 1;
            if i == m {
                return Err(Error::NotASquare);
            }
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = f.square(&b);
        }
        m = i;
        c = f.square(&b);
        tt = f.mul(&tt, &c);
        r = f.mul(&r, &b);
    }
    Ok(r)
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Odd primes in increasing order starting at 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime_u64(n))
}

/// Integer square root (floor) of a big integer.
pub fn isqrt_big(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x = n.sqrt();
    while &x * &x > *n {
        x -= BigUint::one();
    }
    x
}
