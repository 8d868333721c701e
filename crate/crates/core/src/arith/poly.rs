use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree.
/// The coefficient list never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    c: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.c.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.c.get(i)
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }
}

/// Polynomial arithmetic over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    f: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(f: F) -> Self {
        PolyRing { f }
    }

    pub fn field(&self) -> &F {
        &self.f
    }

    pub fn from_coeffs(&self, mut c: Vec<F::Elem>) -> Poly<F::Elem> {
        while let Some(l) = c.last() {
            if self.f.is_zero(l) {
                c.pop();
            } else {
                break;
            }
        }
        Poly { c }
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { c: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.f.one())
    }

    pub fn x(&self) -> Poly<F::Elem> {
        Poly { c: vec![self.f.zero(), self.f.one()] }
    }

    pub fn constant(&self, a: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![a])
    }

    /// x − a
    pub fn linear(&self, a: &F::Elem) -> Poly<F::Elem> {
        Poly { c: vec![self.f.neg(a), self.f.one()] }
    }

    pub fn monomial(&self, a: F::Elem, d: usize) -> Poly<F::Elem> {
        let mut c = vec![self.f.zero(); d + 1];
        c[d] = a;
        self.from_coeffs(c)
    }

    pub fn is_one(&self, a: &Poly<F::Elem>) -> bool {
        a.c.len() == 1 && self.f.is_one(&a.c[0])
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.c.len().max(b.c.len());
        let z = self.f.zero();
        let c = (0..n)
            .map(|i| self.f.add(a.c.get(i).unwrap_or(&z), b.c.get(i).unwrap_or(&z)))
            .collect();
        self.from_coeffs(c)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.c.len().max(b.c.len());
        let z = self.f.zero();
        let c = (0..n)
            .map(|i| self.f.sub(a.c.get(i).unwrap_or(&z), b.c.get(i).unwrap_or(&z)))
            .collect();
        self.from_coeffs(c)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { c: a.c.iter().map(|x| self.f.neg(x)).collect() }
    }

    pub fn scale(&self, a: &Poly<F::Elem>, s: &F::Elem) -> Poly<F::Elem> {
        if self.f.is_zero(s) {
            return self.zero();
        }
        Poly { c: a.c.iter().map(|x| self.f.mul(x, s)).collect() }
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut c = vec![self.f.zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if self.f.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                c[i + j] = self.f.add(&c[i + j], &self.f.mul(x, y));
            }
        }
        self.from_coeffs(c)
    }

    pub fn square(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, mut e: u64) -> Poly<F::Elem> {
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

    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let lb = b.lead().ok_or(Error::DivisionByZero)?;
        let lbi = self.f.inv(lb)?;
        if a.c.len() < b.c.len() {
            return Ok((self.zero(), a.clone()));
        }
        let db = b.c.len() - 1;
        let mut r = a.c.clone();
        let mut q = vec![self.f.zero(); a.c.len() - db];
        for k in (0..q.len()).rev() {
            let coef = self.f.mul(&r[k + db], &lbi);
            if self.f.is_zero(&coef) {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                r[k + j] = self.f.sub(&r[k + j], &self.f.mul(&coef, bj));
            }
            q[k] = coef;
        }
        r.truncate(db);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Integrity("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lead() {
            None => self.zero(),
            Some(l) => {
                let li = self.f.inv(l).expect("nonzero lead");
                self.scale(a, &li)
            }
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = self.rem(&r0, &r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
        }
        self.monic(&r0)
    }

    /// Returns (g, s, t) with g = s·a + t·b and g monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero divisor");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.f.inv(l).expect("nonzero lead");
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.c.len() <= 1 {
            return self.zero();
        }
        let c = a.c[1..]
            .iter()
            .enumerate()
            .map(|(i, x)| self.f.mul_u64(x, (i + 1) as u64))
            .collect();
        self.from_coeffs(c)
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        let mut acc = self.f.zero();
        for c in a.c.iter().rev() {
            acc = self.f.add(&self.f.mul(&acc, x), c);
        }
        acc
    }

    /// f(g), fully expanded.
    pub fn compose(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.zero();
        for c in f.c.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &self.constant(c.clone()));
        }
        acc
    }

    /// f(g) mod h by Horner's rule, reducing after every step.
    pub fn compose_mod(
        &self,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
        h: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>> {
        let g = self.rem(g, h)?;
        let mut acc = self.zero();
        for c in f.c.iter().rev() {
            acc = self.rem(&self.add(&self.mul(&acc, &g), &self.constant(c.clone())), h)?;
        }
        Ok(acc)
    }

    pub fn mulmod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        h: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>> {
        self.rem(&self.mul(a, b), h)
    }

    pub fn powmod(
        &self,
        a: &Poly<F::Elem>,
        e: &BigUint,
        h: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>> {
        let base = self.rem(a, h)?;
        let mut acc = self.rem(&self.one(), h)?;
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, h)?;
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, h)?;
            }
        }
        Ok(acc)
    }

    /// x^(|F|^k) mod h, by repeated Frobenius powering.
    pub fn frobenius_power_x(&self, k: usize, h: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let q = self.f.order();
        let mut acc = self.rem(&self.x(), h)?;
        for _ in 0..k {
            acc = self.powmod(&acc, &q, h)?;
        }
        Ok(acc)
    }

    pub fn from_roots(&self, roots: &[F::Elem]) -> Poly<F::Elem> {
        roots
            .iter()
            .fold(self.one(), |acc, r| self.mul(&acc, &self.linear(r)))
    }

    /// Apply a coefficient map, e.g. Frobenius or an embedding.
    pub fn map_coeffs<G: Field>(
        &self,
        target: &PolyRing<G>,
        a: &Poly<F::Elem>,
        m: impl Fn(&F::Elem) -> G::Elem,
    ) -> Poly<G::Elem> {
        target.from_coeffs(a.c.iter().map(m).collect())
    }
}

/// Raised when a residue-ring element is a zero divisor: carries a nontrivial
/// monic factor of the modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split<E>(pub Poly<E>);

/// The ring F[x]/(h).
#[derive(Clone, Debug)]
pub struct ResidueRing<F: Field> {
    pub ring: PolyRing<F>,
    pub h: Poly<F::Elem>,
}

impl<F: Field> ResidueRing<F> {
    pub fn new(ring: PolyRing<F>, h: Poly<F::Elem>) -> Self {
        let h = ring.monic(&h);
        ResidueRing { ring, h }
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn reduce(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.rem(a, &self.h).expect("modulus is nonzero")
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.add(a, b)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.sub(a, b)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.neg(a)
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.reduce(&self.ring.mul(a, b))
    }

    pub fn scalar(&self, a: &Poly<F::Elem>, s: &F::Elem) -> Poly<F::Elem> {
        self.ring.scale(a, s)
    }

    /// Inverse, or the nontrivial factor gcd(a, h) when a is a zero divisor.
    /// A zero input yields `Split(h)`.
    pub fn inv(&self, a: &Poly<F::Elem>) -> core::result::Result<Poly<F::Elem>, Split<F::Elem>> {
        let (g, s, _) = self.ring.xgcd(a, &self.h);
        if self.ring.is_one(&g) {
            Ok(self.reduce(&s))
        } else {
            Err(Split(g))
        }
    }

    pub fn div(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> core::result::Result<Poly<F::Elem>, Split<F::Elem>> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// f(g) in the residue ring.
    pub fn compose(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.compose_mod(f, g, &self.h).expect("modulus is nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::prime::PrimeField;

    fn ring() -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(31).unwrap())
    }

    #[test]
    fn gcd_of_simple_polys() {
        let r = ring();
        let a = r.from_coeffs(vec![30, 0, 1]); // x² − 1
        let b = r.from_coeffs(vec![30, 1]); // x − 1
        assert_eq!(r.gcd(&a, &b), b);
    }

    #[test]
    fn compose_mod_x_cubed() {
        let r = ring();
        let f = r.from_coeffs(vec![0, 0, 1]);
        let g = r.from_coeffs(vec![1, 1]);
        let h = r.from_coeffs(vec![0, 0, 0, 1]);
        assert_eq!(r.compose_mod(&f, &g, &h).unwrap(), r.from_coeffs(vec![1, 2, 1]));
    }

    #[test]
    fn xgcd_combination() {
        let r = ring();
        let a = r.from_coeffs(vec![5, 3, 0, 7, 1]);
        let b = r.from_coeffs(vec![2, 9, 4]);
        let (g, s, t) = r.xgcd(&a, &b);
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
        assert!(r.rem(&a, &g).unwrap().is_zero());
        assert!(r.rem(&b, &g).unwrap().is_zero());
    }

    #[test]
    fn divrem_by_zero_fails() {
        let r = ring();
        assert_eq!(r.divrem(&r.one(), &r.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn residue_inverse_and_split() {
        let r = ring();
        // h = (x − 1)(x − 2)
        let h = r.from_roots(&[1, 2]);
        let q = ResidueRing::new(r.clone(), h);
        let a = r.from_coeffs(vec![0, 1]);
        let ai = q.inv(&a).unwrap();
        assert!(r.is_one(&q.mul(&a, &ai)));
        let z = r.linear(&1);
        assert_eq!(q.inv(&z), Err(Split(r.linear(&1))));
    }
}
