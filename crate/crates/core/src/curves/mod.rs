//! Short Weierstrass curves, points, j-invariants, division polynomials,
//! point counts and torsion bases.

mod count;
mod divpoly;
mod model;
mod torsion;

pub use count::{count_points, count_points_bounded, is_supersingular, DEFAULT_COUNT_BOUND};
pub use divpoly::{division_polynomial, torsion_x_poly, DivisionPolynomials};
pub use model::{automorphism_units, curve_from_j, frobenius_sign, supersingular_model};
pub use torsion::{torsion_basis, torsion_degree, TorsionBasis};

use num_bigint::BigUint;
use rand_core::RngCore;

use crate::arith::{Embedding, Field};
use crate::error::{Error, Result};

/// y² = x³ + A·x + B.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve<F: Field> {
    pub field: F,
    pub a: F::Elem,
    pub b: F::Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

impl<E> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }
}

impl<F: Field> Curve<F> {
    pub fn new(field: F, a: F::Elem, b: F::Elem) -> Result<Self> {
        let c = Curve { field, a, b };
        if c.field.is_zero(&c.discriminant()) {
            return Err(Error::BadInput("singular curve".into()));
        }
        Ok(c)
    }

    /// 4A³ + 27B².
    pub fn discriminant(&self) -> F::Elem {
        let f = &self.field;
        let a3 = f.mul(&f.square(&self.a), &self.a);
        f.add(&f.mul_u64(&a3, 4), &f.mul_u64(&f.square(&self.b), 27))
    }

    /// 1728·4A³/(4A³ + 27B²).
    pub fn j_invariant(&self) -> F::Elem {
        let f = &self.field;
        let a3 = f.mul(&f.square(&self.a), &self.a);
        let num = f.mul_u64(&a3, 6912);
        f.div(&num, &self.discriminant()).expect("nonsingular curve")
    }

    /// x³ + A·x + B.
    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let x2 = f.square(x);
        f.add(&f.mul(&f.add(&x2, &self.a), x), &self.b)
    }

    pub fn contains(&self, p: &Point<F::Elem>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.field.square(y) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), self.field.neg(y)),
        }
    }

    pub fn add(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        let f = &self.field;
        match (p, q) {
            (Point::Infinity, _) => q.clone(),
            (_, Point::Infinity) => p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                let lambda = if x1 == x2 {
                    if f.is_zero(&f.add(y1, y2)) {
                        return Point::Infinity;
                    }
                    let num = f.add(&f.mul_u64(&f.square(x1), 3), &self.a);
                    f.div(&num, &f.add(y1, y1)).expect("y ≠ 0")
                } else {
                    f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("x1 ≠ x2")
                };
                let x3 = f.sub(&f.sub(&f.square(&lambda), x1), x2);
                let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
                Point::Affine(x3, y3)
            }
        }
    }

    pub fn double(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        self.add(p, p)
    }

    pub fn sub(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        self.add(p, &self.neg(q))
    }

    pub fn mul_u64(&self, k: u64, p: &Point<F::Elem>) -> Point<F::Elem> {
        let mut acc = Point::Infinity;
        for i in (0..64 - k.leading_zeros()).rev() {
            acc = self.double(&acc);
            if (k >> i) & 1 == 1 {
                acc = self.add(&acc, p);
            }
        }
        acc
    }

    pub fn mul_i64(&self, k: i64, p: &Point<F::Elem>) -> Point<F::Elem> {
        let r = self.mul_u64(k.unsigned_abs(), p);
        if k < 0 {
            self.neg(&r)
        } else {
            r
        }
    }

    pub fn mul_big(&self, k: &BigUint, p: &Point<F::Elem>) -> Point<F::Elem> {
        let mut acc = Point::Infinity;
        for i in (0..k.bits()).rev() {
            acc = self.double(&acc);
            if k.bit(i) {
                acc = self.add(&acc, p);
            }
        }
        acc
    }

    /// The point with the given x-coordinate and canonical y, if rational.
    pub fn lift_x(&self, x: &F::Elem) -> Option<Point<F::Elem>> {
        let r = self.rhs(x);
        self.field.sqrt(&r).ok().map(|y| Point::Affine(x.clone(), y))
    }

    /// A uniformly chosen x with a random sign of y; never the point at infinity.
    pub fn random_point<R: RngCore>(&self, rng: &mut R) -> Point<F::Elem> {
        loop {
            let x = self.field.random(rng);
            if let Some(Point::Affine(x, y)) = self.lift_x(&x) {
                let y = if rng.next_u32() & 1 == 1 { self.field.neg(&y) } else { y };
                return Point::Affine(x, y);
            }
        }
    }

    /// Order of a point, given a multiple `n` of it.
    pub fn order_dividing(&self, p: &Point<F::Elem>, n: u64) -> u64 {
        let mut n = n;
        let mut d = 2;
        let mut m = n;
        let mut primes = alloc::vec::Vec::new();
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for q in primes {
            while n % q == 0 && self.mul_u64(n / q, p).is_infinity() {
                n /= q;
            }
        }
        n
    }

    pub fn base_change<T: Field>(&self, e: &Embedding<F, T>) -> Curve<T> {
        Curve { field: e.target().clone(), a: e.embed(&self.a), b: e.embed(&self.b) }
    }
}

pub fn embed_point<F: Field, T: Field>(e: &Embedding<F, T>, p: &Point<F::Elem>) -> Point<T::Elem> {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(e.embed(x), e.embed(y)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Fp2, PrimeField};
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn group_law_basics() {
        let f = Fp2::new(31).unwrap();
        let e = Curve::new(f, f.one(), f.zero()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let p = e.random_point(&mut rng);
            let q = e.random_point(&mut rng);
            assert!(e.contains(&p));
            assert!(e.add(&p, &e.neg(&p)).is_infinity());
            assert_eq!(e.mul_u64(1, &p), p);
            assert_eq!(e.add(&p, &q), e.add(&q, &p));
            let r = e.random_point(&mut rng);
            assert_eq!(e.add(&e.add(&p, &q), &r), e.add(&p, &e.add(&q, &r)));
            // #E(F_{31²}) = 32², so 32·P = O
            assert!(e.mul_u64(32, &p).is_infinity());
        }
    }

    #[test]
    fn order_found_by_enumeration() {
        let f = PrimeField::new(101).unwrap();
        let e = Curve::new(f, 3, 7).unwrap();
        let n = count_points(&e).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = e.random_point(&mut rng);
        let mut k = 1u64;
        let mut q = p.clone();
        while !q.is_infinity() {
            q = e.add(&q, &p);
            k += 1;
        }
        assert_eq!(e.order_dividing(&p, n), k);
        assert_eq!(n % k, 0);
    }

    #[test]
    fn j_of_special_models() {
        let f = Fp2::new(31).unwrap();
        assert_eq!(Curve::new(f, f.one(), f.zero()).unwrap().j_invariant(), f.from_u64(1728));
        assert_eq!(Curve::new(f, f.zero(), f.one()).unwrap().j_invariant(), f.zero());
    }
}
