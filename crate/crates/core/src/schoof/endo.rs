use alloc::vec;

use crate::arith::{Field, Poly, PolyRing, ResidueRing, Split};
use crate::curves::Curve;
use crate::isogeny::{IsogenyChain, IsogenyMap};

type SplitResult<T, E> = core::result::Result<T, Split<E>>;

/// An endomorphism restricted to the points whose x-coordinate is a root of
/// h: either zero or (x, y) ↦ (u(x), y·v(x)) with u, v taken mod h and y²
/// replaced by x³ + Ax + B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endo<E> {
    Zero,
    Map { u: Poly<E>, v: Poly<E> },
}

/// Arithmetic on [`Endo`] values of one curve modulo one polynomial h.
#[derive(Clone, Debug)]
pub struct EndoRing<F: Field> {
    pub rr: ResidueRing<F>,
    a: F::Elem,
    rhs: Poly<F::Elem>,
}

impl<F: Field> EndoRing<F> {
    pub fn new(e: &Curve<F>, h: &Poly<F::Elem>) -> Self {
        let f = &e.field;
        let ring = PolyRing::new(f.clone());
        let rr = ResidueRing::new(ring.clone(), h.clone());
        let rhs = rr.reduce(&ring.from_coeffs(vec![e.b.clone(), e.a.clone(), f.zero(), f.one()]));
        EndoRing { rr, a: e.a.clone(), rhs }
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        &self.rr.h
    }

    pub fn identity(&self) -> Endo<F::Elem> {
        let r = &self.rr.ring;
        Endo::Map { u: self.rr.reduce(&r.x()), v: self.rr.reduce(&r.one()) }
    }

    pub fn neg(&self, p: &Endo<F::Elem>) -> Endo<F::Elem> {
        match p {
            Endo::Zero => Endo::Zero,
            Endo::Map { u, v } => Endo::Map { u: u.clone(), v: self.rr.neg(v) },
        }
    }

    pub fn add(&self, p: &Endo<F::Elem>, q: &Endo<F::Elem>) -> SplitResult<Endo<F::Elem>, F::Elem> {
        let rr = &self.rr;
        let (u1, v1, u2, v2) = match (p, q) {
            (Endo::Zero, _) => return Ok(q.clone()),
            (_, Endo::Zero) => return Ok(p.clone()),
            (Endo::Map { u: u1, v: v1 }, Endo::Map { u: u2, v: v2 }) => (u1, v1, u2, v2),
        };
        if u1 == u2 {
            if v1 == v2 {
                return self.double(p);
            }
            let s = rr.add(v1, v2);
            if s.is_zero() {
                return Ok(Endo::Zero);
            }
            // x agrees everywhere but y agrees only on part of the points
            let g = rr.ring.gcd(&rr.sub(v1, v2), &rr.h);
            return Err(Split(g));
        }
        let lam = rr.div(&rr.sub(v2, v1), &rr.sub(u2, u1))?;
        let x3 = rr.sub(&rr.sub(&rr.mul(&self.rhs, &rr.mul(&lam, &lam)), u1), u2);
        let v3 = rr.sub(&rr.mul(&lam, &rr.sub(u1, &x3)), v1);
        Ok(Endo::Map { u: x3, v: v3 })
    }

    pub fn double(&self, p: &Endo<F::Elem>) -> SplitResult<Endo<F::Elem>, F::Elem> {
        let rr = &self.rr;
        let (u, v) = match p {
            Endo::Zero => return Ok(Endo::Zero),
            Endo::Map { u, v } => (u, v),
        };
        if v.is_zero() {
            return Ok(Endo::Zero);
        }
        let f = rr.field();
        let num = rr.add(&rr.scalar(&rr.mul(u, u), &f.from_u64(3)), &rr.reduce(&rr.ring.constant(self.a.clone())));
        let den = rr.scalar(&rr.mul(&self.rhs, v), &f.from_u64(2));
        let lam = rr.div(&num, &den)?;
        let x3 = rr.sub(&rr.mul(&self.rhs, &rr.mul(&lam, &lam)), &rr.scalar(u, &f.from_u64(2)));
        let v3 = rr.sub(&rr.mul(&lam, &rr.sub(u, &x3)), v);
        Ok(Endo::Map { u: x3, v: v3 })
    }

    pub fn mul_u64(&self, k: u64, p: &Endo<F::Elem>) -> SplitResult<Endo<F::Elem>, F::Elem> {
        let mut acc = Endo::Zero;
        for i in (0..64 - k.leading_zeros()).rev() {
            acc = self.double(&acc)?;
            if (k >> i) & 1 == 1 {
                acc = self.add(&acc, p)?;
            }
        }
        Ok(acc)
    }

    /// outer ∘ inner.
    pub fn compose(&self, outer: &Endo<F::Elem>, inner: &Endo<F::Elem>) -> Endo<F::Elem> {
        match (outer, inner) {
            (_, Endo::Zero) | (Endo::Zero, _) => Endo::Zero,
            (Endo::Map { u: uo, v: vo }, Endo::Map { u: ui, v: vi }) => Endo::Map {
                u: self.rr.compose(uo, ui),
                v: self.rr.mul(vi, &self.rr.compose(vo, ui)),
            },
        }
    }

    /// map ∘ p for an isogeny whose domain and codomain share this ring's
    /// curve equation on the relevant points.
    pub fn apply_isogeny(&self, map: &IsogenyMap<F>, p: &Endo<F::Elem>) -> SplitResult<Endo<F::Elem>, F::Elem> {
        let rr = &self.rr;
        match p {
            Endo::Zero => Ok(Endo::Zero),
            Endo::Map { u, v } => {
                let xn = rr.compose(&map.x_num, u);
                let xd = rr.compose(&map.x_den, u);
                let yn = rr.compose(&map.y_num, u);
                let yd = rr.compose(&map.y_den, u);
                let u2 = rr.div(&xn, &xd)?;
                let v2 = rr.mul(v, &rr.div(&yn, &yd)?);
                Ok(Endo::Map { u: u2, v: v2 })
            }
        }
    }

    /// The chain's action on the points of E[m] with x a root of h.
    ///
    /// Intermediate curves have their own equations, but y only ever enters
    /// as the factor y of the starting point, so carrying v is enough.
    pub fn reduce_chain(&self, chain: &IsogenyChain<F>) -> SplitResult<Endo<F::Elem>, F::Elem> {
        let mut acc = self.identity();
        for m in &chain.maps {
            acc = self.apply_isogeny(m, &acc)?;
        }
        Ok(acc)
    }
}
