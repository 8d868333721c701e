//! Vélu isogenies from kernel polynomials, isomorphisms between models,
//! chains, and dual detection.

mod chain;
mod kernel;

pub use chain::{compose_chain, IsogenyChain};
pub use kernel::{kernel_polynomials, kernel_polynomial_from_point};

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Embedding, Field, Poly, PolyRing};
use crate::curves::{Curve, Point};
use crate::error::{Error, Result};

/// An ℓ-isogeny (x, y) ↦ (x_num/x_den, y·y_num/y_den).
#[derive(Clone, Debug, PartialEq)]
pub struct IsogenyMap<F: Field> {
    pub domain: Curve<F>,
    pub codomain: Curve<F>,
    pub degree: u64,
    /// Monic, with roots the x-coordinates of the nonzero kernel points.
    pub kernel_poly: Poly<F::Elem>,
    pub x_num: Poly<F::Elem>,
    pub x_den: Poly<F::Elem>,
    pub y_num: Poly<F::Elem>,
    pub y_den: Poly<F::Elem>,
}

/// Vélu's isogeny with the given kernel polynomial, in Kohel's form.
///
/// With D the kernel polynomial (degree d), s1 its root sum, p2 and p3 the
/// power sums of its roots and F = x³ + ax + b:
///
/// odd ℓ: v = 6·p2 + 2a·d, w = 10·p3 + 6a·s1 + 4b·d,
///        X = ℓx − 2·s1 − 2F'·D'/D + 4F·(D'² − D·D'')/D²
/// ℓ = 2: D = x − x0, v = 3x0² + a, w = x0·v, X = x + v/(x − x0)
///
/// and the codomain is y² = x³ + (a − 5v)x + (b − 7w). The y-map is y·X'(x).
pub fn velu<F: Field>(e: &Curve<F>, kernel_poly: &Poly<F::Elem>, ell: u64) -> Result<IsogenyMap<F>> {
    let f = &e.field;
    let ring = PolyRing::new(f.clone());
    let dpoly = ring.monic(kernel_poly);
    let d = dpoly.deg();
    let cubic = ring.from_coeffs(vec![e.b.clone(), e.a.clone(), f.zero(), f.one()]);
    if ell == 2 {
        if d != 1 || !ring.rem(&cubic, &dpoly)?.is_zero() {
            return Err(Error::BadKernel("not a 2-torsion x-coordinate".into()));
        }
    } else {
        if ell % 2 == 0 || d as u64 != (ell - 1) / 2 {
            return Err(Error::BadKernel("kernel polynomial has the wrong degree".into()));
        }
        let fl = crate::curves::division_polynomial(e, ell)?;
        if !ring.rem(&fl, &dpoly)?.is_zero() {
            return Err(Error::BadKernel("kernel polynomial does not divide the division polynomial".into()));
        }
    }
    let c = dpoly.coeffs();
    let (a, b) = (&e.a, &e.b);
    let (x_num, x_den, a2, b2);
    if ell == 2 {
        let x0 = f.neg(&c[0]);
        let v = f.add(&f.mul_u64(&f.square(&x0), 3), a);
        let w = f.mul(&x0, &v);
        a2 = f.sub(a, &f.mul_u64(&v, 5));
        b2 = f.sub(b, &f.mul_u64(&w, 7));
        // (x² − x0·x + v)/(x − x0)
        x_num = ring.from_coeffs(vec![v, f.neg(&x0), f.one()]);
        x_den = dpoly.clone();
    } else {
        // Newton's identities for the first three power sums.
        let coef = |i: usize| if i <= d { c[d - i].clone() } else { f.zero() };
        let e1 = f.neg(&coef(1));
        let e2 = coef(2);
        let e3 = f.neg(&coef(3));
        let s1 = e1.clone();
        let p2 = f.sub(&f.square(&e1), &f.mul_u64(&e2, 2));
        let p3 = f.add(
            &f.sub(&f.mul(&f.square(&e1), &e1), &f.mul_u64(&f.mul(&e1, &e2), 3)),
            &f.mul_u64(&e3, 3),
        );
        let dd = f.from_u64(d as u64);
        let v = f.add(&f.mul_u64(&p2, 6), &f.mul_u64(&f.mul(a, &dd), 2));
        let w = f.add(
            &f.add(&f.mul_u64(&p3, 10), &f.mul_u64(&f.mul(a, &s1), 6)),
            &f.mul_u64(&f.mul(b, &dd), 4),
        );
        a2 = f.sub(a, &f.mul_u64(&v, 5));
        b2 = f.sub(b, &f.mul_u64(&w, 7));
        let d1 = ring.derivative(&dpoly);
        let d2 = ring.derivative(&d1);
        let fp = ring.derivative(&cubic);
        let dsq = ring.square(&dpoly);
        let lin = ring.from_coeffs(vec![f.neg(&f.mul_u64(&s1, 2)), f.from_u64(ell)]);
        let t1 = ring.mul(&lin, &dsq);
        let t2 = ring.scale(&ring.mul(&ring.mul(&fp, &d1), &dpoly), &f.from_i64(-2));
        let t3 = ring.scale(
            &ring.mul(&cubic, &ring.sub(&ring.square(&d1), &ring.mul(&dpoly, &d2))),
            &f.from_u64(4),
        );
        x_num = ring.add(&ring.add(&t1, &t2), &t3);
        x_den = dsq;
    }
    let codomain = Curve::new(f.clone(), a2, b2)
        .map_err(|_| Error::BadKernel("singular codomain".into()))?;
    let (y_num, y_den) = derivative_of_quotient(&ring, &x_num, &x_den);
    Ok(IsogenyMap { domain: e.clone(), codomain, degree: ell, kernel_poly: dpoly, x_num, x_den, y_num, y_den })
}

/// (n/d)' in lowest terms with monic denominator.
fn derivative_of_quotient<F: Field>(
    ring: &PolyRing<F>,
    n: &Poly<F::Elem>,
    d: &Poly<F::Elem>,
) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let num = ring.sub(&ring.mul(&ring.derivative(n), d), &ring.mul(n, &ring.derivative(d)));
    let den = ring.square(d);
    let g = ring.gcd(&num, &den);
    let num = ring.div_exact(&num, &g).expect("gcd divides");
    let den = ring.div_exact(&den, &g).expect("gcd divides");
    let lc = den.lead().cloned().expect("nonzero denominator");
    let inv = ring.field().inv(&lc).expect("nonzero");
    (ring.scale(&num, &inv), ring.scale(&den, &inv))
}

/// All μ with (x, y) ↦ (μ²x, μ³y) an isomorphism `from` → `to`, i.e.
/// μ⁴·A = A' and μ⁶·B = B'. Sorted canonically; empty when the curves are
/// not isomorphic over the field.
pub fn isomorphisms<F: Field>(from: &Curve<F>, to: &Curve<F>) -> Vec<F::Elem>
where
    F::Elem: Ord,
{
    let f = &from.field;
    let ring = PolyRing::new(f.clone());
    let (za, zb) = (f.is_zero(&from.a), f.is_zero(&from.b));
    if za != f.is_zero(&to.a) || zb != f.is_zero(&to.b) {
        return Vec::new();
    }
    // a polynomial in μ whose roots contain every candidate
    let cand = if za {
        let c = f.div(&to.b, &from.b).expect("b ≠ 0");
        ring.sub(&ring.monomial(f.one(), 6), &ring.constant(c))
    } else if zb {
        let c = f.div(&to.a, &from.a).expect("a ≠ 0");
        ring.sub(&ring.monomial(f.one(), 4), &ring.constant(c))
    } else {
        let c = f
            .div(&f.mul(&to.b, &from.a), &f.mul(&from.b, &to.a))
            .expect("a, b ≠ 0");
        ring.sub(&ring.monomial(f.one(), 2), &ring.constant(c))
    };
    let mut rng = <rand_chacha::ChaCha8Rng as rand_core::SeedableRng>::seed_from_u64(6);
    let mut out: Vec<F::Elem> = crate::arith::factor::roots(&ring, &cand, &mut rng)
        .into_iter()
        .filter(|mu| {
            let m2 = f.square(mu);
            let m4 = f.square(&m2);
            let m6 = f.mul(&m4, &m2);
            f.mul(&m4, &from.a) == to.a && f.mul(&m6, &from.b) == to.b
        })
        .collect();
    out.sort_by(|x, y| f.canonical_cmp(x, y));
    out
}

impl<F: Field> IsogenyMap<F> {
    pub fn ring(&self) -> PolyRing<F> {
        PolyRing::new(self.domain.field.clone())
    }

    /// Post-composition with (x, y) ↦ (μ²x, μ³y) onto `target`.
    pub fn then_scale(&self, mu: &F::Elem, target: &Curve<F>) -> IsogenyMap<F> {
        let f = &self.domain.field;
        let ring = self.ring();
        let m2 = f.square(mu);
        let m3 = f.mul(&m2, mu);
        IsogenyMap {
            codomain: target.clone(),
            x_num: ring.scale(&self.x_num, &m2),
            y_num: ring.scale(&self.y_num, &m3),
            ..self.clone()
        }
    }

    /// The representative landing on `target`: post-composed with the
    /// canonically least isomorphism.
    pub fn onto(&self, target: &Curve<F>) -> Result<IsogenyMap<F>>
    where
        F::Elem: Ord,
    {
        let mus = isomorphisms(&self.codomain, target);
        let mu = mus
            .first()
            .ok_or_else(|| Error::BadInput("target is not isomorphic to the codomain".into()))?;
        Ok(self.then_scale(mu, target))
    }

    pub fn evaluate(&self, p: &Point<F::Elem>) -> Result<Point<F::Elem>> {
        let f = &self.domain.field;
        let ring = self.ring();
        match p {
            Point::Infinity => Ok(Point::Infinity),
            Point::Affine(x, y) => {
                let xd = ring.eval(&self.x_den, x);
                if f.is_zero(&xd) {
                    return Ok(Point::Infinity);
                }
                let xn = ring.eval(&self.x_num, x);
                let yd = ring.eval(&self.y_den, x);
                let yn = ring.eval(&self.y_num, x);
                let xx = f.div(&xn, &xd)?;
                let yy = f.mul(y, &f.div(&yn, &yd).map_err(|_| {
                    Error::Integrity("isogeny y-denominator vanishes off the kernel".into())
                })?);
                Ok(Point::Affine(xx, yy))
            }
        }
    }

    pub fn base_change<T: Field>(&self, emb: &Embedding<F, T>) -> IsogenyMap<T> {
        let r = self.ring();
        let t = PolyRing::new(emb.target().clone());
        let m = |p: &Poly<F::Elem>| r.map_coeffs(&t, p, |c| emb.embed(c));
        IsogenyMap {
            domain: self.domain.base_change(emb),
            codomain: self.codomain.base_change(emb),
            degree: self.degree,
            kernel_poly: m(&self.kernel_poly),
            x_num: m(&self.x_num),
            x_den: m(&self.x_den),
            y_num: m(&self.y_num),
            y_den: m(&self.y_den),
        }
    }

    /// X(x) composed into a polynomial g, reduced modulo h: returns the
    /// residue of g(X(x)) · x_den(x)^deg g, which vanishes exactly when g(X)
    /// does (x_den is a unit mod h).
    fn pushforward_residue(&self, g: &Poly<F::Elem>, h: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let ring = self.ring();
        let n = ring.rem(&self.x_num, h)?;
        let d = ring.rem(&self.x_den, h)?;
        let k = g.deg();
        let mut acc = ring.zero();
        let mut npow = ring.one();
        let mut dpows = vec![ring.one()];
        for _ in 0..k {
            let last = dpows.last().unwrap().clone();
            dpows.push(ring.mulmod(&last, &d, h)?);
        }
        for (i, c) in g.coeffs().iter().enumerate() {
            let term = ring.mulmod(&npow, &dpows[k - i], h)?;
            acc = ring.rem(&ring.add(&acc, &ring.scale(&term, c)), h)?;
            npow = ring.mulmod(&npow, &n, h)?;
        }
        Ok(acc)
    }
}

/// ψ is dual to φ when ker ψ = φ(E[ℓ]): the x-coordinates of the ℓ-torsion
/// outside ker φ must map under φ to roots of ψ's kernel polynomial.
pub fn dual_edge<F: Field>(phi: &IsogenyMap<F>, psi: &IsogenyMap<F>) -> Result<bool> {
    if phi.codomain != psi.domain || psi.codomain != phi.domain || phi.degree != psi.degree {
        return Err(Error::BadInput("edges are not composable in both directions".into()));
    }
    let ring = phi.ring();
    let t = crate::curves::torsion_x_poly(&phi.domain, phi.degree)?;
    let h = ring.div_exact(&t, &phi.kernel_poly)?;
    Ok(phi.pushforward_residue(&psi.kernel_poly, &h)?.is_zero())
}

#[cfg(test)]
mod tests;
