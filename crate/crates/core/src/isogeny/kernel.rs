use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::arith::factor::{factor_squarefree, roots};
use crate::arith::{Field, Poly, PolyRing, ResidueRing};
use crate::curves::{Curve, DivisionPolynomials, Point};
use crate::error::{Error, Result};

/// The ℓ+1 kernel polynomials of the ℓ-isogenies from `e`, sorted by
/// coefficient vector. Every kernel must be defined over the base field,
/// which holds for curves over F_{p²} with Frobenius ±p.
pub fn kernel_polynomials<F: Field, R: RngCore>(
    e: &Curve<F>,
    ell: u64,
    rng: &mut R,
) -> Result<Vec<Poly<F::Elem>>>
where
    F::Elem: Ord,
{
    let f = &e.field;
    let ring = PolyRing::new(f.clone());
    let mut out = Vec::new();
    if ell == 2 {
        let cubic = ring.from_coeffs(vec![e.b.clone(), e.a.clone(), f.zero(), f.one()]);
        for r in roots(&ring, &cubic, rng) {
            out.push(ring.linear(&r));
        }
    } else {
        if ell % 2 == 0 || ell % f.characteristic() == 0 {
            return Err(Error::BadInput("ℓ must be a prime different from p".into()));
        }
        let d = ((ell - 1) / 2) as usize;
        let mut divp = DivisionPolynomials::new(e);
        let fl = ring.monic(&divp.get(ell));
        let g: Vec<Poly<F::Elem>> = (0..=d as u64 + 1).map(|k| divp.get(k)).collect();
        let cubic4 = ring.scale(
            &ring.from_coeffs(vec![e.b.clone(), e.a.clone(), f.zero(), f.one()]),
            &f.from_u64(4),
        );
        let mut factors = factor_squarefree(&ring, &fl, rng);
        while let Some(h) = factors.first().cloned() {
            let k = kernel_from_factor(&ring, &h, &g, &cubic4, d)?;
            factors.retain(|q| !ring.rem(&k, q).map(|r| r.is_zero()).unwrap_or(false));
            out.push(k);
        }
    }
    out.sort();
    if out.len() as u64 != ell + 1 {
        return Err(Error::Unsupported(
            "not all ℓ-isogeny kernels are rational over the base field".into(),
        ));
    }
    Ok(out)
}

/// Given an irreducible factor h of f_ℓ, x mod h is x(Q) for some Q of order
/// ℓ; the kernel polynomial of ⟨Q⟩ is Π (X − x([k]Q)) for k = 1..(ℓ−1)/2,
/// whose coefficients must be constants modulo h.
fn kernel_from_factor<F: Field>(
    ring: &PolyRing<F>,
    h: &Poly<F::Elem>,
    g: &[Poly<F::Elem>],
    cubic4: &Poly<F::Elem>,
    d: usize,
) -> Result<Poly<F::Elem>> {
    let rr = ResidueRing::new(ring.clone(), h.clone());
    let x = rr.reduce(&ring.x());
    let r = rr.reduce(cubic4);
    let gr: Vec<_> = g.iter().map(|p| rr.reduce(p)).collect();
    let mut xs = Vec::with_capacity(d);
    for k in 1..=d {
        // x([k]Q) = x − ψ_{k−1}ψ_{k+1}/ψ_k²
        let mut num = rr.mul(&gr[k - 1], &gr[k + 1]);
        let mut den = rr.mul(&gr[k], &gr[k]);
        if k % 2 == 1 {
            num = rr.mul(&num, &r);
        } else {
            den = rr.mul(&den, &r);
        }
        let q = rr
            .div(&num, &den)
            .map_err(|_| Error::Integrity("multiple of a torsion point vanished".into()))?;
        xs.push(rr.sub(&x, &q));
    }
    // expand Π (X − x_k) with coefficients in F[x]/(h)
    let mut coeffs: Vec<Poly<F::Elem>> = vec![ring.one()];
    for xk in &xs {
        let mut next = vec![ring.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = rr.add(&next[i + 1], c);
            next[i] = rr.sub(&next[i], &rr.mul(c, xk));
        }
        coeffs = next;
    }
    let f = ring.field();
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if c.deg() > 0 {
            return Err(Error::Unsupported("kernel polynomial is not defined over the base field".into()));
        }
        out.push(c.coeff(0).cloned().unwrap_or_else(|| f.zero()));
    }
    Ok(ring.from_coeffs(out))
}

/// Kernel polynomial of ⟨Q⟩ for a point Q of exact order ℓ, over the field
/// the point lives in.
pub fn kernel_polynomial_from_point<F: Field>(
    e: &Curve<F>,
    q: &Point<F::Elem>,
    ell: u64,
) -> Result<Poly<F::Elem>> {
    if q.is_infinity() || !e.mul_u64(ell, q).is_infinity() || !e.contains(q) {
        return Err(Error::BadKernel("generator must have exact order ℓ".into()));
    }
    let ring = PolyRing::new(e.field.clone());
    let d = if ell == 2 { 1 } else { (ell - 1) / 2 };
    let mut xs = Vec::new();
    let mut acc = q.clone();
    for _ in 0..d {
        match &acc {
            Point::Affine(x, _) => xs.push(x.clone()),
            Point::Infinity => return Err(Error::BadKernel("generator order is too small".into())),
        }
        acc = e.add(&acc, q);
    }
    Ok(ring.from_roots(&xs))
}
