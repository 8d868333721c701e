use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::Curve;
use crate::arith::factor::roots;
use crate::arith::{Field, PolyRing};
use crate::error::{Error, Result};

/// E(j) in short Weierstrass form.
///
/// For j ∉ {0, 1728} the model y² + xy = x³ − 36/(j−1728)·x − 1/(j−1728)
/// is used. Completing the square and clearing the x² term gives
/// c4 = 1 − 48·a4 and c6 = −1 + 72·a4 − 864·a6, and the curve
/// y² = x³ − 27·c4·x − 54·c6, which has invariant c4³/Δ = j.
/// For j = 0 the curve is y² = x³ + 1, for j = 1728 it is y² = x³ + x.
pub fn curve_from_j<F: Field>(f: &F, j: &F::Elem) -> Curve<F> {
    if f.is_zero(j) {
        return Curve { field: f.clone(), a: f.zero(), b: f.one() };
    }
    let d = f.sub(j, &f.from_u64(1728));
    if f.is_zero(&d) {
        return Curve { field: f.clone(), a: f.one(), b: f.zero() };
    }
    let di = f.inv(&d).expect("j ≠ 1728");
    let a4 = f.neg(&f.mul_u64(&di, 36));
    let a6 = f.neg(&di);
    let c4 = f.sub(&f.one(), &f.mul_u64(&a4, 48));
    let c6 = f.sub(&f.add(&f.neg(&f.one()), &f.mul_u64(&a4, 72)), &f.mul_u64(&a6, 864));
    Curve { field: f.clone(), a: f.neg(&f.mul_u64(&c4, 27)), b: f.neg(&f.mul_u64(&c6, 54)) }
}

/// Sign s with π = s·p for the q-power Frobenius of a supersingular curve
/// over F_{p²} whose Frobenius is ±p. Decided by finding a point that is
/// killed by exactly one of p + 1 and p − 1.
pub fn frobenius_sign<F: Field>(e: &Curve<F>) -> Result<i8> {
    let p = e.field.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x9e37_79b9);
    for _ in 0..64 {
        let pt = e.random_point(&mut rng);
        let plus = e.mul_u64(p + 1, &pt).is_infinity();
        let minus = e.mul_u64(p - 1, &pt).is_infinity();
        match (plus, minus) {
            (true, false) => return Ok(-1),
            (false, true) => return Ok(1),
            (true, true) => continue,
            (false, false) => {
                return Err(Error::Unsupported("Frobenius is not ±p on this curve".into()))
            }
        }
    }
    Err(Error::Unsupported("could not decide the Frobenius sign".into()))
}

/// The model of E(j) over F_{p²} whose Frobenius is −p, so that
/// #E(F_{p²}) = (p+1)², every ℓ-isogeny from it is defined over F_{p²},
/// and E[m] is rational over F_{p^{2k}} exactly when (−p)^k ≡ 1 (mod m).
///
/// E(0) and E(1728) already have this property whenever they are
/// supersingular; otherwise the quadratic twist by the least non-square is
/// taken when needed.
pub fn supersingular_model<F: Field>(f: &F, j: &F::Elem) -> Result<Curve<F>> {
    let e = curve_from_j(f, j);
    let sign = frobenius_sign(&e)?;
    if sign == -1 {
        return Ok(e);
    }
    let d = least_non_square(f);
    let d2 = f.square(&d);
    let d3 = f.mul(&d2, &d);
    let t = Curve { field: f.clone(), a: f.mul(&d2, &e.a), b: f.mul(&d3, &e.b) };
    if frobenius_sign(&t)? != -1 {
        return Err(Error::Integrity("twist did not flip the Frobenius".into()));
    }
    Ok(t)
}

pub(crate) fn least_non_square<F: Field>(f: &F) -> F::Elem {
    let mut n = 1u64;
    loop {
        let c = f.nth_element(n);
        if f.legendre(&c) == -1 {
            return c;
        }
        n += 1;
    }
}

/// Units u with (x, y) ↦ (u²x, u³y) an automorphism: u⁴A = A and u⁶B = B.
/// Sorted canonically; always contains ±1.
pub fn automorphism_units<F: Field>(e: &Curve<F>) -> Vec<F::Elem>
where
    F::Elem: Ord,
{
    let f = &e.field;
    let ring = PolyRing::new(f.clone());
    let x12 = ring.sub(&ring.monomial(f.one(), 12), &ring.one());
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    roots(&ring, &x12, &mut rng)
        .into_iter()
        .filter(|u| {
            let u2 = f.square(u);
            let u4 = f.square(&u2);
            let u6 = f.mul(&u4, &u2);
            f.mul(&u4, &e.a) == e.a && f.mul(&u6, &e.b) == e.b
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp2;
    use crate::curves::count_points;

    #[test]
    fn j_round_trip() {
        let f = Fp2::new(31).unwrap();
        for n in 0..961u64 {
            let j = f.nth_element(n);
            assert_eq!(curve_from_j(&f, &j).j_invariant(), j);
        }
    }

    #[test]
    fn special_models() {
        let f = Fp2::new(31).unwrap();
        let e0 = curve_from_j(&f, &f.zero());
        assert_eq!((e0.a, e0.b), (f.zero(), f.one()));
        let e1 = curve_from_j(&f, &f.from_u64(1728));
        assert_eq!((e1.a, e1.b), (f.one(), f.zero()));
    }

    #[test]
    fn normalized_models_have_p_plus_one_squared_points() {
        for (p, js) in [(31u64, &[2u64, 4, 23][..]), (103, &[23, 24, 69, 34, 80][..])] {
            let f = Fp2::new(p).unwrap();
            for &j in js {
                let e = supersingular_model(&f, &f.from_u64(j)).unwrap();
                assert_eq!(e.j_invariant(), f.from_u64(j));
                assert_eq!(count_points(&e).unwrap(), (p + 1) * (p + 1));
            }
        }
    }

    #[test]
    fn unit_groups() {
        let f = Fp2::new(31).unwrap();
        assert_eq!(automorphism_units(&curve_from_j(&f, &f.from_u64(1728))).len(), 4);
        assert_eq!(automorphism_units(&curve_from_j(&f, &f.from_u64(2))).len(), 2);
        let f = Fp2::new(101).unwrap();
        assert_eq!(automorphism_units(&curve_from_j(&f, &f.zero())).len(), 6);
    }
}
