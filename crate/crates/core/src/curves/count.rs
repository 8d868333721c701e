use alloc::format;

use num_traits::ToPrimitive;

use super::Curve;
use crate::arith::Field;
use crate::error::{Error, Result};

/// Largest field size for exhaustive counting.
pub const DEFAULT_COUNT_BOUND: u64 = 1 << 26;

/// #E(F_q) by summing 1 + χ(x³ + Ax + B) over all x, plus the point at infinity.
pub fn count_points<F: Field>(e: &Curve<F>) -> Result<u64> {
    count_points_bounded(e, DEFAULT_COUNT_BOUND)
}

pub fn count_points_bounded<F: Field>(e: &Curve<F>, bound: u64) -> Result<u64> {
    let q = e
        .field
        .order()
        .to_u64()
        .filter(|&q| q <= bound)
        .ok_or_else(|| Error::TooLarge(format!("field of size {} exceeds count bound {}", e.field.order(), bound)))?;
    let mut n: i64 = 1;
    for i in 0..q {
        let x = e.field.nth_element(i);
        n += 1 + e.field.legendre(&e.rhs(&x)) as i64;
    }
    Ok(n as u64)
}

/// Supersingularity over F_{p²}: the Frobenius trace is divisible by p.
pub fn is_supersingular<F: Field>(e: &Curve<F>) -> Result<bool> {
    let p = e.field.characteristic() as i128;
    let q = e.field.order().to_i128().ok_or_else(|| Error::TooLarge("field".into()))?;
    let n = count_points(e)? as i128;
    let t = q + 1 - n;
    Ok(t % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Fp2, PrimeField};

    #[test]
    fn tiny_count() {
        let f = PrimeField::new(5).unwrap();
        // y² = x³ + x over F_5: (0,0), (2,0), (3,0) and infinity
        assert_eq!(count_points(&Curve::new(f, 1, 0).unwrap()).unwrap(), 4);
    }

    #[test]
    fn special_curves_are_supersingular() {
        let f = Fp2::new(31).unwrap();
        let e = Curve::new(f, f.one(), f.zero()).unwrap();
        assert!(is_supersingular(&e).unwrap());
        assert_eq!(count_points(&e).unwrap(), 32 * 32);
        let f = Fp2::new(101).unwrap();
        let e = Curve::new(f, f.zero(), f.one()).unwrap();
        assert!(is_supersingular(&e).unwrap());
        assert_eq!(count_points(&e).unwrap(), 102 * 102);
    }

    #[test]
    fn too_large_is_reported() {
        let f = PrimeField::new(101).unwrap();
        let e = Curve::new(f, 1, 1).unwrap();
        assert!(matches!(count_points_bounded(&e, 50), Err(Error::TooLarge(_))));
    }
}
