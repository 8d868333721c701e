use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Chinese remaindering into the balanced range (−N/2, N/2], N = Π moduli.
pub fn crt(residues: &[(BigInt, BigInt)]) -> Result<BigInt> {
    let mut x = BigInt::zero();
    let mut n = BigInt::one();
    for (v, m) in residues {
        if !m.is_positive() {
            return Err(Error::BadModuli);
        }
        let g = n.extended_gcd(m);
        if !g.gcd.is_one() {
            return Err(Error::BadModuli);
        }
        // x + n·k ≡ v (mod m)  ⇒  k ≡ (v − x)·n⁻¹ (mod m)
        let k = ((v - &x) * &g.x).mod_floor(m);
        x += &n * k;
        n *= m;
    }
    let x = x.mod_floor(&n);
    let half = &n >> 1u32;
    Ok(if x > half { x - n } else { x })
}

/// Convenience form for machine-sized residues.
pub fn crt_i64(residues: &[(i64, u64)]) -> Result<BigInt> {
    let v: Vec<(BigInt, BigInt)> = residues
        .iter()
        .map(|&(r, m)| (BigInt::from(r), BigInt::from(m)))
        .collect();
    crt(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(crt_i64(&[(0, 3), (0, 5)]).unwrap(), BigInt::from(0));
        assert_eq!(crt_i64(&[(2, 3), (3, 5)]).unwrap(), BigInt::from(-7));
        assert_eq!(crt_i64(&[(1, 2), (1, 4)]), Err(Error::BadModuli));
    }

    #[test]
    fn balanced_boundary() {
        // N = 6: range (−3, 3]
        assert_eq!(crt_i64(&[(1, 2), (0, 3)]).unwrap(), BigInt::from(3));
        assert_eq!(crt_i64(&[(0, 2), (1, 3)]).unwrap(), BigInt::from(-2));
    }
}
