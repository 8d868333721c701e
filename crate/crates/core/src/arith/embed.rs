use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::factor::roots;
use super::field::Field;
use super::poly::PolyRing;
use super::prime::PrimeField;
use crate::error::{Error, Result};

/// A field embedding S ↪ T sending the generator of S to a fixed root of
/// its modulus in T (the canonically least one).
#[derive(Clone, Debug)]
pub struct Embedding<S: Field, T: Field> {
    source: S,
    target: T,
    /// Images of 1, g, g², … where g generates S over F_p.
    powers: Vec<T::Elem>,
    /// Row-reduced data for projecting back: pivot columns and reduced rows.
    solver: Projector,
}

#[derive(Clone, Debug)]
struct Projector {
    p: u64,
    /// For each source coordinate i, the target coordinate used as pivot and
    /// a linear form (over target coordinates) recovering coordinate i.
    forms: Vec<Vec<u64>>,
}

impl<S: Field, T: Field> Embedding<S, T>
where
    T::Elem: Ord,
{
    pub fn new(source: S, target: T) -> Result<Self> {
        let j = source.degree();
        let k = target.degree();
        if source.characteristic() != target.characteristic() || k % j != 0 {
            return Err(Error::BadInput("no embedding between these fields".into()));
        }
        let ring = PolyRing::new(target.clone());
        let m: Vec<T::Elem> = source
            .modulus_coeffs()
            .iter()
            .map(|&c| target.from_u64(c))
            .collect();
        let m = ring.from_coeffs(m);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let r = roots(&ring, &m, &mut rng)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Integrity("modulus has no root in the target".into()))?;
        let mut powers = Vec::with_capacity(j);
        let mut acc = target.one();
        for _ in 0..j {
            powers.push(acc.clone());
            acc = target.mul(&acc, &r);
        }
        let solver = Projector::new(source.characteristic(), &target, &powers)?;
        Ok(Embedding { source, target, powers, solver })
    }
}

impl<S: Field, T: Field> Embedding<S, T> {
    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn target(&self) -> &T {
        &self.target
    }

    pub fn embed(&self, a: &S::Elem) -> T::Elem {
        let c = self.source.to_coeffs(a);
        let mut acc = self.target.zero();
        for (ci, pw) in c.iter().zip(&self.powers) {
            if *ci != 0 {
                acc = self.target.add(&acc, &self.target.mul_u64(pw, *ci));
            }
        }
        acc
    }

    /// Inverse of `embed` on its image; errors for elements outside it.
    pub fn project(&self, b: &T::Elem) -> Result<S::Elem> {
        let bc = self.target.to_coeffs(b);
        let f = PrimeField::new_small(self.solver.p)?;
        let c: Vec<u64> = self
            .solver
            .forms
            .iter()
            .map(|form| {
                form.iter()
                    .zip(&bc)
                    .fold(0u64, |acc, (x, y)| f.addm(acc, f.mulm(*x, *y)))
            })
            .collect();
        let a = self.source.from_coeffs(&c);
        if self.embed(&a) != *b {
            return Err(Error::Integrity("element does not descend".into()));
        }
        Ok(a)
    }
}

impl Projector {
    /// Builds linear forms inverting the map c ↦ Σ c_i·powers_i, using a
    /// left inverse of the k×j coordinate matrix.
    fn new<T: Field>(p: u64, target: &T, powers: &[T::Elem]) -> Result<Self> {
        let f = PrimeField::new_small(p)?;
        let j = powers.len();
        let k = target.degree();
        // Augmented system: rows are target coordinates, columns source coords
        // followed by an identity block tracking row operations.
        let mut rows: Vec<Vec<u64>> = (0..k)
            .map(|r| {
                let mut row: Vec<u64> = powers.iter().map(|pw| target.to_coeffs(pw)[r]).collect();
                row.extend((0..k).map(|c| u64::from(c == r)));
                row
            })
            .collect();
        let mut pivot_row = 0;
        for col in 0..j {
            let piv = (pivot_row..k).find(|&r| rows[r][col] != 0).ok_or_else(|| {
                Error::Integrity("embedding images are linearly dependent".into())
            })?;
            rows.swap(pivot_row, piv);
            let inv = f.invm(rows[pivot_row][col])?;
            for x in rows[pivot_row].iter_mut() {
                *x = f.mulm(*x, inv);
            }
            for r in 0..k {
                if r != pivot_row && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for c in 0..j + k {
                        let v = f.mulm(factor, rows[pivot_row][c]);
                        rows[r][c] = f.subm(rows[r][c], v);
                    }
                }
            }
            pivot_row += 1;
        }
        let forms = (0..j).map(|i| rows[i][j..].to_vec()).collect();
        Ok(Projector { p, forms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp2::Fp2;
    use crate::arith::gf::build_tower;

    #[test]
    fn embed_then_project_is_identity() {
        let s = Fp2::new(31).unwrap();
        let t = build_tower(31, 4).unwrap();
        let e = Embedding::new(s, t.clone()).unwrap();
        for n in [0u64, 1, 5, 32, 500, 960] {
            let a = s.nth_element(n);
            let b = e.embed(&a);
            assert_eq!(e.project(&b).unwrap(), a);
        }
        // multiplicativity
        let a = s.nth_element(77);
        let b = s.nth_element(600);
        assert_eq!(e.embed(&s.mul(&a, &b)), t.mul(&e.embed(&a), &e.embed(&b)));
    }

    #[test]
    fn projection_rejects_outside_image() {
        let s = Fp2::new(31).unwrap();
        let t = build_tower(31, 4).unwrap();
        let e = Embedding::new(s, t.clone()).unwrap();
        // an element generating F_{31⁴} is not in F_{31²}
        let g = t.from_coeffs(&[0, 1, 0, 0]);
        assert!(e.project(&g).is_err());
    }
}
