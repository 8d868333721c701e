//! Decision procedures on cycles and cycle pairs: primitivity, commutation,
//! linear independence, the shared-path obstruction to maximality, and the
//! conductor and splitting predicates.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::arith::is_prime_u64;
use crate::curves::{torsion_basis, torsion_degree};
use crate::error::{Error, Result};
use crate::graph::{cycle_to_chain, Cycle, IsogenyGraph};
use crate::quaternion::lattice::{det, QMatrix};
use crate::quaternion::{gram_from_traces, reduced_discriminant_of_gram};
use crate::schoof::{trace, BoundMode};

/// A cycle is primitive exactly when it has no backtracking.
pub fn is_primitive(g: &IsogenyGraph, c: &Cycle) -> bool {
    !c.is_empty() && c.no_backtracking(g)
}

/// Odd primes m ∉ {p, ℓ} with E[m] rational over F_{p^{2k}}, k ≤ 24,
/// cheapest first.
fn torsion_primes(p: u64, ell: u64) -> Vec<u64> {
    let mut out: Vec<(u64, u64)> = (3..2000u64)
        .filter(|&m| is_prime_u64(m) && m != p && m != ell)
        .filter_map(|m| torsion_degree(p, m).filter(|&k| k <= 24).map(|k| (k, m)))
        .collect();
    out.sort();
    out.into_iter().map(|(_, m)| m).collect()
}

/// Whether the endomorphisms of two cycles at the same vertex commute.
///
/// αβ − βα has degree at most 4ℓ^{e1+e2}; if it vanishes on E[m] for primes
/// with Π m > 2ℓ^{(e1+e2)/2} it is zero. The check runs until Π m exceeds
/// 4ℓ^{(e1+e2)/2}.
pub fn commutes(g: &IsogenyGraph, c1: &Cycle, c2: &Cycle) -> Result<bool> {
    if c1.base != c2.base {
        return Err(Error::BadInput("cycles start at different vertices".into()));
    }
    let ab = cycle_to_chain(g, &c1.then(c2)?)?;
    let ba = cycle_to_chain(g, &c2.then(c1)?)?;
    let e = &g.vertices[c1.base].curve;
    // (Π m)² > 16 ℓ^{e1+e2}
    let need = BigUint::from(16u32) * num_traits::pow(BigUint::from(g.ell), c1.len() + c2.len());
    let mut prod = BigUint::one();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee ^ g.p);
    for m in torsion_primes(g.p, g.ell) {
        if &prod * &prod > need {
            return Ok(true);
        }
        let b = torsion_basis(e, m, &mut rng)?;
        let x = ab.base_change(&b.embedding);
        let y = ba.base_change(&b.embedding);
        for pt in [&b.p, &b.q] {
            if x.evaluate(pt)? != y.evaluate(pt)? {
                return Ok(false);
            }
        }
        prod *= m;
    }
    Err(Error::TooLarge("ran out of small torsion primes".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderStatus {
    Maximal,
    NonMaximal(BigInt),
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct CyclePairReport {
    pub cycles: (Cycle, Cycle),
    /// Traces of α, β and αβ.
    pub traces: (BigInt, BigInt, BigInt),
    pub norms: (BigUint, BigUint),
    pub commute: bool,
    pub independent: bool,
    /// Trd(x·ȳ) on 1, α, β, αβ.
    pub gram4: QMatrix,
    pub disc_reduced: Option<BigInt>,
    pub obstruction: Option<Vec<usize>>,
    pub order_status: OrderStatus,
}

fn minor3(g: &QMatrix) -> QMatrix {
    g[..3].iter().map(|r| r[..3].to_vec()).collect()
}

/// Traces, Gram matrix and order status of ⟨1, α, β, αβ⟩.
pub fn independence_report(g: &IsogenyGraph, c1: &Cycle, c2: &Cycle, mode: BoundMode) -> Result<CyclePairReport> {
    if c1.base != c2.base {
        return Err(Error::BadInput("cycles start at different vertices".into()));
    }
    let ta = trace(&cycle_to_chain(g, c1)?, mode)?;
    let tb = trace(&cycle_to_chain(g, c2)?, mode)?;
    // walking c1 then c2 gives β∘α, whose trace equals that of αβ
    let tab = trace(&cycle_to_chain(g, &c1.then(c2)?)?, mode)?;
    let gram4 = gram_from_traces(
        &ta.trace,
        &BigInt::from(ta.norm.clone()),
        &tb.trace,
        &BigInt::from(tb.norm.clone()),
        &tab.trace,
    )?;
    let independent = !det(&minor3(&gram4)).is_zero();
    let commute = commutes(g, c1, c2)?;
    if independent && commute {
        return Err(Error::Integrity("independent endomorphisms commute".into()));
    }
    let disc_reduced = if det(&gram4).is_zero() { None } else { Some(reduced_discriminant_of_gram(&gram4)?) };
    let obstruction = shared_path_obstruction(g, c1, c2);
    let order_status = match &disc_reduced {
        Some(d) if *d == BigInt::from(g.p) => OrderStatus::Maximal,
        Some(d) => OrderStatus::NonMaximal(d.clone()),
        None => OrderStatus::Undetermined,
    };
    Ok(CyclePairReport {
        cycles: (c1.clone(), c2.clone()),
        traces: (ta.trace, tb.trace, tab.trace),
        norms: (ta.norm, tb.norm),
        commute,
        independent,
        gram4,
        disc_reduced,
        obstruction,
        order_status,
    })
}

/// The vertices j1, v1, …, j2 of the longest common initial path when it
/// meets the obstruction's hypotheses: it passes through a further vertex,
/// or it ends at j2 ≠ j1^p.
pub fn shared_path_obstruction(g: &IsogenyGraph, c1: &Cycle, c2: &Cycle) -> Option<Vec<usize>> {
    if c1.base != c2.base {
        return None;
    }
    let k = c1.edges.iter().zip(&c2.edges).take_while(|(a, b)| a == b).count();
    if k == 0 {
        return None;
    }
    let mut path = Vec::with_capacity(k + 1);
    path.push(c1.base);
    path.extend(c1.edges[..k].iter().map(|&e| g.edges[e].to));
    let j2 = path[k];
    if k >= 2 || j2 != g.conjugate(c1.base) {
        Some(path)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConductorPredicates {
    pub conductor_coprime_to_ell: bool,
    pub ell_splits: bool,
}

/// For an endomorphism of trace t and degree ℓ^e, with d = t² − 4ℓ^e:
/// the conductor of Z[α] is prime to ℓ when ℓ ∤ d, and ℓ splits when d is
/// a nonzero square mod ℓ (d ≡ 1 mod 8 for ℓ = 2).
pub fn conductor_predicates(ell: u64, e: usize, t: &BigInt) -> ConductorPredicates {
    let l = BigInt::from(ell);
    let d = t * t - BigInt::from(4u32) * num_traits::pow(l.clone(), e);
    let r = ((&d % &l) + &l) % &l;
    let coprime = !r.is_zero();
    let splits = if ell == 2 {
        let r8 = ((&d % 8) + 8) % 8;
        r8 == BigInt::one()
    } else {
        coprime && {
            let rr = r.to_u64().unwrap();
            (1..ell).any(|x| x * x % ell == rr)
        }
    };
    ConductorPredicates { conductor_coprime_to_ell: coprime, ell_splits: splits }
}

/// |det| of the 3×3 Gram of 1, α, β, sign-free.
pub fn gram3_det(gram4: &QMatrix) -> BigInt {
    det(&minor3(gram4)).abs().to_integer()
}

#[cfg(test)]
mod tests;
