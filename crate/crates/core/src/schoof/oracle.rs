use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::arith::{build_tower, is_prime_u64, isqrt_big, Embedding, Field, Fp2};
use crate::curves::{Curve, Point};
use crate::error::{Error, Result};
use crate::isogeny::IsogenyChain;

/// Largest trace bound 2√n the oracle will scan.
pub const DEFAULT_ORACLE_BOUND: u64 = 1 << 20;

pub fn trace_oracle(chain: &IsogenyChain<Fp2>) -> Result<i64> {
    trace_oracle_bounded(chain, DEFAULT_ORACLE_BOUND)
}

/// Trace by brute force on explicit torsion points: for a point P of order
/// m, ψ(ψ(P)) + [n]P = [t]ψ(P) fixes t mod m, and the candidates in
/// [−2√n, 2√n] are intersected over several m until one remains.
pub fn trace_oracle_bounded(chain: &IsogenyChain<Fp2>, bound: u64) -> Result<i64> {
    if !chain.is_closed() {
        return Err(Error::BadInput("chain is not an endomorphism".into()));
    }
    let e = chain.domain();
    let p = e.field.characteristic();
    let n = chain.degree();
    let b = isqrt_big(&(BigUint::from(4u32) * &n));
    let b = b.to_u64().filter(|&b| b < bound).ok_or_else(|| {
        Error::TooLarge(format!("trace bound 2√{} exceeds the oracle limit", n))
    })? as i64;
    let ells: Vec<u64> = chain.maps.iter().map(|m| m.degree).collect();
    let mut cands: Vec<i64> = (-b..=b).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x07ac1e ^ p);
    for (m, k) in oracle_primes(p, &ells) {
        let tm = trace_at(chain, e, m, k, &n, &mut rng)?;
        cands.retain(|t| t.rem_euclid(m as i64) as u64 == tm);
        if cands.len() <= 1 {
            break;
        }
    }
    match cands.as_slice() {
        [t] => Ok(*t),
        [] => Err(Error::Integrity("no trace candidate survives".into())),
        _ => Err(Error::TooLarge("ran out of auxiliary primes".into())),
    }
}

/// Odd primes m ∉ {p, ℓ} with their torsion degree k ((−p)^k ≡ 1 mod m),
/// cheapest extensions first.
fn oracle_primes(p: u64, ells: &[u64]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for m in 3..400u64 {
        if !is_prime_u64(m) || m == p || ells.contains(&m) {
            continue;
        }
        if let Some(k) = crate::curves::torsion_degree(p, m) {
            if k <= 6 {
                out.push((m, k));
            }
        }
    }
    out.sort_by_key(|&(m, k)| (k, m));
    out
}

fn trace_at(
    chain: &IsogenyChain<Fp2>,
    e: &Curve<Fp2>,
    m: u64,
    k: u64,
    n: &BigUint,
    rng: &mut ChaCha8Rng,
) -> Result<u64> {
    let p = e.field.characteristic();
    let big = build_tower(p, 2 * k as usize)?;
    let emb = Embedding::new(e.field, big)?;
    let ec = e.base_change(&emb);
    let ch = chain.base_change(&emb);
    // #E(F_{p^{2k}}) = (p^k − (−1)^k)² for the normalized models
    let pk = num_traits::pow(BigUint::from(p), k as usize);
    let order = if k % 2 == 0 { pk - BigUint::one() } else { pk + BigUint::one() };
    let mb = BigUint::from(m);
    let mut cof = order;
    while (&cof % &mb).is_zero() {
        cof /= &mb;
    }
    let pt = loop {
        let mut q = ec.mul_big(&cof, &ec.random_point(rng));
        if q.is_infinity() {
            continue;
        }
        loop {
            let next = ec.mul_u64(m, &q);
            if next.is_infinity() {
                break;
            }
            q = next;
        }
        break q;
    };
    let nm = (n % &mb).to_u64().unwrap();
    let psi_p = ch.evaluate(&pt)?;
    let lhs = ec.add(&ch.evaluate(&psi_p)?, &ec.mul_u64(nm, &pt));
    let mut acc = Point::Infinity;
    for t in 0..m {
        if acc == lhs {
            return Ok(t);
        }
        acc = ec.add(&acc, &psi_p);
    }
    Err(Error::Integrity(format!("no residue mod {} fits the characteristic relation", m)))
}

/// Checks ψ(ψ(P)) − [t]ψ(P) + [n]P = O on `count` random points of E over
/// F_{p^{2k}}, with the seed fixing the points.
pub fn check_relation(chain: &IsogenyChain<Fp2>, t: &num_bigint::BigInt, k: usize, count: usize, seed: u64) -> Result<bool> {
    if !chain.is_closed() {
        return Err(Error::BadInput("chain is not an endomorphism".into()));
    }
    let e = chain.domain();
    let p = e.field.characteristic();
    let big = build_tower(p, 2 * k.max(1))?;
    let emb = Embedding::new(e.field, big)?;
    let ec = e.base_change(&emb);
    let ch = chain.base_change(&emb);
    let n = chain.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let pt = ec.random_point(&mut rng);
        let psi = ch.evaluate(&pt)?;
        let lhs = ec.add(&ch.evaluate(&psi)?, &ec.mul_big(&n, &pt));
        let tp = if t.sign() == num_bigint::Sign::Minus {
            ec.neg(&ec.mul_big(t.magnitude(), &psi))
        } else {
            ec.mul_big(t.magnitude(), &psi)
        };
        if lhs != tp {
            return Ok(false);
        }
    }
    Ok(true)
}
