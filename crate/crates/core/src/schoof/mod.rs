//! Traces of cycle endomorphisms: Schoof's method with the Frobenius
//! replaced by the endomorphism, plus an independent pointwise oracle.

mod endo;
mod oracle;

pub use endo::{Endo, EndoRing};
pub use oracle::{check_relation, trace_oracle, trace_oracle_bounded, DEFAULT_ORACLE_BOUND};

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{crt, is_prime_u64, odd_primes, Field, Poly, PolyRing, Split};
use crate::curves::division_polynomial;
use crate::error::{Error, Result};
use crate::isogeny::IsogenyChain;

/// How many primes the CRT step collects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BoundMode {
    /// Π m > 4√n + 1, enough because |t| ≤ 2√n.
    #[default]
    Sharp,
    /// Π m > 2n.
    Paper,
}

/// The chain's action on E[m]: (x, y) ↦ (u(x), y·v(x)) mod f_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoModM<E> {
    pub m: u64,
    pub f_m: Poly<E>,
    pub endo: Endo<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceResult {
    pub trace: BigInt,
    pub norm: BigUint,
    /// (m, t mod m) for each prime used.
    pub residues: Vec<(u64, u64)>,
}

fn check_prime<F: Field>(chain: &IsogenyChain<F>, m: u64) -> Result<()> {
    let p = chain.domain().field.characteristic();
    if m == 2 || !is_prime_u64(m) || m == p || chain.maps.iter().any(|x| x.degree == m) {
        return Err(Error::BadInput(format!("auxiliary prime {} must be odd and differ from p and ℓ", m)));
    }
    if !chain.is_closed() {
        return Err(Error::BadInput("chain is not an endomorphism".into()));
    }
    Ok(())
}

/// Reduces a closed chain modulo f_m, one factor at a time.
pub fn reduce_mod_m<F: Field>(chain: &IsogenyChain<F>, m: u64) -> Result<EndoModM<F::Elem>> {
    check_prime(chain, m)?;
    let e = chain.domain();
    let ring = PolyRing::new(e.field.clone());
    let f_m = ring.monic(&division_polynomial(e, m)?);
    let er = EndoRing::new(e, &f_m);
    let endo = er
        .reduce_chain(chain)
        .map_err(|_| Error::Integrity("an isogeny of degree prime to m killed m-torsion".into()))?;
    Ok(EndoModM { m, f_m, endo })
}

/// t mod m, found on the points of E[m] with x a root of f_m.
pub fn trace_mod_m<F: Field>(chain: &IsogenyChain<F>, m: u64) -> Result<u64> {
    check_prime(chain, m)?;
    let e = chain.domain();
    let ring = PolyRing::new(e.field.clone());
    let f_m = ring.monic(&division_polynomial(e, m)?);
    let n = chain.degree() % BigUint::from(m);
    let n = n.to_u64().unwrap();
    solve(chain, &ring, &f_m, m, n, 0)
}

fn solve<F: Field>(
    chain: &IsogenyChain<F>,
    ring: &PolyRing<F>,
    h: &Poly<F::Elem>,
    m: u64,
    n: u64,
    depth: usize,
) -> Result<u64> {
    match attempt(chain, h, m, n) {
        Ok(Some(t)) => Ok(t),
        Ok(None) => Err(Error::Integrity(format!("no τ satisfies the characteristic relation mod {}", m))),
        Err(Split(g)) => {
            if depth > 64 || g.deg() == 0 || g.deg() >= h.deg() {
                return Err(Error::Integrity("degenerate modulus split".into()));
            }
            let rest = ring.div_exact(h, &g)?;
            let t1 = solve(chain, ring, &g, m, n, depth + 1)?;
            let t2 = solve(chain, ring, &rest, m, n, depth + 1)?;
            if t1 != t2 {
                return Err(Error::Integrity(format!("factors of f_{} disagree: {} vs {}", m, t1, t2)));
            }
            Ok(t1)
        }
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % m, m - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn attempt<F: Field>(
    chain: &IsogenyChain<F>,
    h: &Poly<F::Elem>,
    m: u64,
    n: u64,
) -> core::result::Result<Option<u64>, Split<F::Elem>> {
    let er = EndoRing::new(chain.domain(), h);
    let psi = er.reduce_chain(chain)?;
    if psi == Endo::Zero {
        return Ok(None);
    }
    // scalar case: ψ = [k] on these points gives eigenvalues k and n/k
    let id = er.identity();
    let mut k_id = id.clone();
    for k in 1..m {
        if k_id == psi {
            return Ok(Some((k + n * inv_mod(k, m)) % m));
        }
        k_id = er.add(&k_id, &id)?;
    }
    let psi2 = er.compose(&psi, &psi);
    let lhs = er.add(&psi2, &er.mul_u64(n, &id)?)?;
    let mut acc = Endo::Zero;
    for tau in 0..m {
        if acc == lhs {
            return Ok(Some(tau));
        }
        acc = er.add(&acc, &psi)?;
    }
    Ok(None)
}

/// Whether the primes collected so far determine t.
fn enough(mode: BoundMode, prod: &BigUint, n: &BigUint) -> bool {
    match mode {
        BoundMode::Sharp => {
            if prod.is_zero() {
                return false;
            }
            let a = prod - BigUint::one();
            &a * &a > BigUint::from(16u32) * n
        }
        BoundMode::Paper => *prod > BigUint::from(2u32) * n,
    }
}

/// The primes trace() would use.
pub fn auxiliary_primes(p: u64, ell: u64, n: &BigUint, mode: BoundMode) -> Vec<u64> {
    let mut out = Vec::new();
    let mut prod = BigUint::one();
    for m in odd_primes() {
        if enough(mode, &prod, n) {
            break;
        }
        if m == p || m == ell {
            continue;
        }
        out.push(m);
        prod *= m;
    }
    out
}

pub fn trace<F: Field>(chain: &IsogenyChain<F>, mode: BoundMode) -> Result<TraceResult> {
    if !chain.is_closed() {
        return Err(Error::BadInput("chain is not an endomorphism".into()));
    }
    let p = chain.domain().field.characteristic();
    let ell = chain.maps[0].degree;
    let norm = chain.degree();
    let mut residues = Vec::new();
    let mut pairs = Vec::new();
    for m in auxiliary_primes(p, ell, &norm, mode) {
        let t = trace_mod_m(chain, m)?;
        residues.push((m, t));
        pairs.push((BigInt::from(t), BigInt::from(m)));
    }
    let trace = crt(&pairs)?;
    if &trace * &trace > BigInt::from(4u32) * BigInt::from(norm.clone()) {
        return Err(Error::Integrity(format!("trace {} violates |t| ≤ 2√n", trace)));
    }
    Ok(TraceResult { trace, norm, residues })
}
