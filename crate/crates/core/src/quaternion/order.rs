//! Orders in a definite quaternion algebra: Gram matrices, discriminants,
//! realizing trace data, and the maximal orders above a given order.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebra::{QuatAlgebra, QuatElement};
use super::lattice::{coords, det, lattice_hnf, QMatrix};
use crate::error::{Error, Result};

/// A full-rank lattice in the algebra, given by four basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatOrder {
    pub alg: QuatAlgebra,
    pub basis: Vec<QuatElement>,
}

fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qb(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

fn gram_of(alg: &QuatAlgebra, basis: &[QuatElement]) -> QMatrix {
    basis
        .iter()
        .map(|x| basis.iter().map(|y| alg.trace_pairing(x, y)).collect())
        .collect()
}

/// √det for a Gram matrix of trace pairings, if it is an integer square.
pub fn reduced_discriminant_of_gram(g: &QMatrix) -> Result<BigInt> {
    let d = det(g);
    if d.is_zero() {
        return Err(Error::RankDeficient);
    }
    if !d.is_integer() || d.is_negative() {
        return Err(Error::BadInput(format!("Gram determinant {} is not a positive integer", d)));
    }
    let d = d.to_integer();
    let r = d.sqrt();
    if &r * &r != d {
        return Err(Error::BadInput(format!("Gram determinant {} is not a square", d)));
    }
    Ok(r)
}

impl QuatOrder {
    pub fn new(alg: QuatAlgebra, basis: Vec<QuatElement>) -> Result<Self> {
        if basis.len() != 4 {
            return Err(Error::BadInput(format!("an order needs 4 basis elements, got {}", basis.len())));
        }
        let o = QuatOrder { alg, basis };
        if det(&o.coord_matrix()).is_zero() {
            return Err(Error::RankDeficient);
        }
        Ok(o)
    }

    /// The lattice spanned by `gens` (any number of them), in canonical basis.
    pub fn from_generators(alg: QuatAlgebra, gens: &[QuatElement]) -> Result<Self> {
        let rows: QMatrix = gens.iter().map(|g| g.0.to_vec()).collect();
        let h = lattice_hnf(&rows)?;
        let basis = h.into_iter().map(|r| QuatElement::new([r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()])).collect();
        Ok(QuatOrder { alg, basis })
    }

    pub fn coord_matrix(&self) -> QMatrix {
        self.basis.iter().map(|b| b.0.to_vec()).collect()
    }

    /// Same lattice, Hermite normal form basis. Equal lattices give equal
    /// canonical forms.
    pub fn canonical(&self) -> Result<Self> {
        Self::from_generators(self.alg.clone(), &self.basis)
    }

    pub fn contains(&self, x: &QuatElement) -> bool {
        match coords(&self.coord_matrix(), &x.0) {
            Ok(c) => c.iter().all(|v| v.is_integer()),
            Err(_) => false,
        }
    }

    pub fn gram(&self) -> QMatrix {
        gram_of(&self.alg, &self.basis)
    }

    pub fn reduced_discriminant(&self) -> Result<BigInt> {
        reduced_discriminant_of_gram(&self.gram())
    }

    /// Contains 1 and is closed under multiplication.
    pub fn is_order(&self) -> bool {
        if !self.contains(&QuatElement::one()) {
            return false;
        }
        self.basis
            .iter()
            .all(|x| self.basis.iter().all(|y| self.contains(&self.alg.mul(x, y))))
    }

    pub fn is_maximal(&self) -> bool {
        self.is_order() && self.reduced_discriminant().map(|d| d == BigInt::from(self.alg.p)).unwrap_or(false)
    }

    /// Whether `other` is the same lattice as `self`.
    pub fn same_lattice(&self, other: &QuatOrder) -> bool {
        self.basis.iter().all(|b| other.contains(b)) && other.basis.iter().all(|b| self.contains(b))
    }
}

/// The smallest ring containing 1 and `gens`, or None if its trace form
/// stops being integral (the generators are not all integral together).
pub fn ring_closure(alg: &QuatAlgebra, gens: &[QuatElement]) -> Result<Option<QuatOrder>> {
    let mut all: Vec<QuatElement> = vec![QuatElement::one()];
    all.extend(gens.iter().cloned());
    let mut rounds = 0;
    let mut cur = loop {
        match QuatOrder::from_generators(alg.clone(), &all) {
            Err(Error::RankDeficient) if rounds < 3 => {
                let prods: Vec<QuatElement> =
                    all.iter().flat_map(|x| all.iter().map(|y| alg.mul(x, y))).collect();
                all.extend(prods);
                rounds += 1;
            }
            r => break r?,
        }
    };
    for _ in 0..64 {
        if !cur.gram().iter().flatten().all(|x| x.is_integer()) {
            return Ok(None);
        }
        let mut next = cur.basis.clone();
        for x in &cur.basis {
            for y in &cur.basis {
                next.push(alg.mul(x, y));
            }
        }
        let nxt = QuatOrder::from_generators(alg.clone(), &next)?;
        if nxt == cur {
            return Ok(Some(cur));
        }
        cur = nxt;
    }
    Err(Error::Budget)
}

/// Gram matrix of Trd(x·ȳ) on the basis 1, α, β, αβ, from traces and norms
/// alone.
pub fn gram_from_traces(
    t_a: &BigInt,
    n_a: &BigInt,
    t_b: &BigInt,
    n_b: &BigInt,
    t_ab: &BigInt,
) -> Result<QMatrix> {
    for (t, n) in [(t_a, n_a), (t_b, n_b)] {
        if t * t > BigInt::from(4) * n {
            return Err(Error::NotRealizable(format!("trace {} with norm {} violates t² ≤ 4n", t, n)));
        }
    }
    let nab = n_a * n_b;
    if t_ab * t_ab > BigInt::from(4) * &nab {
        return Err(Error::NotRealizable(format!("trace {} of αβ exceeds 2√(n_α n_β)", t_ab)));
    }
    let two = BigInt::from(2);
    let ab = t_a * t_b - t_ab;
    let e = |v: &BigInt| qb(v);
    Ok(vec![
        vec![e(&two), e(t_a), e(t_b), e(t_ab)],
        vec![e(t_a), e(&(&two * n_a)), e(&ab), e(&(n_a * t_b))],
        vec![e(t_b), e(&ab), e(&(&two * n_b)), e(&(n_b * t_a))],
        vec![e(t_ab), e(&(n_a * t_b)), e(&(n_b * t_a)), e(&(&two * &nab))],
    ])
}

const PREFERRED_DENOMS: [i128; 10] = [1, 2, 3, 4, 6, 8, 12, 14, 20, 28];

fn denominators(bound: u64) -> impl Iterator<Item = i128> {
    let b = bound as i128;
    PREFERRED_DENOMS
        .into_iter()
        .filter(move |&d| d <= b)
        .chain((1..=b).filter(|d| !PREFERRED_DENOMS.contains(d)))
}

fn weights(alg: &QuatAlgebra) -> Result<[i128; 3]> {
    if !alg.a.is_negative() || !alg.b.is_negative() {
        return Err(Error::Unsupported("only definite algebras (a, b < 0) are handled".into()));
    }
    let a = alg.a.abs().to_i128().ok_or_else(|| Error::TooLarge("algebra parameter".into()))?;
    let b = alg.b.abs().to_i128().ok_or_else(|| Error::TooLarge("algebra parameter".into()))?;
    Ok([a, b, a * b])
}

fn small(x: &BigInt, what: &str) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.abs() < 1 << 60)
        .ok_or_else(|| Error::TooLarge(format!("{} {}", what, x)))
}

fn isqrt_i(x: i128) -> i128 {
    if x < 0 {
        -1
    } else {
        x.sqrt()
    }
}

fn pure_element(t: &BigInt, v: [i128; 3], den: i128) -> QuatElement {
    let d = BigInt::from(den);
    QuatElement::new([
        BigRational::new(t.clone(), BigInt::from(2)),
        BigRational::new(BigInt::from(v[0]), d.clone()),
        BigRational::new(BigInt::from(v[1]), d.clone()),
        BigRational::new(BigInt::from(v[2]), d),
    ])
}

/// Whether Q(√−d) (d > 0) embeds in the algebra ramified at p and ∞, that is,
/// p does not split in it. d = 0 is the rational case.
fn embeds(mut d: i128, p: u64) -> bool {
    if d == 0 {
        return true;
    }
    let pp = p as i128;
    while d % (pp * pp) == 0 {
        d /= pp * pp;
    }
    if d % pp == 0 {
        return true;
    }
    if p == 2 {
        return (-d).rem_euclid(8) != 1;
    }
    super::algebra::legendre((-d).rem_euclid(pp) as i64, p) != 1
}

/// Some element with reduced trace t and reduced norm n, with coordinates
/// of denominator at most 2·`denom_bound`.
pub fn find_element(alg: &QuatAlgebra, t: &BigInt, n: &BigInt, denom_bound: u64) -> Result<QuatElement> {
    let w = weights(alg)?;
    let disc = small(&(BigInt::from(4) * n - t * t), "norm")?;
    if disc < 0 {
        return Err(Error::NotRealizable(format!("trace {} with norm {} violates t² ≤ 4n", t, n)));
    }
    if !embeds(disc, alg.p) {
        return Err(Error::NotRealizable(format!("Q(√−{}) does not embed: {} splits in it", disc, alg.p)));
    }
    for d in denominators(denom_bound) {
        // |a|C2² + |b|C3² + |ab|C4² = D²(4n − t²) with c_k = C_k / 2D
        let m = d * d * disc;
        for c4 in 0..=isqrt_i(m / w[2]) {
            let r4 = m - w[2] * c4 * c4;
            for c3 in 0..=isqrt_i(r4 / w[1]) {
                let r3 = r4 - w[1] * c3 * c3;
                if r3 % w[0] != 0 {
                    continue;
                }
                let s = r3 / w[0];
                let c2 = isqrt_i(s);
                if c2 * c2 == s {
                    return Ok(pure_element(t, [c2, c3, c4], 2 * d));
                }
            }
        }
    }
    Err(Error::NotFound)
}

/// Elements α, β with the given reduced traces and norms and Trd(αβ) = t_ab.
pub fn realize_pair(
    alg: &QuatAlgebra,
    (t_a, n_a): (&BigInt, &BigInt),
    (t_b, n_b): (&BigInt, &BigInt),
    t_ab: &BigInt,
    denom_bound: u64,
) -> Result<(QuatElement, QuatElement)> {
    gram_from_traces(t_a, n_a, t_b, n_b, t_ab)?;
    let alpha = find_element(alg, t_a, n_a, denom_bound)?;
    let w = weights(alg)?;
    let disc = small(&(BigInt::from(4) * n_b - t_b * t_b), "norm")?;
    // for pure u, v: Trd(uv) = 2(a·u2v2 + b·u3v3 − ab·u4v4)
    let a = qb(&alg.a);
    let b = qb(&alg.b);
    let lin_q = [&a * &alpha.0[1] * qi(2), &b * &alpha.0[2] * qi(2), -(&a * &b) * &alpha.0[3] * qi(2)];
    let target = qb(t_ab) - qb(t_a) * qb(t_b) / qi(2);
    let l = lin_q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())).lcm(target.denom());
    let lq = qb(&l);
    let lin: Vec<i128> = lin_q.iter().map(|x| small(&(x * &lq).to_integer(), "coefficient")).collect::<Result<_>>()?;
    let rhs = small(&(&target * &lq).to_integer(), "coefficient")?;
    let check = |beta: &QuatElement| {
        alg.trd(beta) == qb(t_b) && alg.nrd(beta) == qb(n_b) && alg.trd(&alg.mul(&alpha, beta)) == qb(t_ab)
    };
    if lin.iter().all(|&c| c == 0) {
        if rhs != 0 {
            return Err(Error::NotRealizable("scalar α fixes Trd(αβ)".into()));
        }
        let beta = find_element(alg, t_b, n_b, denom_bound)?;
        return Ok((alpha, beta));
    }
    // solve for the coordinate with the smallest weight among those the
    // linear condition involves; enumerate the other two
    let k = (0..3).filter(|&k| lin[k] != 0).min_by_key(|&k| w[k]).unwrap();
    let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
    let (j1, j2) = (others[0], others[1]);
    for d in denominators(denom_bound) {
        // v_k = V_k / 2D; norm: Σ w_k V_k² = D²(4n − t²); linear: Σ lin_k V_k = 2D·rhs
        let m = d * d * disc;
        let r = 2 * d * rhs;
        let b1 = isqrt_i(m / w[j1]);
        for v1 in -b1..=b1 {
            let rem1 = m - w[j1] * v1 * v1;
            let b2 = isqrt_i(rem1 / w[j2]);
            for v2 in -b2..=b2 {
                let num = r - lin[j1] * v1 - lin[j2] * v2;
                if num % lin[k] != 0 {
                    continue;
                }
                let vk = num / lin[k];
                if rem1 - w[j2] * v2 * v2 != w[k] * vk * vk {
                    continue;
                }
                let mut v = [0i128; 3];
                v[j1] = v1;
                v[j2] = v2;
                v[k] = vk;
                let beta = pure_element(t_b, v, 2 * d);
                if check(&beta) {
                    return Ok((alpha, beta));
                }
            }
        }
    }
    Err(Error::NotFound)
}

fn prime_factors(mut n: BigInt) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while n > BigInt::one() {
        if BigInt::from(q) * BigInt::from(q) > n {
            out.push(n.to_u64().ok_or_else(|| Error::TooLarge("index factor".into()))?);
            break;
        }
        if (&n % q).is_zero() {
            out.push(q);
            while (&n % q).is_zero() {
                n /= q;
            }
        }
        q += 1;
        if q > 1 << 20 {
            return Err(Error::TooLarge("index has a large factor".into()));
        }
    }
    Ok(out)
}

/// Kernel of an integer matrix modulo a prime q, as a basis of F_q⁴.
fn nullspace_mod(g: &[Vec<i128>], q: u64) -> Vec<Vec<u64>> {
    let qi = q as i128;
    let n = g[0].len();
    let mut a: Vec<Vec<i128>> = g.iter().map(|r| r.iter().map(|x| x.rem_euclid(qi)).collect()).collect();
    let inv = |x: i128| -> i128 {
        let mut r = 1i128;
        let (mut b, mut e) = (x, qi - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % qi;
            }
            b = b * b % qi;
            e >>= 1;
        }
        r
    };
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..n {
        let Some(pr) = (row..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(row, pr);
        let iv = inv(a[row][c]);
        for k in 0..n {
            a[row][k] = a[row][k] * iv % qi;
        }
        for r in 0..a.len() {
            if r != row && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..n {
                    a[r][k] = (a[r][k] - f * a[row][k]).rem_euclid(qi);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ((qi - a[r][f]) % qi) as u64;
            }
            v
        })
        .collect()
}

/// Projective points of the span of `basis` over F_q (first nonzero
/// coordinate 1 in the combination).
fn projective_points(basis: &[Vec<u64>], q: u64, budget: usize) -> Result<Vec<Vec<u64>>> {
    let k = basis.len();
    let n = basis.first().map(|b| b.len()).unwrap_or(0);
    let mut out = Vec::new();
    for lead in 0..k {
        let count = (q as u128).pow((k - lead - 1) as u32);
        if out.len() as u128 + count > budget as u128 {
            return Err(Error::Budget);
        }
        for idx in 0..count as u64 {
            let mut coef = vec![0u64; k];
            coef[lead] = 1;
            let mut r = idx;
            for c in coef.iter_mut().skip(lead + 1) {
                *c = r % q;
                r /= q;
            }
            let v: Vec<u64> = (0..n)
                .map(|t| (0..k).fold(0u128, |acc, s| (acc + coef[s] as u128 * basis[s][t] as u128) % q as u128) as u64)
                .collect();
            out.push(v);
        }
    }
    Ok(out)
}

pub const DEFAULT_SUPERORDER_BUDGET: usize = 100_000;

/// Every maximal order containing `order`. The order is maximal exactly
/// when its reduced discriminant is p, and any strictly larger order
/// contains some y ∉ O with qy ∈ O for a prime q dividing the index; all
/// such y are tried and the rings they generate are explored.
pub fn maximal_superorders(order: &QuatOrder, budget: usize) -> Result<Vec<QuatOrder>> {
    if !order.is_order() {
        return Err(Error::BadInput("lattice is not an order".into()));
    }
    let p = BigInt::from(order.alg.p);
    let start = order.canonical()?;
    let mut seen: BTreeSet<Vec<QuatElement>> = BTreeSet::new();
    seen.insert(start.basis.clone());
    let mut queue = VecDeque::from([start]);
    let mut found = Vec::new();
    let mut work = 0usize;
    while let Some(o) = queue.pop_front() {
        let d = o.reduced_discriminant()?;
        if !(&d % &p).is_zero() {
            return Err(Error::Integrity(format!("order discriminant {} is prime to p", d)));
        }
        let index = &d / &p;
        if index.is_one() {
            found.push(o);
            continue;
        }
        let g: Vec<Vec<i128>> = o
            .gram()
            .iter()
            .map(|r| r.iter().map(|x| small(&x.to_integer(), "Gram entry")).collect())
            .collect::<Result<_>>()?;
        for q in prime_factors(index)? {
            let ker = nullspace_mod(&g, q);
            for c in projective_points(&ker, q, budget)? {
                work += 1;
                if work > budget {
                    return Err(Error::Budget);
                }
                let qq = BigRational::from_integer(BigInt::from(q));
                let y = o
                    .basis
                    .iter()
                    .zip(&c)
                    .fold(QuatElement::zero(), |acc, (b, &ci)| acc.add(&b.scale(&qi(ci as i64))))
                    .scale(&qq.recip());
                if !o.alg.is_integral(&y) {
                    continue;
                }
                let mut gens = o.basis.clone();
                gens.push(y);
                let Some(next) = ring_closure(&o.alg, &gens)? else { continue };
                if seen.insert(next.basis.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(found)
}
