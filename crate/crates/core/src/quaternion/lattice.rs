//! Exact linear algebra on small lattices: determinants, Hermite normal
//! form, LLL on Gram matrices, short vector enumeration and isometry.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type QMatrix = Vec<Vec<BigRational>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn to_q(m: &ZMatrix) -> QMatrix {
    m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

pub fn to_z(m: &QMatrix) -> Option<ZMatrix> {
    m.iter()
        .map(|r| r.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect())
        .collect()
}

pub fn det(m: &QMatrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            a.swap(piv, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

pub fn inverse(m: &QMatrix) -> Result<QMatrix> {
    let n = m.len();
    let mut a: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::RankDeficient)?;
        a.swap(piv, c);
        let inv = a[c][c].recip();
        for k in 0..2 * n {
            a[c][k] *= &inv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (n, m, k) = (a.len(), b[0].len(), b.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Row coordinates c with c·B = x.
pub fn coords(basis: &QMatrix, x: &[BigRational]) -> Result<Vec<BigRational>> {
    let inv = inverse(basis)?;
    let n = x.len();
    Ok((0..n).map(|j| (0..n).fold(BigRational::zero(), |acc, t| acc + &x[t] * &inv[t][j])).collect())
}

/// Row Hermite normal form of an integer matrix of full column rank:
/// upper triangular, positive pivots, entries above a pivot in [0, pivot).
pub fn hnf(rows: &ZMatrix) -> Result<ZMatrix> {
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut a = rows.clone();
    let mut r = 0;
    for c in 0..n {
        loop {
            let piv = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(piv) = piv else {
                return Err(Error::RankDeficient);
            };
            a.swap(r, piv);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let qt = a[i][c].div_floor(&a[r][c]);
                for k in 0..n {
                    let t = &qt * &a[r][k];
                    a[i][k] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_negative() {
            for k in 0..n {
                a[r][k] = -&a[r][k];
            }
        }
        for i in 0..r {
            let qt = a[i][c].div_floor(&a[r][c]);
            if qt.is_zero() {
                continue;
            }
            for k in 0..n {
                let t = &qt * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
    }
    a.truncate(n);
    Ok(a)
}

/// Canonical basis of the lattice spanned by rational rows.
pub fn lattice_hnf(rows: &QMatrix) -> Result<QMatrix> {
    let d = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let z: ZMatrix = rows.iter().map(|r| r.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect()).collect();
    let h = hnf(&z)?;
    let dq = BigRational::from_integer(d);
    Ok(h.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone()) / &dq).collect()).collect())
}

fn gso(g: &QMatrix) -> (QMatrix, Vec<BigRational>) {
    let n = g.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bs = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j].clone();
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &bs[k];
            }
            mu[i][j] = s / &bs[j];
        }
        let mut s = g[i][i].clone();
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &bs[k];
        }
        bs[i] = s;
        mu[i][i] = BigRational::one();
    }
    (mu, bs)
}

fn round(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

fn congruence(u: &ZMatrix, g: &QMatrix) -> QMatrix {
    let uq = to_q(u);
    mat_mul(&mat_mul(&uq, g), &transpose(&uq))
}

/// LLL (δ = 3/4) on a positive definite Gram matrix. Returns a unimodular U
/// and the reduced Gram U·G·Uᵀ.
pub fn lll_gram(g: &QMatrix) -> (ZMatrix, QMatrix) {
    let n = g.len();
    let mut u: ZMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    let mut cur = g.clone();
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(&cur);
            let r = round(&mu[k][j]);
            if !r.is_zero() {
                for t in 0..n {
                    let s = &r * &u[j][t];
                    u[k][t] -= s;
                }
                cur = congruence(&u, g);
            }
        }
        let (mu, bs) = gso(&cur);
        if bs[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bs[k - 1] {
            k += 1;
        } else {
            u.swap(k, k - 1);
            cur = congruence(&u, g);
            k = if k > 1 { k - 1 } else { 1 };
        }
    }
    (u, cur)
}

fn isqrt_floor_q(x: &BigRational) -> BigInt {
    // floor(sqrt(x)) for x ≥ 0
    if !x.is_positive() {
        return BigInt::zero();
    }
    let fl = x.floor().to_integer();
    let mut r = fl.sqrt();
    while BigRational::from_integer(&r + 1u32) * BigRational::from_integer(&r + 1u32) <= *x {
        r += 1u32;
    }
    while BigRational::from_integer(r.clone()) * BigRational::from_integer(r.clone()) > *x {
        r -= 1u32;
    }
    r
}

/// All nonzero x with xᵀGx ≤ bound, by Fincke–Pohst enumeration. At most
/// `budget` vectors are visited.
pub fn short_vectors(g: &QMatrix, bound: &BigRational, budget: usize) -> Result<Vec<Vec<BigInt>>> {
    let n = g.len();
    let (mu, bs) = gso(g);
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    let mut visited = 0usize;
    enum_level(n, n, &mu, &bs, bound.clone(), &mut x, &mut out, &mut visited, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enum_level(
    n: usize,
    level: usize,
    mu: &QMatrix,
    bs: &[BigRational],
    rem: BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    visited: &mut usize,
    budget: usize,
) -> Result<()> {
    if level == 0 {
        if x.iter().any(|v| !v.is_zero()) {
            out.push(x.clone());
        }
        return Ok(());
    }
    let i = level - 1;
    let mut c = BigRational::zero();
    for j in i + 1..n {
        c -= &mu[j][i] * BigRational::from_integer(x[j].clone());
    }
    // B_i (x_i − c)² ≤ rem
    let r = isqrt_floor_q(&(&rem / &bs[i])) + 1u32;
    let lo = (&c - BigRational::from_integer(r.clone())).floor().to_integer();
    let hi = (&c + BigRational::from_integer(r)).ceil().to_integer();
    let mut v = lo;
    while v <= hi {
        let d = BigRational::from_integer(v.clone()) - &c;
        let used = &bs[i] * &d * &d;
        if used <= rem {
            *visited += 1;
            if *visited > budget {
                return Err(Error::Budget);
            }
            x[i] = v.clone();
            enum_level(n, i, mu, bs, &rem - used, x, out, visited, budget)?;
        }
        v += 1u32;
    }
    x[i] = BigInt::zero();
    Ok(())
}

fn form(g: &QMatrix, x: &[BigInt], y: &[BigInt]) -> BigRational {
    let n = g.len();
    let mut s = BigRational::zero();
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            s += &g[i][j] * BigRational::from_integer(&x[i] * &y[j]);
        }
    }
    s
}

pub const DEFAULT_ISOMETRY_BUDGET: usize = 2_000_000;

/// Whether some unimodular U has U·G1·Uᵀ = G2.
pub fn is_isometric(g1: &QMatrix, g2: &QMatrix, budget: usize) -> Result<bool> {
    let n = g1.len();
    if g2.len() != n || det(g1) != det(g2) {
        return Ok(false);
    }
    let (_, r1) = lll_gram(g1);
    let (_, r2) = lll_gram(g2);
    let diag: Vec<BigRational> = (0..n).map(|i| r2[i][i].clone()).collect();
    let mut sorted = diag.clone();
    sorted.sort();
    let bound = sorted.last().cloned().unwrap_or_else(BigRational::zero);
    let vs = short_vectors(&r1, &bound, budget)?;
    let cands: Vec<Vec<&Vec<BigInt>>> = diag
        .iter()
        .map(|d| vs.iter().filter(|v| form(&r1, v, v) == *d).collect())
        .collect();
    let mut chosen: Vec<&Vec<BigInt>> = Vec::new();
    let mut steps = 0usize;
    backtrack(&r1, &r2, &cands, &mut chosen, &mut steps, budget)
}

fn backtrack<'a>(
    r1: &QMatrix,
    r2: &QMatrix,
    cands: &[Vec<&'a Vec<BigInt>>],
    chosen: &mut Vec<&'a Vec<BigInt>>,
    steps: &mut usize,
    budget: usize,
) -> Result<bool> {
    let i = chosen.len();
    if i == cands.len() {
        let m: QMatrix = chosen
            .iter()
            .map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        return Ok(det(&m).abs().is_one());
    }
    for v in &cands[i] {
        *steps += 1;
        if *steps > budget {
            return Err(Error::Budget);
        }
        if chosen.iter().enumerate().all(|(j, w)| form(r1, v, w) == r2[i][j]) {
            chosen.push(v);
            if backtrack(r1, r2, cands, chosen, steps, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}
