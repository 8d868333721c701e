use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

/// The algebra Q⟨i, j⟩ with i² = a, j² = b, ij = −ji.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatAlgebra {
    pub a: BigInt,
    pub b: BigInt,
    pub p: u64,
}

/// a1 + a2·i + a3·j + a4·ij.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuatElement(pub [BigRational; 4]);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Legendre symbol (n/p) for an odd prime p.
pub(crate) fn legendre(n: i64, p: u64) -> i32 {
    let r = n.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let mut acc = 1u64;
    let (mut b, mut e) = (r, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// B_{p,∞} as (−1, −1) for p = 2, (−1, −p) for p ≡ 3 (mod 4),
/// (−2, −p) for p ≡ 5 (mod 8), and (−p, −q) for p ≡ 1 (mod 8) with q the
/// least prime ≡ 3 (mod 4) that is a non-residue mod p.
pub fn b_p_infty(p: u64) -> Result<QuatAlgebra> {
    if !is_prime_u64(p) {
        return Err(Error::BadPrime(p));
    }
    let (a, b) = if p == 2 {
        (-1, -1)
    } else if p % 4 == 3 {
        (-1, -(p as i64))
    } else if p % 8 == 5 {
        (-2, -(p as i64))
    } else {
        let qq = (3u64..)
            .step_by(4)
            .find(|&q| is_prime_u64(q) && legendre(q as i64, p) == -1)
            .expect("a non-residue prime exists");
        (-(p as i64), -(qq as i64))
    };
    Ok(QuatAlgebra { a: BigInt::from(a), b: BigInt::from(b), p })
}

impl QuatElement {
    pub fn new(c: [BigRational; 4]) -> Self {
        QuatElement(c)
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        QuatElement([q(c[0]), q(c[1]), q(c[2]), q(c[3])])
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    pub fn zero() -> Self {
        Self::from_ints([0, 0, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        QuatElement(core::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuatElement(core::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        QuatElement(core::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn conj(&self) -> Self {
        QuatElement([self.0[0].clone(), -&self.0[1], -&self.0[2], -&self.0[3]])
    }

    /// Parses sums of terms such as "-1/2", "17/6i", "1/6ij" or "-i".
    /// Whitespace is ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
        let bad = || Error::BadInput(format!("cannot parse quaternion '{}'", s));
        let mut out = Self::zero();
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push(core::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            terms.push(cur);
        }
        for t in terms {
            let (idx, coef) = if let Some(c) = t.strip_suffix("ij") {
                (3, c)
            } else if let Some(c) = t.strip_suffix('i') {
                (1, c)
            } else if let Some(c) = t.strip_suffix('j') {
                (2, c)
            } else {
                (0, t.as_str())
            };
            let (sign, body) = match coef.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, coef.strip_prefix('+').unwrap_or(coef)),
            };
            let val = if body.is_empty() {
                q(1)
            } else if let Some((n, d)) = body.split_once('/') {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            } else {
                BigRational::from_integer(body.parse().map_err(|_| bad())?)
            };
            out.0[idx] += val * q(sign);
        }
        Ok(out)
    }
}

impl fmt::Display for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "j", "ij"];
        let mut first = true;
        for (c, n) in self.0.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if !(a.is_one() && !n.is_empty()) {
                write!(f, "{}", a)?;
            }
            write!(f, "{}", n)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl QuatAlgebra {
    pub fn ab(&self) -> BigInt {
        &self.a * &self.b
    }

    pub fn mul(&self, x: &QuatElement, y: &QuatElement) -> QuatElement {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        let ab = &a * &b;
        let [x1, x2, x3, x4] = &x.0;
        let [y1, y2, y3, y4] = &y.0;
        QuatElement([
            x1 * y1 + &a * x2 * y2 + &b * x3 * y3 - &ab * x4 * y4,
            x1 * y2 + x2 * y1 - &b * x3 * y4 + &b * x4 * y3,
            x1 * y3 + x3 * y1 + &a * x2 * y4 - &a * x4 * y2,
            x1 * y4 + x4 * y1 + x2 * y3 - x3 * y2,
        ])
    }

    pub fn trd(&self, x: &QuatElement) -> BigRational {
        &x.0[0] * q(2)
    }

    /// a1² − a·a2² − b·a3² + ab·a4².
    pub fn nrd(&self, x: &QuatElement) -> BigRational {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        let [x1, x2, x3, x4] = &x.0;
        x1 * x1 - &a * x2 * x2 - &b * x3 * x3 + &a * &b * x4 * x4
    }

    /// Trd(x·ȳ).
    pub fn trace_pairing(&self, x: &QuatElement, y: &QuatElement) -> BigRational {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        let [x1, x2, x3, x4] = &x.0;
        let [y1, y2, y3, y4] = &y.0;
        (x1 * y1 - &a * x2 * y2 - &b * x3 * y3 + &a * &b * x4 * y4) * q(2)
    }

    pub fn is_integral(&self, x: &QuatElement) -> bool {
        self.trd(x).is_integer() && self.nrd(x).is_integer()
    }
}
