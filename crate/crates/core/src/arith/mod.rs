//! Exact arithmetic: prime fields, extension towers, polynomials and
//! residue rings, integer CRT.

pub mod crt;
pub mod embed;
pub mod factor;
pub mod field;
pub mod fp2;
pub mod gf;
pub mod poly;
pub mod prime;

pub use crt::{crt, crt_i64};
pub use embed::Embedding;
pub use field::{is_prime_u64, isqrt_big, odd_primes, Field};
pub use fp2::{Fp2, Fp2Elem};
pub use gf::{build_tower, GaloisField};
pub use poly::{Poly, PolyRing, ResidueRing, Split};
pub use prime::PrimeField;
