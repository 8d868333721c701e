//! Supersingular ℓ-isogeny graphs over F_{p²}, endomorphisms from cycles,
//! traces by a generalized Schoof algorithm, and quaternion orders in
//! B_{p,∞}.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod arith;
pub mod curves;
pub mod error;
pub mod graph;
pub mod isogeny;
pub mod quaternion;
pub mod schoof;

pub use error::{Error, Result};
