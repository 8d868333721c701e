use alloc::vec::Vec;

use num_bigint::BigUint;

use super::IsogenyMap;
use crate::arith::{Embedding, Field};
use crate::curves::{Curve, Point};
use crate::error::{Error, Result};

/// Composable isogenies, kept factored. Applied first to last.
#[derive(Clone, Debug, PartialEq)]
pub struct IsogenyChain<F: Field> {
    pub maps: Vec<IsogenyMap<F>>,
}

pub fn compose_chain<F: Field>(maps: Vec<IsogenyMap<F>>) -> Result<IsogenyChain<F>> {
    if maps.is_empty() {
        return Err(Error::BadChain(0));
    }
    for (i, w) in maps.windows(2).enumerate() {
        if w[0].codomain != w[1].domain {
            return Err(Error::BadChain(i + 1));
        }
    }
    Ok(IsogenyChain { maps })
}

impl<F: Field> IsogenyChain<F> {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn domain(&self) -> &Curve<F> {
        &self.maps[0].domain
    }

    pub fn codomain(&self) -> &Curve<F> {
        &self.maps[self.maps.len() - 1].codomain
    }

    pub fn is_closed(&self) -> bool {
        self.domain() == self.codomain()
    }

    pub fn degree(&self) -> BigUint {
        self.maps.iter().fold(BigUint::from(1u32), |acc, m| acc * m.degree)
    }

    /// This chain followed by `other`.
    pub fn then(&self, other: &IsogenyChain<F>) -> Result<IsogenyChain<F>> {
        let mut maps = self.maps.clone();
        maps.extend(other.maps.iter().cloned());
        compose_chain(maps)
    }

    pub fn evaluate(&self, p: &Point<F::Elem>) -> Result<Point<F::Elem>> {
        let mut q = p.clone();
        for m in &self.maps {
            q = m.evaluate(&q)?;
        }
        Ok(q)
    }

    pub fn base_change<T: Field>(&self, emb: &Embedding<F, T>) -> IsogenyChain<T> {
        IsogenyChain { maps: self.maps.iter().map(|m| m.base_change(emb)).collect() }
    }
}
