use alloc::vec;
use alloc::vec::Vec;

use super::IsogenyGraph;
use crate::arith::Fp2;
use crate::error::{Error, Result};
use crate::isogeny::{compose_chain, IsogenyChain};

/// A closed walk a_1..a_e of edge ids starting and ending at `base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub base: usize,
    pub edges: Vec<usize>,
}

impl Cycle {
    /// Validates that consecutive edges are composable and the walk closes.
    pub fn new(g: &IsogenyGraph, edges: Vec<usize>) -> Result<Cycle> {
        let first = *edges.first().ok_or(Error::BadChain(0))?;
        let e0 = g.edges.get(first).ok_or_else(|| Error::BadInput("unknown edge id".into()))?;
        let base = e0.from;
        let mut at = base;
        for (i, &id) in edges.iter().enumerate() {
            let e = g.edges.get(id).ok_or_else(|| Error::BadInput("unknown edge id".into()))?;
            if e.from != at {
                return Err(Error::BadChain(i));
            }
            at = e.to;
        }
        if at != base {
            return Err(Error::BadChain(edges.len()));
        }
        Ok(Cycle { base, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Visited vertices, starting and ending at the base.
    pub fn vertices(&self, g: &IsogenyGraph) -> Vec<usize> {
        let mut v = vec![self.base];
        v.extend(self.edges.iter().map(|&e| g.edges[e].to));
        v
    }

    /// No a_{i+1} is dual to a_i.
    pub fn no_backtracking(&self, g: &IsogenyGraph) -> bool {
        self.edges.windows(2).all(|w| g.edges[w[0]].dual != w[1])
    }

    /// a_1 is dual to a_e.
    pub fn first_dual_last(&self, g: &IsogenyGraph) -> bool {
        g.edges[*self.edges.last().unwrap()].dual == self.edges[0]
    }

    /// The walk of dual edges in reverse order.
    pub fn reverse_dual(&self, g: &IsogenyGraph) -> Cycle {
        Cycle { base: self.base, edges: self.edges.iter().rev().map(|&e| g.edges[e].dual).collect() }
    }

    pub fn then(&self, other: &Cycle) -> Result<Cycle> {
        if self.base != other.base {
            return Err(Error::BadChain(self.len()));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Cycle { base: self.base, edges })
    }
}

/// All closed walks from `base` of length 1..=max_len without backtracking,
/// ordered by length and then by edge ids.
pub fn enumerate_cycles(g: &IsogenyGraph, base: usize, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    dfs(g, base, base, max_len, &mut path, &mut out);
    out.sort_by(|a, b| a.edges.len().cmp(&b.edges.len()).then_with(|| a.edges.cmp(&b.edges)));
    out
}

fn dfs(g: &IsogenyGraph, base: usize, at: usize, max_len: usize, path: &mut Vec<usize>, out: &mut Vec<Cycle>) {
    if path.len() == max_len {
        return;
    }
    for &id in &g.out[at] {
        if let Some(&last) = path.last() {
            if g.edges[last].dual == id {
                continue;
            }
        }
        path.push(id);
        let to = g.edges[id].to;
        if to == base {
            out.push(Cycle { base, edges: path.clone() });
        }
        dfs(g, base, to, max_len, path, out);
        path.pop();
    }
}

/// Composition of the edge representatives along the cycle.
pub fn cycle_to_chain(g: &IsogenyGraph, c: &Cycle) -> Result<IsogenyChain<Fp2>> {
    compose_chain(c.edges.iter().map(|&e| g.edges[e].map.clone()).collect())
}

/// The dual of the cycle's endomorphism: true duals of the edges in
/// reverse order.
pub fn reverse_dual_chain(g: &IsogenyGraph, c: &Cycle) -> Result<IsogenyChain<Fp2>> {
    compose_chain(c.edges.iter().rev().map(|&e| g.edges[e].dual_map.clone()).collect())
}
