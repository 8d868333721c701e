//! Names for vertices: decimal j-invariants in F_p, field encodings such as
//! "3,28", and the symbolic names used by the example fixtures.

use std::collections::BTreeMap;

use isoendo_core::arith::Field;
use isoendo_core::graph::IsogenyGraph;
use isoendo_core::{Error, Result};

/// Neighbours of `v` outside F_p, without repeats.
fn irrational_neighbours(g: &IsogenyGraph, v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = g.out[v]
        .iter()
        .map(|&e| g.edges[e].to)
        .filter(|&w| g.conjugate(w) != w)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Assigns "a", "A", "b", "B" to vertices outside F_p. The conjugate pair
/// {a, A} is the one adjacent to `anchor`; `swap` picks which of the two is
/// "a". "b" is the remaining irrational neighbour of "a".
pub fn symbolic(g: &IsogenyGraph, anchor: usize, swap: bool) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    let pair = irrational_neighbours(g, anchor);
    if pair.len() != 2 {
        return out;
    }
    let a = pair[usize::from(swap)];
    let abar = g.conjugate(a);
    out.insert("a", a);
    out.insert("A", abar);
    if let Some(&b) = irrational_neighbours(g, a).iter().find(|&&w| w != a && w != abar) {
        out.insert("b", b);
        out.insert("B", g.conjugate(b));
    }
    out
}

/// Resolves a vertex name: an F_{p²} encoding ("23" or "3,28") or a
/// symbolic name from `names`.
pub fn resolve(g: &IsogenyGraph, names: &BTreeMap<&'static str, usize>, s: &str) -> Result<usize> {
    if let Some(&v) = names.get(s) {
        return Ok(v);
    }
    let j = g.field.decode(s).map_err(|_| Error::NotAVertex(s.to_string()))?;
    g.vertex_of(&j)
}

/// Vertices named by the fixtures for this prime, with the first choice of
/// conjugate.
pub fn default_names(g: &IsogenyGraph) -> BTreeMap<&'static str, usize> {
    match anchor(g) {
        Some(a) => symbolic(g, a, false),
        None => BTreeMap::new(),
    }
}

/// The rational vertex next to α in the example graphs.
pub fn anchor(g: &IsogenyGraph) -> Option<usize> {
    let j = match g.p {
        101 => 21,
        103 => 34,
        _ => return None,
    };
    g.vertex_of(&g.field.from_u64(j)).ok()
}

/// Short display name for a vertex.
pub fn display(g: &IsogenyGraph, names: &BTreeMap<&'static str, usize>, v: usize) -> String {
    let f = &g.field;
    let j = &g.vertices[v].j;
    if f.in_prime_field(j) {
        return f.encode(j).split(',').next().unwrap_or("0").to_string();
    }
    let sym = names.iter().find(|(_, &w)| w == v).map(|(k, _)| match *k {
        "a" => "α",
        "A" => "ᾱ",
        "b" => "β",
        "B" => "β̄",
        other => other,
    });
    match sym {
        Some(s) => format!("{}[{}]", s, f.encode(j)),
        None => format!("[{}]", f.encode(j)),
    }
}
