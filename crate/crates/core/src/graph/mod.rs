//! The supersingular ℓ-isogeny graph G(p, ℓ) with fixed edge
//! representatives, dual pairing and cycle enumeration.

mod cycles;

pub use cycles::{cycle_to_chain, enumerate_cycles, reverse_dual_chain, Cycle};

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::arith::{is_prime_u64, Field, Fp2, Fp2Elem, Poly, PrimeField};
use crate::curves::{automorphism_units, curve_from_j, supersingular_model, Curve, Point};
use crate::error::{Error, Result};
use crate::isogeny::{dual_edge, kernel_polynomials, velu, IsogenyMap};

#[derive(Clone, Debug)]
pub struct Vertex {
    pub j: Fp2Elem,
    /// Model over F_{p²} with Frobenius −p.
    pub curve: Curve<Fp2>,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    /// Index of the kernel among the sorted kernel polynomials at `from`.
    pub kernel_index: usize,
    pub kernel: Poly<Fp2Elem>,
    /// The fixed representative, landing on the target vertex's model.
    pub map: IsogenyMap<Fp2>,
    /// The edge at `to` whose kernel is the image of E[ℓ].
    pub dual: usize,
    /// The dual isogeny itself: the dual edge's representative corrected by
    /// the automorphism that makes the composite exactly [ℓ].
    pub dual_map: IsogenyMap<Fp2>,
}

#[derive(Clone, Debug)]
pub struct IsogenyGraph {
    pub p: u64,
    pub ell: u64,
    pub field: Fp2,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Outgoing edge ids per vertex, in kernel order.
    pub out: Vec<Vec<usize>>,
}

/// A supersingular j-invariant over F_p: 1728 when p ≡ 3 (mod 4), 0 when
/// p ≡ 2 (mod 3), otherwise the first j ∈ F_p whose curve has p + 1 points.
pub fn find_start_vertex(p: u64) -> Result<Curve<Fp2>> {
    let f = Fp2::new(p)?;
    let j = start_j(p)?;
    supersingular_model(&f, &f.from_u64(j))
}

fn start_j(p: u64) -> Result<u64> {
    if p % 4 == 3 {
        return Ok(1728 % p);
    }
    if p % 3 == 2 {
        return Ok(0);
    }
    let fp = PrimeField::new(p)?;
    for j in 1..p {
        if j == 1728 % p {
            continue;
        }
        let e = curve_from_j(&fp, &j);
        if crate::curves::count_points(&e)? == p + 1 {
            return Ok(j);
        }
    }
    Err(Error::Integrity(format!("no supersingular j-invariant in F_{}", p)))
}

/// ⌊p/12⌋ + ε with ε = 0, 1, 1, 2 for p ≡ 1; 5, 7; 11 (mod 12).
pub fn expected_vertex_count(p: u64) -> u64 {
    let eps = match p % 12 {
        1 => 0,
        5 | 7 => 1,
        11 => 2,
        _ if p == 2 || p == 3 => 1,
        _ => 0,
    };
    p / 12 + eps
}

pub fn vertex_count_check(g: &IsogenyGraph) -> Result<()> {
    let want = expected_vertex_count(g.p);
    if g.vertices.len() as u64 != want {
        return Err(Error::Integrity(format!(
            "G({}, {}) has {} vertices, expected {}",
            g.p,
            g.ell,
            g.vertices.len(),
            want
        )));
    }
    Ok(())
}

fn sort_key(p: u64, j: &Fp2Elem) -> u64 {
    j[0] + j[1] * p
}

struct RawEdge {
    from: usize,
    kernel_index: usize,
    kernel: Poly<Fp2Elem>,
    map: IsogenyMap<Fp2>,
    target_j: Fp2Elem,
}

pub fn build_graph(p: u64, ell: u64) -> Result<IsogenyGraph> {
    if p <= 3 || !is_prime_u64(p) {
        return Err(Error::BadPrime(p));
    }
    if !is_prime_u64(ell) || ell == p {
        return Err(Error::BadInput(format!("ℓ = {} must be a prime different from p", ell)));
    }
    let f = Fp2::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.wrapping_mul(31).wrapping_add(ell));
    let start = find_start_vertex(p)?;
    let mut models: BTreeMap<Fp2Elem, Curve<Fp2>> = BTreeMap::new();
    let mut raw: BTreeMap<Fp2Elem, Vec<RawEdge>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    models.insert(start.j_invariant(), start.clone());
    queue.push_back(start.j_invariant());
    while let Some(j) = queue.pop_front() {
        let e = models[&j].clone();
        let mut list = Vec::new();
        for (ki, k) in kernel_polynomials(&e, ell, &mut rng)?.into_iter().enumerate() {
            let phi = velu(&e, &k, ell)?;
            let tj = phi.codomain.j_invariant();
            if !models.contains_key(&tj) {
                models.insert(tj, supersingular_model(&f, &tj)?);
                queue.push_back(tj);
            }
            let map = phi.onto(&models[&tj])?;
            list.push(RawEdge { from: 0, kernel_index: ki, kernel: k, map, target_j: tj });
        }
        raw.insert(j, list);
    }
    let mut js: Vec<Fp2Elem> = models.keys().cloned().collect();
    js.sort_by_key(|j| sort_key(p, j));
    let index: BTreeMap<Fp2Elem, usize> = js.iter().enumerate().map(|(i, j)| (*j, i)).collect();
    let vertices: Vec<Vertex> = js.iter().map(|j| Vertex { j: *j, curve: models[j].clone() }).collect();
    let mut flat: Vec<(RawEdge, usize)> = Vec::new();
    let mut out = alloc::vec![Vec::new(); vertices.len()];
    for (vi, j) in js.iter().enumerate() {
        for mut r in raw.remove(j).unwrap() {
            r.from = vi;
            let to = index[&r.target_j];
            out[vi].push(flat.len());
            flat.push((r, to));
        }
    }
    let mut edges = Vec::with_capacity(flat.len());
    for (id, (r, to)) in flat.iter().enumerate() {
        let dual = out[*to]
            .iter()
            .copied()
            .filter(|&c| flat[c].1 == r.from)
            .filter(|&c| dual_edge(&r.map, &flat[c].0.map).unwrap_or(false))
            .collect::<Vec<_>>();
        if dual.len() != 1 {
            return Err(Error::Integrity(format!("edge {} has {} dual candidates", id, dual.len())));
        }
        let dual = dual[0];
        let dual_map = true_dual(&r.map, &flat[dual].0.map, ell, &mut rng)?;
        edges.push(Edge {
            id,
            from: r.from,
            to: *to,
            kernel_index: r.kernel_index,
            kernel: r.kernel.clone(),
            map: r.map.clone(),
            dual,
            dual_map,
        });
    }
    // Where the pairing is involutive, use the true dual as the
    // representative of the dual edge, so that walking an edge and straight
    // back is exactly [ℓ].
    for id in 0..edges.len() {
        let d = edges[id].dual;
        if d > id && edges[d].dual == id {
            edges[d].map = edges[id].dual_map.clone();
            edges[d].dual_map = edges[id].map.clone();
        }
    }
    Ok(IsogenyGraph { p, ell, field: f, vertices, edges, out })
}

/// Given φ and the representative ψ of its dual edge, ψ∘φ = [u]∘[ℓ] for an
/// automorphism [u]: (x, y) ↦ (u²x, u³y). Returns [u⁻¹]∘ψ.
fn true_dual(
    phi: &IsogenyMap<Fp2>,
    psi: &IsogenyMap<Fp2>,
    ell: u64,
    rng: &mut ChaCha8Rng,
) -> Result<IsogenyMap<Fp2>> {
    let e = &phi.domain;
    let f = &e.field;
    let pts: Vec<_> = (0..12).map(|_| e.random_point(rng)).collect();
    let mut imgs = Vec::with_capacity(pts.len());
    for pt in &pts {
        imgs.push((psi.evaluate(&phi.evaluate(pt)?)?, e.mul_u64(ell, pt)));
    }
    for u in automorphism_units(e) {
        let u2 = f.square(&u);
        let u3 = f.mul(&u2, &u);
        let ok = imgs.iter().all(|(img, want)| match (img, want) {
            (Point::Infinity, Point::Infinity) => true,
            (Point::Affine(x, y), Point::Affine(x2, y2)) => *x == f.mul(&u2, x2) && *y == f.mul(&u3, y2),
            _ => false,
        });
        if ok {
            let ui = f.inv(&u)?;
            return Ok(psi.then_scale(&ui, e));
        }
    }
    Err(Error::Integrity("dual edge composite is not an automorphism times [ℓ]".into()))
}

impl IsogenyGraph {
    pub fn vertex_of(&self, j: &Fp2Elem) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.j == *j)
            .ok_or_else(|| Error::NotAVertex(self.field.encode(j)))
    }

    pub fn encode_j(&self, v: usize) -> alloc::string::String {
        self.field.encode(&self.vertices[v].j)
    }

    /// Vertex of j^p.
    pub fn conjugate(&self, v: usize) -> usize {
        let jp = self.field.frobenius(&self.vertices[v].j);
        self.vertex_of(&jp).expect("the vertex set is Galois stable")
    }
}

#[cfg(test)]
mod tests;
