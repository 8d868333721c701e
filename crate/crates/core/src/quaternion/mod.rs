//! Quaternion algebras ramified at p and ∞, their orders, and the lattice
//! tools used to compare them.

mod algebra;
pub mod lattice;
mod order;

pub use algebra::{b_p_infty, QuatAlgebra, QuatElement};
pub use lattice::{is_isometric, lll_gram, short_vectors, DEFAULT_ISOMETRY_BUDGET};
pub use order::{
    find_element, gram_from_traces, maximal_superorders, realize_pair, reduced_discriminant_of_gram,
    ring_closure, QuatOrder, DEFAULT_SUPERORDER_BUDGET,
};

#[cfg(test)]
mod tests;
