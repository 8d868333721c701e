//! Published example data for p = 31, 101 and 103 with ℓ = 2.
//!
//! Vertex labels are j-invariants in F_p written in decimal, or the names
//! "a", "A" (α and its conjugate) and "b", "B" (β and its conjugate) for
//! vertices outside F_p. How those names land on actual vertices is worked
//! out in `labels`.

/// One tabulated cycle: the vertices it walks through, with its trace and
/// norm.
#[derive(Clone, Copy, Debug)]
pub struct Row {
    pub path: &'static [&'static str],
    pub trace: Option<i64>,
    pub norm: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The two cycles generate End(E(j)).
    Maximal,
    /// They generate a non-maximal order with one maximal order above it
    /// (up to isomorphism).
    UniqueSuperorder,
}

#[derive(Clone, Copy, Debug)]
pub struct PairFixture {
    pub vertex: &'static str,
    pub rows: [Row; 2],
    pub verdict: Verdict,
    /// A basis of the generated order when it is printed.
    pub order: Option<[&'static str; 4]>,
}

#[derive(Clone, Copy, Debug)]
pub struct OrderFixture {
    /// Vertices whose endomorphism ring this is (a conjugate pair counts once).
    pub vertices: &'static [&'static str],
    pub basis: [&'static str; 4],
}

#[derive(Clone, Copy, Debug)]
pub struct Example {
    pub p: u64,
    /// i² = a, j² = b.
    pub presentation: (i64, i64),
    pub rational_vertices: &'static [u64],
    pub irrational_vertices: usize,
    /// Out-edge counts (from, to, multiplicity).
    pub adjacency: &'static [(&'static str, &'static str, usize)],
    pub pairs: &'static [PairFixture],
    pub orders: &'static [OrderFixture],
}

const fn row(path: &'static [&'static str], trace: i64, norm: u64) -> Row {
    Row { path, trace: Some(trace), norm }
}

const fn untraced(path: &'static [&'static str], norm: u64) -> Row {
    Row { path, trace: None, norm }
}

pub const P31: Example = Example {
    p: 31,
    presentation: (-1, -31),
    rational_vertices: &[2, 4, 23],
    irrational_vertices: 0,
    adjacency: &[("23", "23", 1), ("23", "2", 2), ("2", "23", 1), ("2", "2", 1), ("2", "4", 1), ("4", "2", 1), ("4", "4", 2)],
    pairs: &[
        PairFixture {
            vertex: "2",
            rows: [row(&["2", "2"], 0, 2), row(&["2", "4", "4", "2"], 2, 8)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "4",
            rows: [row(&["4", "4"], 1, 2), row(&["4", "2", "2", "4"], 0, 8)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "23",
            rows: [row(&["23", "23"], 2, 2), row(&["23", "2", "2", "23"], -1, 8)],
            verdict: Verdict::Maximal,
            order: None,
        },
    ],
    orders: &[
        OrderFixture { vertices: &["23"], basis: ["1", "-i", "-1/2i+1/2ij", "1/2-1/2j"] },
        // printed with the operator between the two i terms missing; both
        // readings give the same order up to isomorphism
        OrderFixture { vertices: &["2"], basis: ["1", "1/4i+1/4ij", "2i", "1/2-1/2j"] },
        OrderFixture { vertices: &["4"], basis: ["1", "1/2+1/6i+1/6j-1/6ij", "5/6i+1/3j+1/6ij", "-13/6i+1/3j+1/6ij"] },
    ],
};

pub const P103: Example = Example {
    p: 103,
    presentation: (-1, -103),
    rational_vertices: &[23, 24, 69, 34, 80],
    irrational_vertices: 4,
    adjacency: &[
        ("24", "24", 2), ("24", "23", 1),
        ("80", "80", 1), ("80", "23", 2),
        ("23", "24", 1), ("23", "80", 1), ("23", "69", 1),
        ("69", "69", 1), ("69", "23", 1), ("69", "34", 1),
        ("34", "69", 1), ("34", "a", 1), ("34", "A", 1),
        ("a", "34", 1), ("a", "A", 1), ("a", "b", 1),
        ("A", "34", 1), ("A", "a", 1), ("A", "B", 1),
        ("b", "a", 1), ("b", "B", 2),
        ("B", "A", 1), ("B", "b", 2),
    ],
    pairs: &[
        PairFixture {
            vertex: "34",
            rows: [row(&["34", "A", "a", "34"], -3, 8), row(&["34", "69", "69", "34"], 0, 8)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "69",
            rows: [row(&["69", "69"], 0, 2), row(&["69", "34", "a", "A", "34", "69"], -6, 32)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "23",
            rows: [row(&["23", "24", "24", "23"], 2, 8), row(&["23", "80", "80", "23"], -4, 8)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "80",
            rows: [row(&["80", "80"], 2, 2), row(&["80", "23", "69", "69", "23", "80"], 0, 32)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "24",
            rows: [row(&["24", "24"], -1, 2), row(&["24", "23", "69", "69", "23", "24"], 0, 32)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "a",
            rows: [untraced(&["a", "b", "B", "b", "a"], 16), untraced(&["a", "34", "69", "69", "34", "a"], 32)],
            verdict: Verdict::UniqueSuperorder,
            order: Some(["1", "-1/2+17/6i-1/6j+1/6ij", "-5/2i+1/2ij", "-1/2-22/3i-11/6j-2/3ij"]),
        },
    ],
    orders: &[
        OrderFixture { vertices: &["80"], basis: ["1", "i", "1/2i+1/2ij", "1/2+1/2j"] },
        // the last element is printed as 1/2 − 1/(2j)
        OrderFixture { vertices: &["23"], basis: ["1", "2i", "3/4i+1/4ij", "1/2-1/2j"] },
        // printed under 69 and without the separator between the second and
        // third elements. It has the norm 2 elements that the loop at 69
        // forces, and 34 has no loop.
        OrderFixture { vertices: &["69"], basis: ["1", "17/14i+1/14ij", "15/7i-2/7ij", "1/2-1/2j"] },
        // printed under 34, see above
        OrderFixture { vertices: &["34"], basis: ["1", "1/2+1/7i+3/14j", "1/2-16/7i+1/14j", "1/2-17/14i-1/14j-1/2ij"] },
        OrderFixture { vertices: &["24"], basis: ["1", "1/2+3/8i+1/8ij", "1/2-29/8i+1/8ij", "-13/8i+1/2j+1/8ij"] },
        OrderFixture { vertices: &["a", "A"], basis: ["-1", "-1/2+1/6i-1/6j-1/6ij", "3i", "5/6i-1/3j+1/6ij"] },
        OrderFixture { vertices: &["b", "B"], basis: ["1", "1/2+13/10i+1/10j-1/10ij", "-12/5i+1/5j-1/5ij", "1/2-3/5i+3/10j+1/5ij"] },
    ],
};

pub const P101: Example = Example {
    p: 101,
    presentation: (-2, -101),
    rational_vertices: &[64, 0, 21, 57, 3, 59, 66],
    irrational_vertices: 2,
    adjacency: &[
        ("0", "66", 3),
        ("66", "0", 1), ("66", "a", 1), ("66", "A", 1),
        ("21", "21", 1), ("21", "a", 1), ("21", "A", 1),
        ("57", "a", 1), ("57", "A", 1), ("57", "64", 1),
        ("64", "57", 1), ("64", "3", 2),
        ("3", "64", 2), ("3", "59", 1),
        ("59", "3", 1), ("59", "59", 2),
        ("a", "66", 1), ("a", "57", 1), ("a", "21", 1),
        ("A", "66", 1), ("A", "57", 1), ("A", "21", 1),
    ],
    pairs: &[
        PairFixture {
            vertex: "3",
            rows: [row(&["3", "59", "59", "3"], 2, 8), row(&["3", "64", "3"], -1, 4)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "59",
            rows: [row(&["59", "59"], -1, 2), row(&["59", "3", "64", "3", "59"], -8, 16)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "64",
            rows: [row(&["64", "57", "a", "66", "A", "57", "64"], 10, 64), row(&["64", "3", "64"], -1, 4)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "66",
            rows: [row(&["66", "0", "66"], 2, 4), row(&["66", "a", "57", "A", "66"], 5, 16)],
            verdict: Verdict::Maximal,
            order: None,
        },
        PairFixture {
            vertex: "21",
            rows: [row(&["21", "21"], 0, 2), row(&["21", "a", "66", "0", "66", "a", "21"], -8, 64)],
            verdict: Verdict::UniqueSuperorder,
            order: None,
        },
        PairFixture {
            vertex: "57",
            // the last edge is printed as ending at 37, which is not a vertex
            rows: [row(&["57", "64", "3", "59", "59", "3", "64", "57"], -8, 128), row(&["57", "a", "66", "A", "57"], -5, 16)],
            verdict: Verdict::UniqueSuperorder,
            order: None,
        },
        PairFixture {
            vertex: "a",
            rows: [row(&["a", "21", "21", "A", "57", "a"], 5, 32), row(&["a", "66", "0", "66", "a"], 4, 16)],
            verdict: Verdict::UniqueSuperorder,
            order: None,
        },
    ],
    orders: &[
        OrderFixture { vertices: &["3"], basis: ["1", "1/2-13/12i+1/12ij", "5/6i+1/6ij", "5/12i-1/2j+1/12ij"] },
        OrderFixture { vertices: &["59"], basis: ["1", "1/2+5/12i-1/12ij", "-13/6i-1/6ij", "-13/12i+1/2j-1/12ij"] },
        OrderFixture { vertices: &["64"], basis: ["-1", "-1/2-3/5i-1/10j+1/10ij", "-1/2-21/20i+1/5j+1/20ij", "-67/20i-1/10j-3/20ij"] },
        OrderFixture { vertices: &["66"], basis: ["1", "7/10i-1/10ij", "1/2-29/20i-3/20ij", "7/20i-1/2j-1/20ij"] },
        OrderFixture { vertices: &["21"], basis: ["-1", "i", "-1/2+1/4i-1/4ij", "-1/2+1/2i-1/2j"] },
        OrderFixture { vertices: &["57"], basis: ["1", "1/2-13/28i+1/7j+1/28ij", "-53/28i-1/14j+3/28ij", "1/2-11/4i-1/4ij"] },
        OrderFixture { vertices: &["0"], basis: ["-1", "-1/2+7/20i+1/20ij", "-1/2+9/5i+1/2j-1/10ij", "-29/20i+1/2j+3/20ij"] },
        OrderFixture { vertices: &["a", "A"], basis: ["-1", "2i", "-1/2+3/8i+1/4j-1/8ij", "-7/8i+1/4j+1/8ij"] },
    ],
};

pub fn example(p: u64) -> Option<&'static Example> {
    match p {
        31 => Some(&P31),
        101 => Some(&P101),
        103 => Some(&P103),
        _ => None,
    }
}
