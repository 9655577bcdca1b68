//! Configurable limits for exact searches and enumerations.
//!
//! Every exhaustive procedure in this crate is guarded by one of these caps
//! instead of a hard-coded limit. The defaults are sized for interactive use;
//! raising them trades time and memory for larger instances.

/// Limits for exact searches and enumerations.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum vertex count accepted by the exact independent-set solver.
    pub mis_vertices: usize,
    /// Maximum vertex count for gadget generation (alphabet size to the
    /// power of the word length).
    pub gen_vertices: usize,
    /// Maximum number of candidate vertex subsets a generator may filter.
    pub gen_candidates: u128,
    /// Maximum vertex count accepted by the coloring search.
    pub search_vertices: usize,
    /// Maximum number of subset colorings the exhaustive covering-number
    /// oracle may enumerate.
    pub cover_enumeration: u128,
    /// Maximum number of d-subsets of [q] a subset coloring may range over.
    pub subset_space: usize,
    /// Reduced instances with at most this many edges (exactly counted
    /// before construction where possible, otherwise bounded by the
    /// candidate count) are materialized explicitly.
    pub materialize_edges: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            mis_vertices: 30,
            gen_vertices: 4096,
            gen_candidates: 20_000_000,
            search_vertices: 1024,
            cover_enumeration: 10_000_000,
            subset_space: 100_000,
            materialize_edges: 1_000_000,
        }
    }
}
