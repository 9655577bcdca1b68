//! Hypergraph and coloring data model with the coloring-validity predicates.
//!
//! A [`Hypergraph`] is k-uniform over vertices `0..n`. Edges are sets: every
//! edge holds exactly k distinct vertex ids in strictly increasing order, and
//! the explicit edge list is kept sorted and duplicate-free. Large instances
//! may instead be *implicit*: a [`CandidateSpace`] describes an enumerable
//! space of candidate k-subsets together with a deterministic membership
//! predicate, so downstream code can choose between full enumeration and
//! uniform sampling.
//!
//! All types are immutable after construction and all operations are pure,
//! so values can be shared freely across threads.

use std::borrow::Cow;
use std::sync::Arc;

use rand::Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// A hyperedge: strictly increasing vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vec<u32>);

impl Edge {
    /// Canonicalizes (sorts) and validates: ids distinct.
    pub fn new(mut ids: Vec<u32>) -> Result<Edge> {
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams("edge contains a repeated vertex".into()));
        }
        Ok(Edge(ids))
    }

    /// The ids must already be strictly increasing.
    pub fn from_sorted(ids: Vec<u32>) -> Edge {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Edge(ids)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Deref for Edge {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

/// Candidate-space descriptor for implicit hypergraphs.
///
/// The space is an indexed family of candidate k-subsets (always valid
/// vertex sets, not necessarily edges). `contains` is the membership
/// predicate and must answer deterministically for any k-subset, including
/// ones outside the candidate family.
pub trait CandidateSpace: Send + Sync {
    fn num_vertices(&self) -> usize;
    fn uniformity(&self) -> usize;
    /// Total number of candidates. Candidates are indexed `0..count`; the
    /// same vertex set may appear under several indices.
    fn candidate_count(&self) -> u128;
    /// Decodes candidate `rank` into a sorted vertex set.
    fn candidate(&self, rank: u128) -> Vec<u32>;
    /// Membership of an arbitrary sorted k-subset.
    fn contains(&self, edge: &[u32]) -> bool;
    fn describe(&self) -> String;
}

#[derive(Clone)]
enum Repr {
    Explicit(Vec<Edge>),
    Implicit(Arc<dyn CandidateSpace>),
}

/// A k-uniform hypergraph on vertices `0..num_vertices`.
#[derive(Clone)]
pub struct Hypergraph {
    num_vertices: usize,
    uniformity: usize,
    repr: Repr,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.repr {
            Repr::Explicit(edges) => write!(
                f,
                "Hypergraph {{ n: {}, k: {}, edges: {} }}",
                self.num_vertices,
                self.uniformity,
                edges.len()
            ),
            Repr::Implicit(s) => write!(
                f,
                "Hypergraph {{ n: {}, k: {}, implicit: {} }}",
                self.num_vertices,
                self.uniformity,
                s.describe()
            ),
        }
    }
}

/// Structural equality; implicit instances compare unequal to everything.
impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Explicit(a), Repr::Explicit(b)) => {
                self.num_vertices == other.num_vertices
                    && self.uniformity == other.uniformity
                    && a == b
            }
            _ => false,
        }
    }
}

impl Hypergraph {
    /// Builds an explicit hypergraph. Edges are canonicalized, sorted and
    /// deduplicated; each must have exactly `uniformity` in-range vertices.
    pub fn explicit(num_vertices: usize, uniformity: usize, edges: Vec<Edge>) -> Result<Hypergraph> {
        let mut edges = edges;
        for e in &edges {
            if e.len() != uniformity {
                return Err(Error::DimensionMismatch(format!(
                    "edge of size {} in a {}-uniform hypergraph",
                    e.len(),
                    uniformity
                )));
            }
            if let Some(&v) = e.vertices().last() {
                if v as usize >= num_vertices {
                    return Err(Error::InvalidParams(format!(
                        "vertex id {} out of range (n = {})",
                        v + 1,
                        num_vertices
                    )));
                }
            }
        }
        edges.sort();
        edges.dedup();
        Ok(Hypergraph { num_vertices, uniformity, repr: Repr::Explicit(edges), labels: None })
    }

    pub fn implicit(space: Arc<dyn CandidateSpace>) -> Hypergraph {
        Hypergraph {
            num_vertices: space.num_vertices(),
            uniformity: space.uniformity(),
            repr: Repr::Implicit(space),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Hypergraph {
        self.labels = Some(labels);
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_implicit(&self) -> bool {
        matches!(self.repr, Repr::Implicit(_))
    }

    /// Explicit edge list; errors for implicit instances.
    pub fn edges(&self) -> Result<&[Edge]> {
        match &self.repr {
            Repr::Explicit(e) => Ok(e),
            Repr::Implicit(s) => Err(Error::NotEnumerable(s.describe())),
        }
    }

    pub fn num_edges(&self) -> Result<usize> {
        Ok(self.edges()?.len())
    }

    pub fn candidate_space(&self) -> Option<&Arc<dyn CandidateSpace>> {
        match &self.repr {
            Repr::Implicit(s) => Some(s),
            Repr::Explicit(_) => None,
        }
    }

    /// Deterministic membership for a sorted k-subset.
    pub fn contains_edge(&self, edge: &[u32]) -> bool {
        match &self.repr {
            Repr::Explicit(edges) => edges.binary_search_by(|e| e.vertices().cmp(edge)).is_ok(),
            Repr::Implicit(s) => s.contains(edge),
        }
    }

    /// The edge set, enumerating and filtering candidates for implicit
    /// instances when that stays within `caps.gen_candidates`.
    pub fn enumerated_edges(&self, caps: &Caps) -> Result<Cow<'_, [Edge]>> {
        match &self.repr {
            Repr::Explicit(e) => Ok(Cow::Borrowed(e)),
            Repr::Implicit(s) => {
                let count = s.candidate_count();
                if count > caps.gen_candidates {
                    return Err(Error::NotEnumerable(format!(
                        "{} candidates exceed cap {}",
                        count, caps.gen_candidates
                    )));
                }
                let mut set = std::collections::BTreeSet::new();
                for rank in 0..count {
                    let cand = s.candidate(rank);
                    if s.contains(&cand) {
                        set.insert(Edge::from_sorted(cand));
                    }
                }
                Ok(Cow::Owned(set.into_iter().collect()))
            }
        }
    }

    /// Uniform draw from the candidate space (implicit) or edge list
    /// (explicit). The result is a candidate, not necessarily an edge.
    pub fn sample_candidate<R: Rng>(&self, rng: &mut R) -> Vec<u32> {
        match &self.repr {
            Repr::Explicit(edges) => {
                let i = rng.gen_range(0..edges.len());
                edges[i].vertices().to_vec()
            }
            Repr::Implicit(s) => {
                let rank = rng.gen_range(0..s.candidate_count());
                s.candidate(rank)
            }
        }
    }
}

/// A total vertex coloring with colors `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    values: Vec<u8>,
    num_colors: usize,
}

impl Coloring {
    pub fn new(values: Vec<u8>, num_colors: usize) -> Result<Coloring> {
        if num_colors == 0 || num_colors > 256 {
            return Err(Error::InvalidParams(format!("unsupported color count {num_colors}")));
        }
        if let Some(&v) = values.iter().max() {
            if v as usize >= num_colors {
                return Err(Error::InvalidParams(format!(
                    "color {} out of range (c = {})",
                    v + 1,
                    num_colors
                )));
            }
        }
        Ok(Coloring { values, num_colors })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn color(&self, v: u32) -> u8 {
        self.values[v as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Merges color class 0 against all the others, yielding a 2-coloring.
    /// Applied to a coloring in which every edge sees all colors, the result
    /// is a proper 2-coloring.
    pub fn merge_to_two_coloring(&self) -> Coloring {
        let values = self.values.iter().map(|&v| if v == 0 { 0 } else { 1 }).collect();
        Coloring { values, num_colors: 2 }
    }
}

fn check_dims(h: &Hypergraph, chi: &Coloring) -> Result<()> {
    if chi.len() != h.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "coloring covers {} vertices, hypergraph has {}",
            chi.len(),
            h.num_vertices()
        )));
    }
    Ok(())
}

/// True iff no edge is monochromatic under `chi`.
pub fn is_proper_coloring(h: &Hypergraph, chi: &Coloring, caps: &Caps) -> Result<bool> {
    check_dims(h, chi)?;
    for e in h.enumerated_edges(caps)?.iter() {
        let c0 = chi.color(e[0]);
        if e.iter().all(|&v| chi.color(v) == c0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of distinct colors on an edge.
fn distinct_colors(e: &[u32], chi: &Coloring) -> usize {
    let mut seen = [false; 256];
    let mut n = 0;
    for &v in e {
        let c = chi.color(v) as usize;
        if !seen[c] {
            seen[c] = true;
            n += 1;
        }
    }
    n
}

/// True iff every edge sees at least `p` distinct colors out of `q`.
/// With `p == q` this is the full rainbow condition: every edge sees all
/// q colors.
pub fn is_rainbow_coloring(
    h: &Hypergraph,
    chi: &Coloring,
    q: usize,
    p: usize,
    caps: &Caps,
) -> Result<bool> {
    check_dims(h, chi)?;
    if p > q {
        return Err(Error::InvalidParams(format!("p = {p} exceeds q = {q}")));
    }
    if q > h.uniformity() {
        return Err(Error::InvalidParams(format!(
            "q = {q} exceeds uniformity k = {}",
            h.uniformity()
        )));
    }
    if chi.num_colors() > q {
        return Err(Error::InvalidParams(format!(
            "coloring uses {} colors, expected at most q = {q}",
            chi.num_colors()
        )));
    }
    for e in h.enumerated_edges(caps)?.iter() {
        if distinct_colors(e, chi) < p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monochromatic edges in canonical order.
pub fn monochromatic_edges(h: &Hypergraph, chi: &Coloring, caps: &Caps) -> Result<Vec<Edge>> {
    check_dims(h, chi)?;
    let mut out = Vec::new();
    for e in h.enumerated_edges(caps)?.iter() {
        let c0 = chi.color(e[0]);
        if e.iter().all(|&v| chi.color(v) == c0) {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Exact maximum independent set size by branch and bound on the
/// complementary minimum hitting set. A set is independent iff it contains
/// no full edge, so the complement of any minimum hitting set is a maximum
/// independent set.
pub fn max_independent_set_size(h: &Hypergraph, caps: &Caps) -> Result<usize> {
    let n = h.num_vertices();
    if n > caps.mis_vertices || n > 64 {
        return Err(Error::TooLarge(format!(
            "{} vertices (independent-set cap is {})",
            n,
            caps.mis_vertices.min(64)
        )));
    }
    let edges: Vec<u64> = h
        .edges()?
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect();
    if edges.is_empty() {
        return Ok(n);
    }

    fn matching_bound(edges: &[u64], hit: u64) -> usize {
        // greedy disjoint uncovered edges: each needs its own deletion
        let mut used = hit;
        let mut lb = 0;
        for &e in edges {
            if e & used == 0 {
                used |= e;
                lb += 1;
            }
        }
        lb
    }

    fn solve(edges: &[u64], hit: u64, count: usize, best: &mut usize) {
        if count >= *best {
            return;
        }
        let first = edges.iter().find(|&&e| e & hit == 0);
        let Some(&e) = first else {
            *best = count;
            return;
        };
        if count + matching_bound(edges, hit) >= *best {
            return;
        }
        let mut rest = e;
        while rest != 0 {
            let v = rest & rest.wrapping_neg();
            rest ^= v;
            solve(edges, hit | v, count + 1, best);
        }
    }

    let mut best = n; // deleting everything always hits
    solve(&edges, 0, 0, &mut best);
    Ok(n - best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge(n: usize, ids: Vec<u32>) -> Hypergraph {
        let k = ids.len();
        Hypergraph::explicit(n, k, vec![Edge::new(ids).unwrap()]).unwrap()
    }

    #[test]
    fn proper_on_single_edge() {
        let caps = Caps::default();
        let h = single_edge(2, vec![0, 1]);
        let two = Coloring::new(vec![0, 1], 2).unwrap();
        let mono = Coloring::new(vec![0, 0], 2).unwrap();
        assert!(is_proper_coloring(&h, &two, &caps).unwrap());
        assert!(!is_proper_coloring(&h, &mono, &caps).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let caps = Caps::default();
        let h = single_edge(3, vec![0, 1, 2]);
        let chi = Coloring::new(vec![0, 1], 2).unwrap();
        assert!(is_proper_coloring(&h, &chi, &caps).is_err());
    }

    #[test]
    fn rainbow_counts_distinct_colors() {
        let caps = Caps::default();
        let h = single_edge(3, vec![0, 1, 2]);
        let chi = Coloring::new(vec![0, 1, 2], 3).unwrap();
        assert!(is_rainbow_coloring(&h, &chi, 3, 3, &caps).unwrap());

        // k = 4 edge with colors {0, 0, 1, 2}: three distinct out of 3,
        // but not four out of four.
        let h4 = single_edge(4, vec![0, 1, 2, 3]);
        let chi4 = Coloring::new(vec![0, 0, 1, 2], 3).unwrap();
        assert!(is_rainbow_coloring(&h4, &chi4, 3, 3, &caps).unwrap());
        let chi4b = Coloring::new(vec![0, 0, 1, 2], 4).unwrap();
        assert!(!is_rainbow_coloring(&h4, &chi4b, 4, 4, &caps).unwrap());
    }

    #[test]
    fn rainbow_parameter_errors() {
        let caps = Caps::default();
        let h = single_edge(3, vec![0, 1, 2]);
        let chi = Coloring::new(vec![0, 1, 2], 3).unwrap();
        assert!(is_rainbow_coloring(&h, &chi, 2, 3, &caps).is_err()); // p > q
        assert!(is_rainbow_coloring(&h, &chi, 4, 2, &caps).is_err()); // q > k
    }

    #[test]
    fn monochromatic_edges_vs_proper() {
        let caps = Caps::default();
        let h = Hypergraph::explicit(
            4,
            2,
            vec![Edge::new(vec![0, 1]).unwrap(), Edge::new(vec![2, 3]).unwrap()],
        )
        .unwrap();
        let all_one = Coloring::new(vec![0; 4], 1).unwrap();
        assert_eq!(monochromatic_edges(&h, &all_one, &caps).unwrap().len(), 2);
        let proper = Coloring::new(vec![0, 1, 0, 1], 2).unwrap();
        assert!(monochromatic_edges(&h, &proper, &caps).unwrap().is_empty());
        assert!(is_proper_coloring(&h, &proper, &caps).unwrap());
    }

    #[test]
    fn complete_graph_all_two_colorings_improper() {
        // the binary perm gadget is the complete graph on 4 vertices:
        // exhausting all 16 two-colorings always leaves a monochromatic pair
        let caps = Caps::default();
        let params = crate::gadgets::PermGadgetParams::new(2, 2, 1).unwrap();
        let h = crate::gadgets::gen_perm_gadget(&params, &caps).unwrap();
        for mask in 0..16u32 {
            let values: Vec<u8> = (0..4).map(|i| ((mask >> i) & 1) as u8).collect();
            let chi = Coloring::new(values, 2).unwrap();
            assert!(!is_proper_coloring(&h, &chi, &caps).unwrap());
        }
    }

    #[test]
    fn mis_trivial_cases() {
        let caps = Caps::default();
        let empty = Hypergraph::explicit(5, 2, vec![]).unwrap();
        assert_eq!(max_independent_set_size(&empty, &caps).unwrap(), 5);
        let h = single_edge(3, vec![0, 1, 2]);
        assert_eq!(max_independent_set_size(&h, &caps).unwrap(), 2);
    }

    #[test]
    fn mis_cap_is_enforced() {
        let caps = Caps { mis_vertices: 4, ..Caps::default() };
        let h = Hypergraph::explicit(5, 2, vec![]).unwrap();
        assert!(matches!(max_independent_set_size(&h, &caps), Err(Error::TooLarge(_))));
    }

    #[test]
    fn edges_are_canonicalized() {
        let h = Hypergraph::explicit(
            4,
            2,
            vec![
                Edge::new(vec![3, 1]).unwrap(),
                Edge::new(vec![0, 2]).unwrap(),
                Edge::new(vec![1, 3]).unwrap(),
            ],
        )
        .unwrap();
        let edges = h.edges().unwrap();
        assert_eq!(edges.len(), 2);
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn repeating_vertices_rejected() {
        assert!(Edge::new(vec![1, 1, 2]).is_err());
    }
}
