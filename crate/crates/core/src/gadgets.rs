//! Generators and membership predicates for two families of string-based
//! gadget hypergraphs.
//!
//! Both families live on the vertex set of all length-n strings over a fixed
//! alphabet; a vertex id is the lexicographic rank of its string with
//! coordinate 0 most significant, so certificates are portable. The alphabet
//! is `{0, …, d-1}` internally; 1-based alphabets map by subtracting one.
//!
//! - **Permutation-repair family** (d-uniform over `[d]^n`): write the d
//!   strings of a candidate edge as a d×n matrix; the *deficiency* of a
//!   column is the number of alphabet symbols missing from it, and the
//!   candidate is an edge iff the total deficiency over all columns is at
//!   most the repair budget r — equivalently, changing at most r entries
//!   makes every column a permutation of the alphabet.
//! - **Rainbow-column family** (p-uniform over `Σ^n`): a column is *noisy*
//!   if it does not contain all p symbols; p strings form an edge iff at
//!   most t columns are noisy.
//!
//! The two differ exactly in how a noisy column may look: with a repair
//! budget of 1 a noisy column still has d-1 distinct symbols, while the
//! rainbow-column family admits noisy columns with a single repeated symbol.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::subsets::{binomial, Combinations};

/// Parameters of the permutation-repair family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermGadgetParams {
    /// Alphabet size d >= 2; also the uniformity.
    pub alphabet: usize,
    /// String length n >= 1.
    pub word_len: usize,
    /// Total deficiency budget r >= 0.
    pub repair_budget: usize,
}

impl PermGadgetParams {
    pub fn new(alphabet: usize, word_len: usize, repair_budget: usize) -> Result<Self> {
        if alphabet < 2 {
            return Err(Error::InvalidParams(format!("alphabet size {alphabet} < 2")));
        }
        if word_len < 1 {
            return Err(Error::InvalidParams("word length must be at least 1".into()));
        }
        if repair_budget > word_len * (alphabet - 1) {
            return Err(Error::InvalidParams(format!(
                "repair budget {repair_budget} exceeds {} (the predicate would be trivially true)",
                word_len * (alphabet - 1)
            )));
        }
        Ok(PermGadgetParams { alphabet, word_len, repair_budget })
    }

    /// With word_len <= repair_budget, distinct strings may agree in every
    /// column and multiset "edges" would start to matter; generation still
    /// proceeds over set edges but callers should surface this warning.
    pub fn degenerate_warning(&self) -> Option<String> {
        if self.word_len <= self.repair_budget {
            Some(format!(
                "word length {} <= repair budget {}: only set edges are generated; \
                 candidate matrices with repeated rows are excluded",
                self.word_len, self.repair_budget
            ))
        } else {
            None
        }
    }
}

/// Parameters of the rainbow-column family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RainbowGadgetParams {
    /// Alphabet size p = |Σ| >= 2; also the uniformity.
    pub symbols: usize,
    /// String length n.
    pub word_len: usize,
    /// Maximum number of noisy columns t, 0 <= t <= n.
    pub noisy_budget: usize,
}

impl RainbowGadgetParams {
    pub fn new(symbols: usize, word_len: usize, noisy_budget: usize) -> Result<Self> {
        if symbols < 2 {
            return Err(Error::InvalidParams(format!("alphabet size {symbols} < 2")));
        }
        if word_len < 1 {
            return Err(Error::InvalidParams("word length must be at least 1".into()));
        }
        if noisy_budget > word_len {
            return Err(Error::InvalidParams(format!(
                "noisy budget {noisy_budget} exceeds word length {word_len}"
            )));
        }
        Ok(RainbowGadgetParams { symbols, word_len, noisy_budget })
    }

    /// With t = n the edge condition is vacuous and the gadget is the
    /// complete p-uniform hypergraph.
    pub fn is_trivial(&self) -> bool {
        self.noisy_budget >= self.word_len
    }
}

/// Result of a permutation-repair edge check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermEdgeCheck {
    pub is_edge: bool,
    /// Total deficiency: sum over columns of missing alphabet symbols.
    pub deficiency: usize,
    /// Per-column deficiency, exposed so the column-counting reading of
    /// "noisy coordinates" can be compared against the sum.
    pub column_deficiency: Vec<usize>,
}

impl PermEdgeCheck {
    /// Columns with at least one missing symbol.
    pub fn noisy_columns(&self) -> Vec<usize> {
        self.column_deficiency
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Result of a rainbow-column edge check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowEdgeCheck {
    pub is_edge: bool,
    /// Columns where the strings do not show all p symbols, ascending.
    pub noisy: Vec<usize>,
}

fn validate_strings(strings: &[Vec<u8>], count: usize, len: usize, alphabet: usize) -> Result<()> {
    if strings.len() != count {
        return Err(Error::InvalidParams(format!(
            "expected {count} strings, got {}",
            strings.len()
        )));
    }
    for s in strings {
        if s.len() != len {
            return Err(Error::InvalidParams(format!(
                "string of length {}, expected {len}",
                s.len()
            )));
        }
        if s.iter().any(|&x| x as usize >= alphabet) {
            return Err(Error::InvalidParams(format!(
                "symbol out of alphabet range 0..{alphabet}"
            )));
        }
    }
    for i in 0..strings.len() {
        for j in i + 1..strings.len() {
            if strings[i] == strings[j] {
                return Err(Error::InvalidParams("strings must be pairwise distinct".into()));
            }
        }
    }
    Ok(())
}

/// Checks d distinct strings against the permutation-repair condition.
pub fn perm_edge_check(params: &PermGadgetParams, strings: &[Vec<u8>]) -> Result<PermEdgeCheck> {
    let d = params.alphabet;
    validate_strings(strings, d, params.word_len, d)?;
    let mut column_deficiency = Vec::with_capacity(params.word_len);
    let mut total = 0usize;
    for col in 0..params.word_len {
        let mut seen = vec![false; d];
        for s in strings {
            seen[s[col] as usize] = true;
        }
        let missing = seen.iter().filter(|&&b| !b).count();
        column_deficiency.push(missing);
        total += missing;
    }
    Ok(PermEdgeCheck {
        is_edge: total <= params.repair_budget,
        deficiency: total,
        column_deficiency,
    })
}

/// Checks p distinct strings against the rainbow-column condition.
pub fn rainbow_edge_check(
    params: &RainbowGadgetParams,
    strings: &[Vec<u8>],
) -> Result<RainbowEdgeCheck> {
    let p = params.symbols;
    validate_strings(strings, p, params.word_len, p)?;
    let mut noisy = Vec::new();
    for col in 0..params.word_len {
        let mut seen = vec![false; p];
        let mut distinct = 0;
        for s in strings {
            let v = s[col] as usize;
            if !seen[v] {
                seen[v] = true;
                distinct += 1;
            }
        }
        if distinct != p {
            noisy.push(col);
        }
    }
    Ok(RainbowEdgeCheck { is_edge: noisy.len() <= params.noisy_budget, noisy })
}

/// Lexicographic rank of a string (coordinate 0 most significant).
pub fn string_rank(s: &[u8], alphabet: usize) -> u32 {
    s.iter().fold(0u32, |acc, &x| acc * alphabet as u32 + x as u32)
}

/// Inverse of [`string_rank`].
pub fn string_unrank(mut rank: u32, alphabet: usize, len: usize) -> Vec<u8> {
    let mut s = vec![0u8; len];
    for i in (0..len).rev() {
        s[i] = (rank % alphabet as u32) as u8;
        rank /= alphabet as u32;
    }
    s
}

/// All strings of the given length in lexicographic order.
pub fn all_strings(alphabet: usize, len: usize) -> Vec<Vec<u8>> {
    let total = (alphabet as u64).pow(len as u32);
    (0..total).map(|r| string_unrank(r as u32, alphabet, len)).collect()
}

fn check_gen_caps(vertices: u128, uniformity: usize, caps: &Caps) -> Result<()> {
    if vertices > caps.gen_vertices as u128 {
        return Err(Error::TooLarge(format!(
            "{vertices} vertices exceed generation cap {}",
            caps.gen_vertices
        )));
    }
    let candidates = binomial(vertices as usize, uniformity);
    if candidates > caps.gen_candidates {
        return Err(Error::TooLarge(format!(
            "{candidates} candidate edges exceed enumeration cap {}",
            caps.gen_candidates
        )));
    }
    Ok(())
}

/// Generates the permutation-repair gadget explicitly: vertices are all
/// strings `[d]^n` in lexicographic id order, edges all d-subsets passing
/// [`perm_edge_check`].
pub fn gen_perm_gadget(params: &PermGadgetParams, caps: &Caps) -> Result<Hypergraph> {
    let d = params.alphabet;
    let n_vertices = (d as u128).pow(params.word_len as u32);
    check_gen_caps(n_vertices, d, caps)?;
    let strings = all_strings(d, params.word_len);
    let mut edges = Vec::new();
    for combo in Combinations::new(strings.len(), d) {
        let tuple: Vec<Vec<u8>> = combo.iter().map(|&i| strings[i].clone()).collect();
        if perm_edge_check(params, &tuple)?.is_edge {
            edges.push(Edge::from_sorted(combo.iter().map(|&i| i as u32).collect()));
        }
    }
    Hypergraph::explicit(n_vertices as usize, d, edges)
}

/// Generates the rainbow-column gadget explicitly.
pub fn gen_rainbow_gadget(params: &RainbowGadgetParams, caps: &Caps) -> Result<Hypergraph> {
    let p = params.symbols;
    let n_vertices = (p as u128).pow(params.word_len as u32);
    check_gen_caps(n_vertices, p, caps)?;
    let strings = all_strings(p, params.word_len);
    let mut edges = Vec::new();
    for combo in Combinations::new(strings.len(), p) {
        let tuple: Vec<Vec<u8>> = combo.iter().map(|&i| strings[i].clone()).collect();
        if rainbow_edge_check(params, &tuple)?.is_edge {
            edges.push(Edge::from_sorted(combo.iter().map(|&i| i as u32).collect()));
        }
    }
    Hypergraph::explicit(n_vertices as usize, p, edges)
}
