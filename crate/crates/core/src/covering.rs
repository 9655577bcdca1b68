//! Monochromatic covering numbers of colored subset systems.
//!
//! A *subset coloring* assigns one of c colors to every d-subset of
//! `{0,…,q-1}`. A *monochromatic cover* is a family of d-subsets sharing one
//! color whose union is the whole ground set. This module provides:
//!
//! - an exact minimum-cover search per coloring ([`min_mono_cover`]),
//! - the exhaustive covering number over all colorings
//!   ([`covering_number_exhaustive`]): the worst case of the minimum cover,
//!   which may be unbounded once c exceeds d,
//! - the extremal coloring realizing the ⌈(q-c+1)/(d-c+1)⌉ lower bound
//!   ([`extremal_coloring`]),
//! - a constructive cover for two colors ([`two_color_cover`]) of size at
//!   most ⌈(q-1)/(d-1)⌉, built by induction on the ground set,
//! - the prime upper bound ([`min_cover_prime`]), and
//! - an exact pairwise-intersection profile for set families
//!   ([`disjointness_profile`]), matching the Turán-type bound
//!   1/(Δ-1) when no Δ sets are pairwise disjoint.
//!
//! d-subsets are stored by colexicographic rank (see [`crate::subsets`]),
//! so fixture files are portable.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::subsets::{binomial, colex_rank, colex_subsets};

/// Trial-division primality.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// A total coloring of all d-subsets of `{0,…,q-1}` with colors `0..c`,
/// indexed by colexicographic rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetColoring {
    q: usize,
    d: usize,
    c: usize,
    values: Vec<u8>,
}

impl SubsetColoring {
    pub fn new(q: usize, d: usize, c: usize, values: Vec<u8>) -> Result<SubsetColoring> {
        if d == 0 || d > q {
            return Err(Error::InvalidParams(format!("need 1 <= d <= q, got d={d} q={q}")));
        }
        if c == 0 || c > 255 {
            return Err(Error::InvalidParams(format!("unsupported color count {c}")));
        }
        let expect = binomial(q, d);
        if values.len() as u128 != expect {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} subsets",
                values.len(),
                expect
            )));
        }
        if values.iter().any(|&v| v as usize >= c) {
            return Err(Error::InvalidParams("color value out of range".into()));
        }
        Ok(SubsetColoring { q, d, c, values })
    }

    pub fn from_fn(q: usize, d: usize, c: usize, f: impl Fn(&[u8]) -> u8) -> Result<SubsetColoring> {
        let values = colex_subsets(q, d).iter().map(|s| f(s)).collect();
        SubsetColoring::new(q, d, c, values)
    }

    pub fn constant(q: usize, d: usize, c: usize, color: u8) -> Result<SubsetColoring> {
        SubsetColoring::from_fn(q, d, c, |_| color)
    }

    pub fn random<R: rand::Rng>(q: usize, d: usize, c: usize, rng: &mut R) -> Result<SubsetColoring> {
        let total = binomial(q, d) as usize;
        let values = (0..total).map(|_| rng.gen_range(0..c as u8)).collect();
        SubsetColoring::new(q, d, c, values)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_colors(&self) -> usize {
        self.c
    }

    /// Color of a sorted d-subset.
    pub fn get(&self, set: &[u8]) -> u8 {
        debug_assert_eq!(set.len(), self.d);
        self.values[colex_rank(set)]
    }

    /// Values in colexicographic rank order.
    pub fn values(&self) -> &[u8] {
        &self.values
    }
}

/// A monochromatic cover: d-subsets of one color whose union is the ground
/// set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFamily {
    pub sets: Vec<Vec<u8>>,
    pub color: u8,
}

impl CoverFamily {
    /// Checks the two defining conditions against a subset coloring.
    pub fn is_valid_for(&self, f: &SubsetColoring) -> bool {
        let mut mask: u64 = 0;
        for s in &self.sets {
            if s.len() != f.d() || f.get(s) != self.color {
                return false;
            }
            for &e in s {
                mask |= 1 << e;
            }
        }
        mask == (1u64 << f.q()) - 1
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn set_mask(s: &[u8]) -> u64 {
    s.iter().fold(0u64, |m, &e| m | (1 << e))
}

/// Exact minimum-size cover among the sets of one color class.
/// Iterative deepening over the target size; at each node the uncovered
/// element with the fewest remaining candidate sets is branched on.
fn min_cover_one_color(q: usize, sets: &[(u64, usize)], bound: usize) -> Option<Vec<usize>> {
    let full = (1u64 << q) - 1;
    let union = sets.iter().fold(0u64, |m, &(s, _)| m | s);
    if union != full {
        return None;
    }
    fn dfs(
        q: usize,
        sets: &[(u64, usize)],
        covered: u64,
        chosen: &mut Vec<usize>,
        left: usize,
        d: usize,
    ) -> bool {
        let full = (1u64 << q) - 1;
        if covered == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        let uncovered = (full & !covered).count_ones() as usize;
        if uncovered > left * d {
            return false;
        }
        // branch on the uncovered element with the fewest candidates
        let mut pick = None;
        for e in 0..q {
            if covered & (1 << e) != 0 {
                continue;
            }
            let cand = sets.iter().filter(|&&(s, _)| s & (1 << e) != 0).count();
            if pick.map_or(true, |(_, best)| cand < best) {
                pick = Some((e, cand));
            }
        }
        let (e, _) = pick.expect("some element uncovered");
        for &(s, idx) in sets {
            if s & (1 << e) == 0 {
                continue;
            }
            chosen.push(idx);
            if dfs(q, sets, covered | s, chosen, left - 1, d) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let d = sets.first().map_or(1, |&(s, _)| s.count_ones() as usize);
    for target in 1..=bound {
        let mut chosen = Vec::new();
        if dfs(q, sets, 0, &mut chosen, target, d) {
            return Some(chosen);
        }
    }
    None
}

/// A monochromatic cover of minimum cardinality, or `None` when no color
/// class covers the ground set (possible once c >= d+1).
pub fn min_mono_cover(f: &SubsetColoring, caps: &Caps) -> Result<Option<CoverFamily>> {
    let total = binomial(f.q(), f.d());
    if total > caps.subset_space as u128 {
        return Err(Error::TooLarge(format!(
            "{total} subsets exceed cap {}",
            caps.subset_space
        )));
    }
    let subsets = colex_subsets(f.q(), f.d());
    let mut best: Option<(usize, u8, Vec<usize>)> = None;
    for color in 0..f.num_colors() as u8 {
        let sets: Vec<(u64, usize)> = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| f.get(s) == color)
            .map(|(i, s)| (set_mask(s), i))
            .collect();
        let bound = match &best {
            Some((sz, _, _)) => sz.saturating_sub(1),
            None => f.q(),
        };
        if bound == 0 {
            break;
        }
        if let Some(chosen) = min_cover_one_color(f.q(), &sets, bound) {
            best = Some((chosen.len(), color, chosen));
        }
    }
    Ok(best.map(|(_, color, chosen)| CoverFamily {
        sets: chosen.into_iter().map(|i| subsets[i].clone()).collect(),
        color,
    }))
}

/// Worst case over all subset colorings of the minimum monochromatic cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoveringNumber {
    Finite(usize),
    /// Some coloring admits no monochromatic cover at all.
    NoFiniteBound,
}

impl std::fmt::Display for CoveringNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoveringNumber::Finite(t) => write!(f, "{t}"),
            CoveringNumber::NoFiniteBound => write!(f, "none"),
        }
    }
}

/// Exhaustive covering number: enumerates every coloring of the d-subsets.
pub fn covering_number_exhaustive(q: usize, d: usize, c: usize, caps: &Caps) -> Result<CoveringNumber> {
    let m = binomial(q, d);
    if m > caps.subset_space as u128 {
        return Err(Error::TooLarge(format!("{m} subsets exceed cap {}", caps.subset_space)));
    }
    let m = m as usize;
    let space = (c as u128).checked_pow(m as u32).ok_or_else(|| {
        Error::TooLarge(format!("{c}^{m} colorings overflow the enumeration counter"))
    })?;
    if space > caps.cover_enumeration {
        return Err(Error::TooLarge(format!(
            "{space} colorings exceed enumeration cap {}",
            caps.cover_enumeration
        )));
    }
    let subsets = colex_subsets(q, d);
    let masks: Vec<u64> = subsets.iter().map(|s| set_mask(s)).collect();
    let space = space as u64;

    let worst = (0..space)
        .into_par_iter()
        .try_fold(
            || 0usize,
            |acc, rank| {
                let mut colors = vec![0u8; m];
                let mut r = rank;
                for v in colors.iter_mut() {
                    *v = (r % c as u64) as u8;
                    r /= c as u64;
                }
                let mut best: Option<usize> = None;
                for color in 0..c as u8 {
                    let sets: Vec<(u64, usize)> = masks
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| colors[i] == color)
                        .map(|(i, &s)| (s, i))
                        .collect();
                    let bound = best.map_or(q, |b| b.saturating_sub(1));
                    if bound == 0 {
                        break;
                    }
                    if let Some(ch) = min_cover_one_color(q, &sets, bound) {
                        best = Some(ch.len());
                    }
                }
                match best {
                    Some(sz) => Ok(acc.max(sz)),
                    None => Err(()), // no cover for this coloring
                }
            },
        )
        .try_reduce(|| 0usize, |a, b| Ok(a.max(b)));

    Ok(match worst {
        Ok(t) => CoveringNumber::Finite(t),
        Err(()) => CoveringNumber::NoFiniteBound,
    })
}

/// The extremal coloring: a set gets the smallest color (1-based i < c) it
/// misses, or the last color when it contains all of the first c-1 elements.
/// Its minimum monochromatic cover has size exactly ⌈(q-c+1)/(d-c+1)⌉.
pub fn extremal_coloring(q: usize, d: usize, c: usize) -> Result<SubsetColoring> {
    if c > d {
        return Err(Error::InvalidParams(format!("c = {c} exceeds d = {d}")));
    }
    SubsetColoring::from_fn(q, d, c, |s| {
        for i in 0..(c - 1) as u8 {
            if !s.contains(&i) {
                return i;
            }
        }
        (c - 1) as u8
    })
}

/// Smallest prime at least ⌈(q-c+1)/(d-c+1)⌉; an upper bound on the
/// covering number for c <= d.
pub fn min_cover_prime(q: usize, d: usize, c: usize) -> Result<usize> {
    if c > d {
        return Err(Error::InvalidParams(format!("c = {c} exceeds d = {d}")));
    }
    if d > q {
        return Err(Error::InvalidParams(format!("d = {d} exceeds q = {q}")));
    }
    let lower = (q - c + 1).div_ceil(d - c + 1);
    let mut p = lower.max(2);
    while !is_prime(p) {
        p += 1;
    }
    Ok(p)
}

/// The covering lower bound ⌈(q-c+1)/(d-c+1)⌉ for c <= d.
pub fn cover_lower_bound(q: usize, d: usize, c: usize) -> Result<usize> {
    if c > d || d > q {
        return Err(Error::InvalidParams(format!("need c <= d <= q, got c={c} d={d} q={q}")));
    }
    Ok((q - c + 1).div_ceil(d - c + 1))
}

/// Constructive cover for two colors, following the induction on the ground
/// set: a constant restriction is covered by a chain of overlapping sets;
/// otherwise the lexicographically least flipping pair (T, i, j) with
/// f(T∪{i}) ≠ f(T∪{j}) is removed and the recursion extends the smaller
/// cover by whichever of the two sets matches its color. Ground sets with
/// d < |U| <= 2d-2 drop straight to the base case with |T| = |U| - d.
/// Size is at most ⌈(q-1)/(d-1)⌉.
pub fn two_color_cover(f: &SubsetColoring) -> Result<CoverFamily> {
    if f.num_colors() != 2 {
        return Err(Error::InvalidParams("two-color cover needs exactly 2 colors".into()));
    }
    if f.d() < 2 {
        return Err(Error::InvalidParams("two-color cover needs d >= 2".into()));
    }
    let universe: Vec<u8> = (0..f.q() as u8).collect();
    let (color, sets) = cover_rec(f, universe)?;
    Ok(CoverFamily { sets, color })
}

fn subsets_of(universe: &[u8], k: usize) -> impl Iterator<Item = Vec<u8>> + '_ {
    crate::subsets::Combinations::new(universe.len(), k)
        .map(move |idx| idx.into_iter().map(|i| universe[i]).collect())
}

fn cover_rec(f: &SubsetColoring, universe: Vec<u8>) -> Result<(u8, Vec<Vec<u8>>)> {
    let q = universe.len();
    let d = f.d();
    debug_assert!(q >= d);
    if q == d {
        return Ok((f.get(&universe), vec![universe]));
    }

    // constant restriction: chain of overlapping windows
    let mut first_color: Option<u8> = None;
    let mut constant = true;
    for s in subsets_of(&universe, d) {
        let col = f.get(&s);
        match first_color {
            None => first_color = Some(col),
            Some(c0) if c0 != col => {
                constant = false;
                break;
            }
            _ => {}
        }
    }
    if constant {
        let color = first_color.expect("q > d implies at least one subset");
        let mut sets = Vec::new();
        let mut start = 0usize;
        loop {
            if start + d >= q {
                sets.push(universe[q - d..].to_vec());
                break;
            }
            sets.push(universe[start..start + d].to_vec());
            start += d - 1;
        }
        return Ok((color, sets));
    }

    if q >= 2 * d - 1 {
        // lexicographically least flipping triple (T, i, j)
        for t in subsets_of(&universe, d - 1) {
            let rest: Vec<u8> = universe.iter().copied().filter(|v| !t.contains(v)).collect();
            for (a, &i) in rest.iter().enumerate() {
                for &j in &rest[a + 1..] {
                    let mut si = t.clone();
                    si.push(i);
                    si.sort_unstable();
                    let mut sj = t.clone();
                    sj.push(j);
                    sj.sort_unstable();
                    if f.get(&si) != f.get(&sj) {
                        let (b, mut sets) = cover_rec(f, rest.clone())?;
                        let ext = if f.get(&si) == b { si } else { sj };
                        sets.push(ext);
                        return Ok((b, sets));
                    }
                }
            }
        }
        unreachable!("non-constant restriction must have a flipping pair");
    }

    // d < q <= 2d-2: remove |T| = q-d elements, leaving the base case, and
    // extend with a superset of T matching its color.
    for t in subsets_of(&universe, q - d) {
        let base: Vec<u8> = universe.iter().copied().filter(|v| !t.contains(v)).collect();
        let b = f.get(&base);
        let fills: Vec<Vec<u8>> = subsets_of(&base, d - (q - d)).collect();
        for fill in fills {
            let mut ext: Vec<u8> = t.iter().copied().chain(fill.iter().copied()).collect();
            ext.sort_unstable();
            if f.get(&ext) == b {
                return Ok((b, vec![base, ext]));
            }
        }
    }
    unreachable!("a matching extension always exists when the restriction is non-constant");
}

/// Exact pairwise-intersection statistics of a set family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointnessProfile {
    /// No Δ sets of the family are pairwise disjoint.
    pub no_delta_disjoint: bool,
    /// Probability that two sets drawn independently and uniformly (with
    /// replacement, ordered) intersect: 1 - 2E/m² with E the number of
    /// unordered disjoint pairs.
    pub intersect_probability: Ratio<u64>,
    pub disjoint_pairs: usize,
}

/// Computes the profile for Δ >= 2. Errors on an empty family or empty
/// member sets.
pub fn disjointness_profile(family: &[BTreeSet<u32>], delta: usize) -> Result<DisjointnessProfile> {
    if family.is_empty() {
        return Err(Error::InvalidParams("family must be nonempty".into()));
    }
    if family.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidParams("member sets must be nonempty".into()));
    }
    if delta < 2 {
        return Err(Error::InvalidParams("delta must be at least 2".into()));
    }
    let m = family.len();
    let disjoint = |a: &BTreeSet<u32>, b: &BTreeSet<u32>| a.intersection(b).next().is_none();
    let mut pairs = 0usize;
    for i in 0..m {
        for j in i + 1..m {
            if disjoint(&family[i], &family[j]) {
                pairs += 1;
            }
        }
    }

    // search for delta pairwise disjoint sets
    fn extend(family: &[BTreeSet<u32>], chosen: &mut Vec<usize>, start: usize, delta: usize) -> bool {
        if chosen.len() == delta {
            return true;
        }
        for i in start..family.len() {
            if family.len() - i < delta - chosen.len() {
                break;
            }
            if chosen.iter().all(|&j| family[i].intersection(&family[j]).next().is_none()) {
                chosen.push(i);
                if extend(family, chosen, i + 1, delta) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    let has_delta = extend(family, &mut chosen, 0, delta);

    let m2 = (m * m) as u64;
    Ok(DisjointnessProfile {
        no_delta_disjoint: !has_delta,
        intersect_probability: Ratio::new(m2 - 2 * pairs as u64, m2),
        disjoint_pairs: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn constant_coloring_cover() {
        let f = SubsetColoring::constant(5, 3, 2, 0).unwrap();
        let cover = min_mono_cover(&f, &caps()).unwrap().unwrap();
        assert_eq!(cover.len(), 2);
        assert!(cover.is_valid_for(&f));
    }

    #[test]
    fn extremal_cover_sizes() {
        for (q, d, c, expect) in [(5, 3, 2, 2), (7, 3, 2, 3), (5, 3, 3, 3)] {
            let f = extremal_coloring(q, d, c).unwrap();
            let cover = min_mono_cover(&f, &caps()).unwrap().unwrap();
            assert!(cover.is_valid_for(&f));
            assert_eq!(cover.len(), expect, "extremal({q},{d},{c})");
            assert_eq!(cover_lower_bound(q, d, c).unwrap(), expect);
        }
    }

    #[test]
    fn no_cover_when_colors_exceed_subset_size() {
        // q=4, d=2, c=5: color the six pairs so that no class covers [4]
        let pairs = colex_subsets(4, 2);
        let mut values = vec![0u8; 6];
        // give {0,1} and {0,2} color 4; everything else pairwise distinct
        // colors 0..3 — no class unions to the full set
        let mut next = 0u8;
        for (i, s) in pairs.iter().enumerate() {
            if s == &vec![0, 1] || s == &vec![0, 2] {
                values[i] = 4;
            } else {
                values[i] = next;
                next += 1;
            }
        }
        let f = SubsetColoring::new(4, 2, 5, values).unwrap();
        assert!(min_mono_cover(&f, &caps()).unwrap().is_none());
    }

    #[test]
    fn exhaustive_small_values() {
        assert_eq!(
            covering_number_exhaustive(3, 2, 2, &caps()).unwrap(),
            CoveringNumber::Finite(2)
        );
        assert_eq!(
            covering_number_exhaustive(4, 2, 2, &caps()).unwrap(),
            CoveringNumber::Finite(3)
        );
        assert_eq!(
            covering_number_exhaustive(5, 3, 2, &caps()).unwrap(),
            CoveringNumber::Finite(2)
        );
    }

    #[test]
    fn exhaustive_unbounded_case() {
        // once c >= d+1 some coloring admits no cover at all
        assert_eq!(
            covering_number_exhaustive(4, 2, 5, &caps()).unwrap(),
            CoveringNumber::NoFiniteBound
        );
    }

    #[test]
    fn two_color_cover_base_case() {
        let f = SubsetColoring::constant(3, 3, 2, 1).unwrap();
        let cover = two_color_cover(&f).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover.sets[0], vec![0, 1, 2]);
        assert!(cover.is_valid_for(&f));
    }

    #[test]
    fn two_color_cover_constant_chain() {
        let f = SubsetColoring::constant(7, 3, 2, 0).unwrap();
        let cover = two_color_cover(&f).unwrap();
        assert_eq!(cover.len(), 3);
        assert!(cover.is_valid_for(&f));
    }

    #[test]
    fn two_color_cover_random_within_bound() {
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(42);
        for _ in 0..200 {
            let f = SubsetColoring::random(6, 3, 2, &mut rng).unwrap();
            let cover = two_color_cover(&f).unwrap();
            assert!(cover.is_valid_for(&f));
            assert!(cover.len() <= 3, "cover of size {} exceeds bound", cover.len());
        }
    }

    #[test]
    fn two_color_cover_small_universe_regime() {
        // d < q <= 2d-2 exercises the drop-to-base-case branch
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = SubsetColoring::random(6, 4, 2, &mut rng).unwrap();
            let cover = two_color_cover(&f).unwrap();
            assert!(cover.is_valid_for(&f));
            assert!(cover.len() <= 2);
        }
    }

    #[test]
    fn two_color_matches_exhaustive_bound() {
        // exactness at c=2: worst case equals ⌈(q-1)/(d-1)⌉
        for (q, d) in [(3usize, 2usize), (4, 2), (4, 3), (5, 3)] {
            let expect = (q - 1).div_ceil(d - 1);
            assert_eq!(
                covering_number_exhaustive(q, d, 2, &caps()).unwrap(),
                CoveringNumber::Finite(expect),
                "covering number({q},{d},2)"
            );
        }
    }

    #[test]
    fn prime_bound_values() {
        assert_eq!(min_cover_prime(7, 3, 2).unwrap(), 3);
        assert_eq!(min_cover_prime(9, 3, 2).unwrap(), 5);
        assert_eq!(min_cover_prime(5, 3, 3).unwrap(), 3);
        assert!(min_cover_prime(5, 3, 4).is_err());
    }

    #[test]
    fn disjointness_pairwise_intersecting() {
        let family: Vec<BTreeSet<u32>> =
            vec![[1, 2].into(), [2, 3].into(), [1, 3].into()];
        let p = disjointness_profile(&family, 2).unwrap();
        assert!(p.no_delta_disjoint);
        assert_eq!(p.intersect_probability, Ratio::new(1, 1));
    }

    #[test]
    fn disjointness_tight_family() {
        let family: Vec<BTreeSet<u32>> = vec![[1].into(), [2].into(), [3].into()];
        let p = disjointness_profile(&family, 4).unwrap();
        assert!(p.no_delta_disjoint);
        assert_eq!(p.disjoint_pairs, 3);
        assert_eq!(p.intersect_probability, Ratio::new(1, 3));
    }

    #[test]
    fn disjointness_with_delta_disjoint_present() {
        let family: Vec<BTreeSet<u32>> = vec![[1].into(), [2].into(), [3].into()];
        let p = disjointness_profile(&family, 3).unwrap();
        assert!(!p.no_delta_disjoint);
    }

    #[test]
    fn disjointness_rejects_empty() {
        assert!(disjointness_profile(&[], 2).is_err());
        let family: Vec<BTreeSet<u32>> = vec![BTreeSet::new()];
        assert!(disjointness_profile(&family, 2).is_err());
    }

    #[test]
    fn sandwich_property() {
        for (q, d, c) in [(3, 2, 2), (4, 2, 2), (4, 3, 2), (5, 3, 2), (5, 3, 3)] {
            let lower = cover_lower_bound(q, d, c).unwrap();
            let upper = min_cover_prime(q, d, c).unwrap();
            match covering_number_exhaustive(q, d, c, &caps()).unwrap() {
                CoveringNumber::Finite(b) => {
                    assert!(lower <= b && b <= upper, "sandwich fails at ({q},{d},{c}): {lower} <= {b} <= {upper}");
                }
                CoveringNumber::NoFiniteBound => panic!("finite expected for c <= d"),
            }
        }
    }
}
