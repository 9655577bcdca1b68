//! Small-subset combinatorics: binomials, lexicographic combination
//! enumeration and ranking, and colexicographic ranking.
//!
//! Colexicographic rank is used as the canonical index of a d-subset of [q]
//! throughout the covering module: for a sorted subset `{s_0 < … < s_{d-1}}`
//! of 0-based elements, `colex_rank = Σ_i C(s_i, i+1)`. Ranks are dense in
//! `0..C(q,d)` and do not depend on q, which keeps stored subset colorings
//! portable across universe sizes.

/// Binomial coefficient as u128; returns 0 when k > n.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Iterator over all k-subsets of 0..n as sorted vectors, in lexicographic
/// order of the sorted tuples.
pub struct Combinations {
    n: usize,
    k: usize,
    cur: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let done = k > n;
        Combinations { n, k, cur: (0..k).collect(), done }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        // advance to the lexicographic successor
        if self.k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] < self.n - self.k + i {
                self.cur[i] += 1;
                for j in i + 1..self.k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Lexicographic rank of a sorted k-subset of 0..n.
pub fn lex_rank(n: usize, set: &[usize]) -> u128 {
    let k = set.len();
    let mut rank: u128 = 0;
    let mut prev = 0usize;
    for (i, &s) in set.iter().enumerate() {
        for v in prev..s {
            rank += binomial(n - v - 1, k - i - 1);
        }
        prev = s + 1;
    }
    rank
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut v = 0usize;
    for i in 0..k {
        loop {
            let block = binomial(n - v - 1, k - i - 1);
            if rank < block {
                out.push(v);
                v += 1;
                break;
            }
            rank -= block;
            v += 1;
        }
    }
    out
}

/// Colexicographic rank of a sorted subset of 0-based elements.
pub fn colex_rank(set: &[u8]) -> usize {
    set.iter()
        .enumerate()
        .map(|(i, &s)| binomial(s as usize, i + 1) as usize)
        .sum()
}

/// Inverse of [`colex_rank`] for d-subsets of 0..q.
pub fn colex_unrank(mut rank: usize, d: usize, q: usize) -> Vec<u8> {
    let mut out = vec![0u8; d];
    let mut hi = q;
    for i in (0..d).rev() {
        // largest s < hi with C(s, i+1) <= rank
        let mut s = hi - 1;
        while binomial(s, i + 1) as usize > rank {
            s -= 1;
        }
        out[i] = s as u8;
        rank -= binomial(s, i + 1) as usize;
        hi = s;
    }
    out
}

/// All d-subsets of 0..q in colexicographic order.
pub fn colex_subsets(q: usize, d: usize) -> Vec<Vec<u8>> {
    let total = binomial(q, d) as usize;
    (0..total).map(|r| colex_unrank(r, d, q)).collect()
}
