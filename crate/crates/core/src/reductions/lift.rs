//! Uniformity lift and the parameter arithmetic for hitting a target
//! uniformity.
//!
//! One lift round adds k+1 fresh vertices to a k-uniform hypergraph,
//! extends every edge by each fresh vertex in turn, and adds the edge of
//! all fresh vertices. Rainbow colorability transfers forward (color the
//! fresh vertices with all palette colors) and 2-colorability transfers
//! back by restriction.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypergraph::{Coloring, Edge, Hypergraph};

/// Applies the lift `reps` times.
pub fn uniformity_lift(h: &Hypergraph, reps: usize, caps: &Caps) -> Result<Hypergraph> {
    let mut cur = h.clone();
    for _ in 0..reps {
        let n = cur.num_vertices();
        let k = cur.uniformity();
        let m = cur.num_edges()?;
        let new_m = m as u128 * (k as u128 + 1) + 1;
        if new_m > caps.materialize_edges {
            return Err(Error::TooLarge(format!(
                "{new_m} lifted edges exceed cap {}",
                caps.materialize_edges
            )));
        }
        let fresh: Vec<u32> = (n as u32..(n + k + 1) as u32).collect();
        let mut edges = Vec::with_capacity(new_m as usize);
        for e in cur.edges()? {
            for &v in &fresh {
                let mut ids = e.vertices().to_vec();
                ids.push(v);
                edges.push(Edge::from_sorted(ids));
            }
        }
        edges.push(Edge::from_sorted(fresh.clone()));
        cur = Hypergraph::explicit(n + k + 1, k + 1, edges)?;
    }
    Ok(cur)
}

/// Extends a q-coloring of the original vertices across one lift round:
/// the k+1 fresh vertices cycle through all q colors.
pub fn extend_lift_coloring(chi: &Coloring, new_total: usize) -> Result<Coloring> {
    let q = chi.num_colors();
    let mut values = chi.values().to_vec();
    let mut next = 0u8;
    while values.len() < new_total {
        values.push(next);
        next = (next + 1) % q as u8;
    }
    Coloring::new(values, q)
}

/// Parameters for reaching uniformity k with the two-color-target
/// reduction plus lift rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformityTargetParams {
    pub k: usize,
    pub t: usize,
    pub d: usize,
    /// Base uniformity t·d + ⌊d/2⌋ before lifting.
    pub u: usize,
    /// Palette q = t(d-1)+1.
    pub q: usize,
    /// k - q.
    pub gap: usize,
    /// 2⌊√k⌋, the guaranteed bound on the gap.
    pub gap_bound: usize,
}

/// Chooses t = ⌊√k/2⌋ and the largest d with t·d + ⌊d/2⌋ <= k; the palette
/// gap k - q never exceeds 2⌊√k⌋.
pub fn uniformity_target_params(k: usize) -> Result<UniformityTargetParams> {
    if k < 6 {
        return Err(Error::InvalidParams(format!("target uniformity {k} below 6")));
    }
    let t = k.isqrt() / 2;
    let mut d = 2;
    while t * (d + 1) + (d + 1) / 2 <= k {
        d += 1;
    }
    let u = t * d + d / 2;
    let q = t * (d - 1) + 1;
    let gap = k - q;
    let gap_bound = 2 * k.isqrt();
    if gap > gap_bound {
        return Err(Error::InvalidParams(format!(
            "gap {gap} exceeds bound {gap_bound} at k = {k}"
        )));
    }
    Ok(UniformityTargetParams { k, t, d, u, q, gap, gap_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::is_rainbow_coloring;

    #[test]
    fn single_edge_lift_counts() {
        let caps = Caps::default();
        let h = Hypergraph::explicit(2, 2, vec![Edge::new(vec![0, 1]).unwrap()]).unwrap();
        let lifted = uniformity_lift(&h, 1, &caps).unwrap();
        assert_eq!(lifted.num_vertices(), 5);
        assert_eq!(lifted.num_edges().unwrap(), 4);
        assert_eq!(lifted.uniformity(), 3);
    }

    #[test]
    fn rainbow_transfers_forward() {
        let caps = Caps::default();
        let h = Hypergraph::explicit(2, 2, vec![Edge::new(vec![0, 1]).unwrap()]).unwrap();
        let chi = Coloring::new(vec![0, 1], 2).unwrap();
        assert!(is_rainbow_coloring(&h, &chi, 2, 2, &caps).unwrap());
        let lifted = uniformity_lift(&h, 1, &caps).unwrap();
        let ext = extend_lift_coloring(&chi, lifted.num_vertices()).unwrap();
        assert!(is_rainbow_coloring(&lifted, &ext, 2, 2, &caps).unwrap());
    }

    #[test]
    fn two_colorability_transfers_back() {
        use crate::chromatic::find_coloring;
        let caps = Caps::default();
        let h = Hypergraph::explicit(
            4,
            2,
            vec![
                Edge::new(vec![0, 1]).unwrap(),
                Edge::new(vec![1, 2]).unwrap(),
                Edge::new(vec![2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let lifted = uniformity_lift(&h, 1, &caps).unwrap();
        let r = find_coloring(&lifted, 2, &caps).unwrap();
        assert!(r.colorable);
        let w = r.witness.unwrap();
        let restricted = Coloring::new(w.values()[..4].to_vec(), 2).unwrap();
        assert!(crate::hypergraph::is_proper_coloring(&h, &restricted, &caps).unwrap());
    }

    #[test]
    fn target_params_fixtures() {
        let p = uniformity_target_params(36).unwrap();
        assert_eq!((p.t, p.d, p.u, p.q, p.gap), (3, 10, 35, 28, 8));
        assert!(p.gap <= 12);
        let p = uniformity_target_params(6).unwrap();
        assert_eq!((p.t, p.d, p.u, p.q, p.gap), (1, 4, 6, 4, 2));
        assert!(p.gap <= 4);
        assert!(uniformity_target_params(5).is_err());
    }

    #[test]
    fn gap_bound_scan() {
        for k in 6..=2000 {
            let p = uniformity_target_params(k).unwrap();
            assert!(p.gap <= p.gap_bound, "gap {} > bound {} at k={k}", p.gap, p.gap_bound);
        }
    }
}
