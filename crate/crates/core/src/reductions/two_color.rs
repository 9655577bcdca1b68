//! The (td+⌊d/2⌋)-uniform reduction targeting full rainbow q-colorability
//! versus 2-colorability, with q = t(d-1)+1.
//!
//! Every variable carries a cloud over `[q]^R`. Edges come in two types:
//!
//! - cross-cloud edges pick d strings from each of t clouds of distinct
//!   neighbors u_1,…,u_t of a variable v (all from one lower layer) plus
//!   ⌊d/2⌋ strings from v's cloud; for every target label β and every
//!   choice of preimage labels α_j the selected symbols must union to the
//!   whole palette (labels β with an empty preimage under some projection
//!   impose nothing),
//! - within-cloud edges are (td+⌊d/2⌋)-subsets of one cloud whose every
//!   coordinate shows the whole palette; they force 2-colorings to stay
//!   balanced inside each cloud.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypergraph::{CandidateSpace, Edge, Hypergraph};
use crate::labelcover::LabelCoverInstance;
use crate::subsets::{binomial, lex_unrank, Combinations};

use super::cloud::CloudMap;
use super::{RedCore, ReducedInstance, ReductionKind, ReductionParams};

fn full_mask(q: usize) -> u64 {
    (1u64 << q) - 1
}

/// Cross-cloud edge condition. `cons[j]` is the constraint of group j,
/// `groups[j]` its d strings, `ys` the strings from v's cloud.
pub(crate) fn cross_condition(
    core: &RedCore,
    cons: &[usize],
    groups: &[Vec<Vec<u8>>],
    ys: &[Vec<u8>],
    r_target: usize,
) -> bool {
    let q = core.params.q;
    let full = full_mask(q);
    let t = cons.len();
    // per-column symbol masks
    let col_masks: Vec<Vec<u64>> = groups
        .iter()
        .map(|g| {
            let r = g[0].len();
            (0..r)
                .map(|a| g.iter().fold(0u64, |m, s| m | (1 << s[a])))
                .collect()
        })
        .collect();
    for beta in 0..r_target {
        let ymask = ys.iter().fold(0u64, |m, y| m | (1 << y[beta]));
        let pre: Vec<&[usize]> =
            cons.iter().map(|&c| core.preimages(c)[beta].as_slice()).collect();
        if pre.iter().any(|p| p.is_empty()) {
            continue; // no full choice of preimages exists: vacuous
        }
        // odometer over all alpha tuples
        let mut idx = vec![0usize; t];
        'tuples: loop {
            let mut mask = ymask;
            for j in 0..t {
                mask |= col_masks[j][pre[j][idx[j]]];
            }
            if mask != full {
                return false;
            }
            let mut j = t;
            while j > 0 {
                j -= 1;
                idx[j] += 1;
                if idx[j] < pre[j].len() {
                    continue 'tuples;
                }
                idx[j] = 0;
            }
            break; // wrapped around: all tuples checked
        }
    }
    true
}

/// Within-cloud edge condition: every coordinate shows the whole palette.
pub(crate) fn within_condition(q: usize, strings: &[Vec<u8>]) -> bool {
    let full = full_mask(q);
    let r = strings[0].len();
    for beta in 0..r {
        let mask = strings.iter().fold(0u64, |m, s| m | (1 << s[beta]));
        if mask != full {
            return false;
        }
    }
    true
}

struct T1Block {
    u_gids: Vec<usize>,
    v_gid: usize,
    group_block: u128,
    y_block: u128,
}

struct Space {
    core: Arc<RedCore>,
    t1: Vec<T1Block>,
    t1_cum: Vec<u128>,
    t1_total: u128,
    t2: Vec<(usize, u128)>,
    t2_cum: Vec<u128>,
    total: u128,
}

impl Space {
    fn new(core: Arc<RedCore>) -> Space {
        let p = core.params;
        let half = p.d / 2;
        let mut t1 = Vec::new();
        let mut t1_cum = Vec::new();
        let mut t1_total = 0u128;
        let lc = &core.lc;
        for zeta in 0..lc.num_layers() {
            for eta in zeta + 1..lc.num_layers() {
                for y in 0..lc.layers[eta].num_vars {
                    let nbrs = core.constraints_into(zeta, eta, y);
                    if nbrs.len() < p.t {
                        continue;
                    }
                    let v_gid = core.clouds.gid(eta, y).expect("cloud exists");
                    let size_u = core
                        .clouds
                        .cloud_size(core.clouds.gid(zeta, lc.constraints[nbrs[0]].x).unwrap());
                    let group_block = binomial(size_u, p.d);
                    let y_block = binomial(core.clouds.cloud_size(v_gid), half);
                    for subset in Combinations::new(nbrs.len(), p.t) {
                        let cons: Vec<usize> = subset.iter().map(|&i| nbrs[i]).collect();
                        let u_gids: Vec<usize> = cons
                            .iter()
                            .map(|&c| core.clouds.gid(zeta, lc.constraints[c].x).unwrap())
                            .collect();
                        let count = group_block.pow(p.t as u32) * y_block;
                        if count == 0 {
                            continue;
                        }
                        t1_total += count;
                        t1.push(T1Block { u_gids, v_gid, group_block, y_block });
                        t1_cum.push(t1_total);
                    }
                }
            }
        }
        let mut t2 = Vec::new();
        let mut t2_cum = Vec::new();
        let mut t2_total = 0u128;
        for gid in 0..core.clouds.num_vars() {
            let count = binomial(core.clouds.cloud_size(gid), p.uniformity);
            if count == 0 {
                continue;
            }
            t2_total += count;
            t2.push((gid, count));
            t2_cum.push(t2_total);
        }
        Space { core, t1, t1_cum, t1_total, t2, t2_cum, total: t1_total + t2_total }
    }
}

impl CandidateSpace for Space {
    fn num_vertices(&self) -> usize {
        self.core.clouds.total_vertices()
    }

    fn uniformity(&self) -> usize {
        self.core.params.uniformity
    }

    fn candidate_count(&self) -> u128 {
        self.total
    }

    fn candidate(&self, rank: u128) -> Vec<u32> {
        let clouds = &self.core.clouds;
        let p = self.core.params;
        if rank < self.t1_total {
            let bi = self.t1_cum.partition_point(|&c| c <= rank);
            let block = &self.t1[bi];
            let mut local = rank - if bi == 0 { 0 } else { self.t1_cum[bi - 1] };
            let y_rank = local % block.y_block;
            local /= block.y_block;
            let mut group_ranks = vec![0u128; p.t];
            for j in (0..p.t).rev() {
                group_ranks[j] = local % block.group_block;
                local /= block.group_block;
            }
            let mut ids = Vec::with_capacity(p.uniformity);
            for (j, &gid) in block.u_gids.iter().enumerate() {
                for r in lex_unrank(clouds.cloud_size(gid), p.d, group_ranks[j]) {
                    ids.push(clouds.base(gid) + r as u32);
                }
            }
            for r in lex_unrank(clouds.cloud_size(block.v_gid), p.d / 2, y_rank) {
                ids.push(clouds.base(block.v_gid) + r as u32);
            }
            ids.sort_unstable();
            ids
        } else {
            let rank = rank - self.t1_total;
            let bi = self.t2_cum.partition_point(|&c| c <= rank);
            let local = rank - if bi == 0 { 0 } else { self.t2_cum[bi - 1] };
            let (gid, _) = self.t2[bi];
            lex_unrank(clouds.cloud_size(gid), p.uniformity, local)
                .into_iter()
                .map(|r| clouds.base(gid) + r as u32)
                .collect()
        }
    }

    fn contains(&self, edge: &[u32]) -> bool {
        is_edge(&self.core, edge)
    }

    fn describe(&self) -> String {
        format!("two-color rainbow reduction, {} candidates", self.total)
    }
}

/// Membership of a sorted k-subset of cloud vertices.
pub(crate) fn is_edge(core: &RedCore, edge: &[u32]) -> bool {
    let p = core.params;
    if edge.len() != p.uniformity {
        return false;
    }
    let clouds = &core.clouds;
    let mut by_gid: Vec<(usize, Vec<Vec<u8>>)> = Vec::new();
    for &id in edge {
        if id as usize >= clouds.total_vertices() {
            return false;
        }
        let (gid, s) = clouds.decode_vertex(id);
        match by_gid.last_mut() {
            Some((g, v)) if *g == gid => v.push(s),
            _ => by_gid.push((gid, vec![s])),
        }
    }
    if by_gid.len() == 1 {
        return within_condition(p.q, &by_gid[0].1);
    }
    // cross-cloud: t groups of d strings plus one group of ⌊d/2⌋ strings
    if by_gid.len() != p.t + 1 {
        return false;
    }
    let half = p.d / 2;
    let v_positions: Vec<usize> =
        (0..by_gid.len()).filter(|&i| by_gid[i].1.len() == half).collect();
    if v_positions.len() != 1 {
        return false;
    }
    let vpos = v_positions[0];
    if by_gid.iter().enumerate().any(|(i, (_, g))| i != vpos && g.len() != p.d) {
        return false;
    }
    let v = clouds.var(by_gid[vpos].0);
    let u_vars: Vec<_> = by_gid
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != vpos)
        .map(|(_, (g, s))| (clouds.var(*g), s))
        .collect();
    let zeta = u_vars[0].0.layer;
    if u_vars.iter().any(|(u, _)| u.layer != zeta) || v.layer <= zeta {
        return false;
    }
    let nbrs = core.constraints_into(zeta, v.layer, v.index);
    let mut cons = Vec::with_capacity(p.t);
    let mut groups = Vec::with_capacity(p.t);
    for (u, strings) in &u_vars {
        match nbrs.iter().find(|&&c| core.constraint(c).x == u.index) {
            Some(&c) => {
                cons.push(c);
                groups.push((*strings).clone());
            }
            None => return false,
        }
    }
    let r_target = core.lc.layers[v.layer].range;
    cross_condition(core, &cons, &groups, &by_gid[vpos].1, r_target)
}

/// Reduces a layered instance to the two-color-target hypergraph with
/// parameters t >= 1 and d >= 2.
pub fn reduce_two_color(
    lc: &LabelCoverInstance,
    t: usize,
    d: usize,
    caps: &Caps,
) -> Result<ReducedInstance> {
    let violations = lc.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidParams(format!(
            "label cover instance invalid: {}",
            violations.join("; ")
        )));
    }
    if lc.num_layers() < 2 {
        return Err(Error::InvalidParams("need at least two layers".into()));
    }
    if t < 1 || d < 2 {
        return Err(Error::InvalidParams(format!("need t >= 1 and d >= 2, got t={t} d={d}")));
    }
    let q = t * (d - 1) + 1;
    if q > 63 {
        return Err(Error::TooLarge(format!("palette {q} exceeds 63")));
    }
    let uniformity = t * d + d / 2;
    let layers: Vec<usize> = (0..lc.num_layers()).collect();
    let clouds = CloudMap::new(q, &lc.layers, &layers)?;
    let params = ReductionParams { t, d, c: 2, q, uniformity };
    let core = Arc::new(RedCore::new(ReductionKind::TwoColor, params, lc.clone(), clouds));
    let space = Space::new(core.clone());

    let hypergraph = if space.candidate_count() <= caps.materialize_edges {
        let mut edges = std::collections::BTreeSet::new();
        for rank in 0..space.candidate_count() {
            let cand = space.candidate(rank);
            if space.contains(&cand) {
                edges.insert(Edge::from_sorted(cand));
            }
        }
        Hypergraph::explicit(
            core.clouds.total_vertices(),
            uniformity,
            edges.into_iter().collect(),
        )?
    } else {
        Hypergraph::implicit(Arc::new(space))
    };
    Ok(ReducedInstance::new(core, hypergraph, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelcover::{planted_instance, LayerSpec};

    #[test]
    fn smallest_parameters_give_three_uniform() {
        let layers = [LayerSpec { num_vars: 1, range: 2 }, LayerSpec { num_vars: 1, range: 2 }];
        let (lc, _) = planted_instance(&layers, 1.0, 2).unwrap();
        let red = reduce_two_color(&lc, 1, 2, &Caps::default()).unwrap();
        assert_eq!(red.params().q, 2);
        assert_eq!(red.params().uniformity, 3);
        assert_eq!(red.hypergraph.num_vertices(), 8);
        assert!(red.hypergraph.num_edges().unwrap() > 0);
    }

    #[test]
    fn cross_edges_span_expected_clouds() {
        let layers = [LayerSpec { num_vars: 2, range: 2 }, LayerSpec { num_vars: 1, range: 2 }];
        let (lc, _) = planted_instance(&layers, 1.0, 3).unwrap();
        let red = reduce_two_color(&lc, 2, 2, &Caps::default()).unwrap();
        assert_eq!(red.params().q, 3);
        assert_eq!(red.params().uniformity, 5);
        let clouds = red.clouds();
        let mut seen_cross = 0usize;
        let mut seen_within = 0usize;
        for e in red.hypergraph.edges().unwrap() {
            let mut gids: Vec<usize> =
                e.iter().map(|&v| clouds.decode_vertex(v).0).collect();
            gids.sort_unstable();
            gids.dedup();
            match gids.len() {
                1 => seen_within += 1,
                3 => seen_cross += 1, // t = 2 clouds plus v's cloud
                n => panic!("edge spans {n} clouds"),
            }
        }
        assert!(seen_cross > 0);
        assert!(seen_within > 0);
    }
}
