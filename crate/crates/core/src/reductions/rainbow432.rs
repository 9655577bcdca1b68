//! The 4-uniform reduction targeting rainbow 3-colorability versus
//! 2-colorability.
//!
//! Every variable of the layered instance gets a cloud over `{0,1,2}^R`.
//! For each constraint u → v, an edge joins a permutation-repair gadget
//! edge (x, y, z) inside u's cloud (repair budget 1, so at most one noisy
//! column, which then has exactly two distinct symbols) with one completing
//! vertex w of v's cloud such that every coordinate k sees
//! `{x_k, y_k, z_k, w_{proj(k)}} = {0,1,2}`. A noisy column therefore forces
//! one position of w; all other positions are free.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypergraph::{CandidateSpace, Edge, Hypergraph};
use crate::labelcover::LabelCoverInstance;
use crate::subsets::{binomial, lex_unrank, Combinations};

use super::cloud::CloudMap;
use super::{RedCore, ReducedInstance, ReductionKind, ReductionParams};

/// A gadget edge inside one cloud: three string ranks plus the noisy column
/// and its missing symbol when the deficiency is 1.
#[derive(Debug, Clone)]
pub(crate) struct GadgetEdge {
    pub ranks: [u32; 3],
    pub noisy: Option<(usize, u8)>,
}

/// All repair-budget-1 gadget edges over `{0,1,2}^len`, combos in
/// lexicographic rank order.
pub(crate) fn ternary_gadget_edges(len: usize) -> Vec<GadgetEdge> {
    let strings = crate::gadgets::all_strings(3, len);
    let mut out = Vec::new();
    for combo in Combinations::new(strings.len(), 3) {
        let mut deficiency = 0usize;
        let mut noisy = None;
        for col in 0..len {
            let mut seen = [false; 3];
            for &i in &combo {
                seen[strings[i][col] as usize] = true;
            }
            let missing: Vec<u8> =
                (0..3u8).filter(|&s| !seen[s as usize]).collect();
            deficiency += missing.len();
            if missing.len() == 1 {
                noisy = Some((col, missing[0]));
            }
        }
        if deficiency <= 1 {
            if deficiency == 0 {
                noisy = None;
            }
            out.push(GadgetEdge {
                ranks: [combo[0] as u32, combo[1] as u32, combo[2] as u32],
                noisy,
            });
        }
    }
    out
}

/// Membership of a sorted 4-subset of cloud vertices.
fn is_edge(core: &RedCore, edge: &[u32]) -> bool {
    if edge.len() != 4 {
        return false;
    }
    let clouds = &core.clouds;
    let mut by_gid: Vec<(usize, Vec<Vec<u8>>)> = Vec::new();
    for &id in edge {
        if id as usize >= clouds.total_vertices() {
            return false;
        }
        let (gid, s) = clouds.decode_vertex(id);
        match by_gid.iter_mut().find(|(g, _)| *g == gid) {
            Some((_, v)) => v.push(s),
            None => by_gid.push((gid, vec![s])),
        }
    }
    if by_gid.len() != 2 {
        return false;
    }
    by_gid.sort_by_key(|(_, v)| std::cmp::Reverse(v.len()));
    let (u_gid, triple) = (&by_gid[0].0, &by_gid[0].1);
    let (v_gid, single) = (&by_gid[1].0, &by_gid[1].1);
    if triple.len() != 3 || single.len() != 1 {
        return false;
    }
    let u = clouds.var(*u_gid);
    let v = clouds.var(*v_gid);
    if u.layer >= v.layer {
        return false;
    }
    let Some(&cidx) = core
        .constraints_into(u.layer, v.layer, v.index)
        .iter()
        .find(|&&c| core.constraint(c).x == u.index)
    else {
        return false;
    };
    let proj = &core.constraint(cidx).proj;
    let w = &single[0];
    let len = clouds.range(*u_gid);
    let mut deficiency = 0usize;
    for col in 0..len {
        let mut seen = [false; 3];
        for s in triple {
            seen[s[col] as usize] = true;
        }
        let miss: Vec<u8> = (0..3u8).filter(|&x| !seen[x as usize]).collect();
        deficiency += miss.len();
        if deficiency > 1 {
            return false;
        }
        // every coordinate must see all three symbols including w
        if miss.len() == 1 && w[proj[col]] != miss[0] {
            return false;
        }
    }
    true
}

struct Space {
    core: Arc<RedCore>,
    // one block per constraint: C(3^{R_i}, 3) * 3^{R_j} candidates
    cum: Vec<u128>,
    total: u128,
}

impl Space {
    fn new(core: Arc<RedCore>) -> Space {
        let mut cum = Vec::with_capacity(core.lc.constraints.len());
        let mut total = 0u128;
        for c in &core.lc.constraints {
            let size_u = 3u128.pow(core.lc.layers[c.i].range as u32);
            let size_v = 3u128.pow(core.lc.layers[c.j].range as u32);
            total += binomial(size_u as usize, 3) * size_v;
            cum.push(total);
        }
        Space { core, cum, total }
    }
}

impl CandidateSpace for Space {
    fn num_vertices(&self) -> usize {
        self.core.clouds.total_vertices()
    }

    fn uniformity(&self) -> usize {
        4
    }

    fn candidate_count(&self) -> u128 {
        self.total
    }

    fn candidate(&self, rank: u128) -> Vec<u32> {
        let block = self.cum.partition_point(|&c| c <= rank);
        let local = rank - if block == 0 { 0 } else { self.cum[block - 1] };
        let c = self.core.constraint(block);
        let clouds = &self.core.clouds;
        let u_gid = clouds.gid(c.i, c.x).expect("cloud exists");
        let v_gid = clouds.gid(c.j, c.y).expect("cloud exists");
        let size_v = clouds.cloud_size(v_gid) as u128;
        let triple_rank = local / size_v;
        let w_rank = (local % size_v) as u32;
        let triple = lex_unrank(clouds.cloud_size(u_gid), 3, triple_rank);
        let mut ids: Vec<u32> =
            triple.iter().map(|&r| clouds.base(u_gid) + r as u32).collect();
        ids.push(clouds.base(v_gid) + w_rank);
        ids.sort_unstable();
        ids
    }

    fn contains(&self, edge: &[u32]) -> bool {
        is_edge(&self.core, edge)
    }

    fn describe(&self) -> String {
        format!("rainbow-4-3-2 reduction, {} candidates", self.total)
    }
}

/// Exact number of edges, computed per constraint from the gadget edge
/// census: a gadget edge with no noisy column admits every w, one with a
/// noisy column fixes one position of w.
fn exact_edge_count(core: &RedCore, cache: &mut HashMap<usize, Arc<Vec<GadgetEdge>>>) -> u128 {
    let mut total = 0u128;
    for c in &core.lc.constraints {
        let r_u = core.lc.layers[c.i].range;
        let r_v = core.lc.layers[c.j].range;
        let edges = cache
            .entry(r_u)
            .or_insert_with(|| Arc::new(ternary_gadget_edges(r_u)))
            .clone();
        let free: u128 = 3u128.pow(r_v as u32);
        for e in edges.iter() {
            total += if e.noisy.is_some() { free / 3 } else { free };
        }
    }
    total
}

/// Reduces a layered label cover instance to the 4-uniform hypergraph.
/// Any instance with at least two layers is accepted; the canonical
/// pipeline uses eight layers and a warning is attached otherwise.
pub fn reduce_rainbow432(lc: &LabelCoverInstance, caps: &Caps) -> Result<ReducedInstance> {
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
    let mut warnings = Vec::new();
    if lc.num_layers() != 8 {
        warnings.push(format!(
            "instance has {} layers; the canonical pipeline uses 8",
            lc.num_layers()
        ));
    }
    let layers: Vec<usize> = (0..lc.num_layers()).collect();
    let clouds = CloudMap::new(3, &lc.layers, &layers)?;
    let params = ReductionParams { t: 1, d: 3, c: 2, q: 3, uniformity: 4 };
    let core = Arc::new(RedCore::new(ReductionKind::Rainbow432, params, lc.clone(), clouds));

    let mut cache: HashMap<usize, Arc<Vec<GadgetEdge>>> = HashMap::new();
    let count = exact_edge_count(&core, &mut cache);
    let hypergraph = if count <= caps.materialize_edges {
        let clouds = &core.clouds;
        let mut edges = Vec::with_capacity(count as usize);
        for c in &core.lc.constraints {
            let u_gid = clouds.gid(c.i, c.x).expect("cloud exists");
            let v_gid = clouds.gid(c.j, c.y).expect("cloud exists");
            let gadget = cache[&core.lc.layers[c.i].range].clone();
            let size_v = clouds.cloud_size(v_gid);
            for ge in gadget.iter() {
                let forced = ge.noisy.map(|(col, sym)| (c.proj[col], sym));
                for w_rank in 0..size_v {
                    if let Some((pos, sym)) = forced {
                        let w = crate::gadgets::string_unrank(
                            w_rank as u32,
                            3,
                            core.lc.layers[c.j].range,
                        );
                        if w[pos] != sym {
                            continue;
                        }
                    }
                    let mut ids: Vec<u32> =
                        ge.ranks.iter().map(|&r| clouds.base(u_gid) + r).collect();
                    ids.push(clouds.base(v_gid) + w_rank as u32);
                    ids.sort_unstable();
                    debug_assert!(is_edge(&core, &ids));
                    edges.push(Edge::from_sorted(ids));
                }
            }
        }
        Hypergraph::explicit(core.clouds.total_vertices(), 4, edges)?
    } else {
        Hypergraph::implicit(Arc::new(Space::new(core.clone())))
    };
    Ok(ReducedInstance::new(core, hypergraph, warnings))
}
