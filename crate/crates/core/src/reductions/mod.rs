//! Label-cover-to-hypergraph reductions, their completeness colorings, and
//! their soundness decoders.
//!
//! Three reductions are provided, named here by their coloring targets and
//! on the CLI/manifest surface by the mode tokens `fig1`, `fig2`, `fig3`:
//!
//! - [`reduce_rainbow432`] (`fig1`): layered instances to a 4-uniform
//!   hypergraph that is rainbow 3-colorable when the instance is
//!   satisfiable. Each edge takes a permutation-repair gadget edge from one
//!   cloud plus a single completing vertex from a neighboring cloud.
//! - [`reduce_almost_rainbow`] (`fig2`): two-layer instances to a
//!   td-uniform hypergraph that is rainbow (q, q-d)-colorable when the
//!   instance is satisfiable; clouds exist only on the first layer and each
//!   edge combines d strings from each of t clouds.
//! - [`reduce_two_color`] (`fig3`): layered instances to a
//!   (td+⌊d/2⌋)-uniform hypergraph that is fully rainbow q-colorable when
//!   the instance is satisfiable, with within-cloud edges forcing every
//!   2-coloring to stay balanced inside each cloud.
//!
//! Instances are materialized explicitly when the exact (or candidate) edge
//! count fits the configured cap, and otherwise carry a membership predicate
//! plus a uniformly rankable candidate space.

pub mod almost_rainbow;
pub mod cloud;
pub mod decode;
pub mod lift;
pub mod rainbow432;
pub mod two_color;

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypergraph::{Coloring, Hypergraph};
use crate::labelcover::{Assignment, Constraint, LabelCoverInstance};

pub use almost_rainbow::reduce_almost_rainbow;
pub use cloud::{CloudMap, VarRef};
pub use decode::{decode_almost_rainbow, decode_two_color, DecodeReport};
pub use lift::{uniformity_lift, uniformity_target_params, UniformityTargetParams};
pub use rainbow432::reduce_rainbow432;
pub use two_color::reduce_two_color;

/// Which reduction produced an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    /// 4-uniform, rainbow 3 vs 2 colors.
    Rainbow432,
    /// td-uniform, rainbow (q, q-d) vs c colors.
    AlmostRainbow,
    /// (td+⌊d/2⌋)-uniform, rainbow q vs 2 colors.
    TwoColor,
}

impl ReductionKind {
    /// Stable mode token used by the CLI and the manifest format.
    pub fn token(&self) -> &'static str {
        match self {
            ReductionKind::Rainbow432 => "fig1",
            ReductionKind::AlmostRainbow => "fig2",
            ReductionKind::TwoColor => "fig3",
        }
    }

    pub fn from_token(s: &str) -> Result<ReductionKind> {
        match s {
            "fig1" => Ok(ReductionKind::Rainbow432),
            "fig2" => Ok(ReductionKind::AlmostRainbow),
            "fig3" => Ok(ReductionKind::TwoColor),
            _ => Err(Error::InvalidParams(format!("unknown reduction mode {s}"))),
        }
    }
}

/// Numeric parameters of a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionParams {
    pub t: usize,
    pub d: usize,
    /// Soundness color count the reduction targets.
    pub c: usize,
    /// Completeness palette size.
    pub q: usize,
    pub uniformity: usize,
}

/// Shared immutable state: parameters, the label cover instance, the cloud
/// layout, and precomputed adjacency.
#[derive(Debug)]
pub struct RedCore {
    pub kind: ReductionKind,
    pub params: ReductionParams,
    pub lc: LabelCoverInstance,
    pub clouds: CloudMap,
    /// Projection preimages per constraint: `preimages[cidx][beta]` lists
    /// the labels alpha with proj[alpha] == beta.
    preimages: Vec<Vec<Vec<usize>>>,
    /// Constraint indices grouped by (source layer, target layer, target
    /// index), each group ascending by source index.
    by_target: std::collections::BTreeMap<(usize, usize, usize), Vec<usize>>,
    /// Number of constraints touching each variable, indexed like gids but
    /// covering all (layer, index) pairs.
    incidence: std::collections::BTreeMap<(usize, usize), usize>,
}

impl RedCore {
    pub(crate) fn new(
        kind: ReductionKind,
        params: ReductionParams,
        lc: LabelCoverInstance,
        clouds: CloudMap,
    ) -> RedCore {
        let mut preimages = Vec::with_capacity(lc.constraints.len());
        let mut by_target: std::collections::BTreeMap<(usize, usize, usize), Vec<usize>> =
            Default::default();
        let mut incidence: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
        for (idx, c) in lc.constraints.iter().enumerate() {
            let rj = lc.layers[c.j].range;
            let mut pre = vec![Vec::new(); rj];
            for (alpha, &beta) in c.proj.iter().enumerate() {
                pre[beta].push(alpha);
            }
            preimages.push(pre);
            by_target.entry((c.i, c.j, c.y)).or_default().push(idx);
            *incidence.entry((c.i, c.x)).or_default() += 1;
            *incidence.entry((c.j, c.y)).or_default() += 1;
        }
        for group in by_target.values_mut() {
            group.sort_by_key(|&idx| lc.constraints[idx].x);
        }
        RedCore { kind, params, lc, clouds, preimages, by_target, incidence }
    }

    pub fn constraint(&self, idx: usize) -> &Constraint {
        &self.lc.constraints[idx]
    }

    pub fn preimages(&self, idx: usize) -> &[Vec<usize>] {
        &self.preimages[idx]
    }

    /// Constraints from layer `i` into variable (j, y), ascending by source
    /// index.
    pub fn constraints_into(&self, i: usize, j: usize, y: usize) -> &[usize] {
        self.by_target.get(&(i, j, y)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn incident_constraints(&self, layer: usize, index: usize) -> usize {
        self.incidence.get(&(layer, index)).copied().unwrap_or(0)
    }
}

/// A reduced instance: the hypergraph plus the cloud metadata tying every
/// vertex to a (variable, string) pair.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    core: Arc<RedCore>,
    pub hypergraph: Hypergraph,
    pub warnings: Vec<String>,
}

impl ReducedInstance {
    pub(crate) fn new(core: Arc<RedCore>, hypergraph: Hypergraph, warnings: Vec<String>) -> Self {
        ReducedInstance { core, hypergraph, warnings }
    }

    pub fn kind(&self) -> ReductionKind {
        self.core.kind
    }

    pub fn params(&self) -> ReductionParams {
        self.core.params
    }

    pub fn label_cover(&self) -> &LabelCoverInstance {
        &self.core.lc
    }

    pub fn clouds(&self) -> &CloudMap {
        &self.core.clouds
    }

    pub(crate) fn core(&self) -> &Arc<RedCore> {
        &self.core
    }

    /// Rainbow target (q, p) the completeness coloring achieves.
    pub fn completeness_target(&self) -> (usize, usize) {
        let p = self.core.params;
        match self.core.kind {
            ReductionKind::Rainbow432 => (3, 3),
            ReductionKind::AlmostRainbow => (p.q, p.q - p.d),
            ReductionKind::TwoColor => (p.q, p.q),
        }
    }
}

/// Colors every cloud vertex by its string's value at the variable's
/// assigned coordinate. On a satisfying assignment this passes the
/// reduction's rainbow target.
pub fn dictator_coloring(red: &ReducedInstance, a: &Assignment) -> Result<Coloring> {
    red.label_cover().check_assignment(a)?;
    let clouds = red.clouds();
    let mut values = Vec::with_capacity(clouds.total_vertices());
    for gid in 0..clouds.num_vars() {
        let v = clouds.var(gid);
        let coord = a.get(v.layer, v.index);
        for rank in 0..clouds.cloud_size(gid) {
            let s = crate::gadgets::string_unrank(rank as u32, clouds.alphabet(), clouds.range(gid));
            values.push(s[coord]);
        }
    }
    Coloring::new(values, clouds.alphabet())
}

/// Outcome of a sampled rainbow check on an implicit instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleCheck {
    pub samples: usize,
    /// Samples that were actual edges.
    pub edges_seen: usize,
    /// Edges seeing fewer than p colors.
    pub violations: usize,
}

/// Draws uniform candidates, keeps those that are edges, and counts edges
/// seeing fewer than `p` distinct colors. Works on explicit instances too
/// (every candidate is then an edge).
pub fn sampled_rainbow_check(
    red: &ReducedInstance,
    chi: &Coloring,
    p: usize,
    samples: usize,
    seed: u64,
) -> Result<SampleCheck> {
    use rand::SeedableRng;
    if chi.len() != red.hypergraph.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "coloring covers {} vertices, instance has {}",
            chi.len(),
            red.hypergraph.num_vertices()
        )));
    }
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
    let mut edges_seen = 0;
    let mut violations = 0;
    for _ in 0..samples {
        let cand = red.hypergraph.sample_candidate(&mut rng);
        if !red.hypergraph.contains_edge(&cand) {
            continue;
        }
        edges_seen += 1;
        let mut seen = [false; 256];
        let mut distinct = 0;
        for &v in &cand {
            let c = chi.color(v) as usize;
            if !seen[c] {
                seen[c] = true;
                distinct += 1;
            }
        }
        if distinct < p {
            violations += 1;
        }
    }
    Ok(SampleCheck { samples, edges_seen, violations })
}

/// Exhaustive rainbow check for explicit instances, sampled check otherwise.
pub fn completeness_check(
    red: &ReducedInstance,
    chi: &Coloring,
    samples: usize,
    seed: u64,
    caps: &Caps,
) -> Result<SampleCheck> {
    let (q, p) = red.completeness_target();
    if red.hypergraph.is_implicit() {
        sampled_rainbow_check(red, chi, p, samples, seed)
    } else {
        let ok = crate::hypergraph::is_rainbow_coloring(&red.hypergraph, chi, q, p, caps)?;
        let m = red.hypergraph.num_edges()?;
        Ok(SampleCheck { samples: m, edges_seen: m, violations: if ok { 0 } else { 1 } })
    }
}
