//! Soundness decoders: extract label-cover assignments from colorings of
//! reduced instances.
//!
//! Both decoders share one skeleton. For every cloud variable u and every
//! d-subset σ of the palette, the strings σ^R inside u's cloud induce a
//! copy of the corresponding gadget; the decoder finds a monochromatic
//! gadget edge there (smallest color first, then the lexicographically
//! least edge), records its color f_u(σ) and its noisy coordinates g_u(σ)
//! (defaulting to {coordinate 1} when the edge has none), covers the
//! palette monochromatically, and draws candidate labels from the union of
//! the noisy sets over the cover. A variable whose σ-copy has no
//! monochromatic edge at all is recorded as a decode failure, never a
//! crash.
//!
//! Randomness is a single seed: variable u draws its label on stream u+1 of
//! a counter-based generator, and second-layer variables of the
//! almost-rainbow decoder pick their reference neighbor on stream 2³² + v,
//! so per-variable decoding is order-independent and reports are
//! byte-stable for a fixed (instance, coloring, seed).
//!
//! Decoders run on arbitrary colorings; the documented guarantees (label
//! sets of bounded size, non-disjoint projected noisy sets) hold on proper
//! colorings and the reports carry enough data to check them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::caps::Caps;
use crate::covering::{min_mono_cover, two_color_cover, SubsetColoring};
use crate::error::{Error, Result};
use crate::hypergraph::Coloring;
use crate::labelcover::Assignment;
use crate::subsets::{colex_rank, colex_subsets, Combinations};

use super::{RedCore, ReducedInstance, ReductionKind};

#[derive(Debug, Clone, Copy)]
enum GadgetFlavor {
    /// Total column deficiency at most `budget`.
    PermRepair { budget: usize },
    /// At most `budget` columns missing a symbol.
    RainbowColumn { budget: usize },
}

impl GadgetFlavor {
    /// Whether every candidate passes the condition at word length `r`.
    fn vacuous(&self, r: usize, d: usize) -> bool {
        match *self {
            GadgetFlavor::PermRepair { budget } => budget >= r * (d - 1),
            GadgetFlavor::RainbowColumn { budget } => budget >= r,
        }
    }
}

/// A monochromatic gadget edge found inside one σ-copy.
#[derive(Debug, Clone)]
struct Hit {
    /// Columns missing at least one σ-symbol, ascending.
    noisy: Vec<usize>,
    /// The edge's strings over the full palette alphabet.
    strings: Vec<Vec<u8>>,
}

/// Per color: the lexicographically least monochromatic gadget edge of that
/// color, if any.
fn scan_sigma(
    chi: &Coloring,
    core: &RedCore,
    gid: usize,
    sigma: &[u8],
    flavor: GadgetFlavor,
) -> Vec<Option<Hit>> {
    let clouds = &core.clouds;
    let d = sigma.len();
    let r = clouds.range(gid);
    let count = (d as u64).pow(r as u32) as usize;
    // digit vectors in lexicographic order and their colors
    let mut digits: Vec<Vec<u8>> = Vec::with_capacity(count);
    let mut colors: Vec<u8> = Vec::with_capacity(count);
    for rank in 0..count {
        let dv = crate::gadgets::string_unrank(rank as u32, d, r);
        let mapped: Vec<u8> = dv.iter().map(|&x| sigma[x as usize]).collect();
        colors.push(chi.color(clouds.vertex_id(gid, &mapped)));
        digits.push(dv);
    }
    let mut out = Vec::with_capacity(chi.num_colors());
    for b in 0..chi.num_colors() as u8 {
        let class: Vec<usize> = (0..count).filter(|&i| colors[i] == b).collect();
        let mut found = None;
        if class.len() >= d {
            'combos: for combo in Combinations::new(class.len(), d) {
                let tuple: Vec<&Vec<u8>> = combo.iter().map(|&i| &digits[class[i]]).collect();
                let mut noisy = Vec::new();
                let mut deficiency = 0usize;
                for col in 0..r {
                    let mut seen = 0u64;
                    for s in &tuple {
                        seen |= 1 << s[col];
                    }
                    let missing = d - seen.count_ones() as usize;
                    if missing > 0 {
                        noisy.push(col);
                        deficiency += missing;
                    }
                }
                let ok = match flavor {
                    GadgetFlavor::PermRepair { budget } => deficiency <= budget,
                    GadgetFlavor::RainbowColumn { budget } => noisy.len() <= budget,
                };
                if ok {
                    let strings = tuple
                        .iter()
                        .map(|dv| dv.iter().map(|&x| sigma[x as usize]).collect())
                        .collect();
                    found = Some(Hit { noisy, strings });
                    break 'combos;
                }
            }
        }
        out.push(found);
    }
    out
}

struct VarScan {
    /// per σ (colex order), per color
    per_color: Vec<Vec<Option<Hit>>>,
    failed: bool,
    vacuous: bool,
    f: Vec<Option<u8>>,
    g: Vec<Option<Vec<usize>>>,
    cover_sets: Option<Vec<Vec<u8>>>, // padded to t sets, colex-sorted first
    cover_color: Option<u8>,
    candidates: Vec<usize>,
}

fn scan_var(
    chi: &Coloring,
    core: &RedCore,
    gid: usize,
    sigmas: &[Vec<u8>],
    flavor: GadgetFlavor,
) -> VarScan {
    let r = core.clouds.range(gid);
    let d = core.params.d;
    let mut per_color = Vec::with_capacity(sigmas.len());
    let mut f = Vec::with_capacity(sigmas.len());
    let mut g = Vec::with_capacity(sigmas.len());
    let mut failed = false;
    for sigma in sigmas {
        let hits = scan_sigma(chi, core, gid, sigma, flavor);
        let chosen = hits.iter().position(|h| h.is_some());
        match chosen {
            Some(b) => {
                let hit = hits[b].as_ref().unwrap();
                f.push(Some(b as u8));
                g.push(Some(if hit.noisy.is_empty() { vec![0] } else { hit.noisy.clone() }));
            }
            None => {
                failed = true;
                f.push(None);
                g.push(None);
            }
        }
        per_color.push(hits);
    }
    VarScan {
        per_color,
        failed,
        vacuous: flavor.vacuous(r, d),
        f,
        g,
        cover_sets: None,
        cover_color: None,
        candidates: Vec::new(),
    }
}

/// Canonical cover: sets sorted by colex rank, padded to exactly t entries
/// by repeating the last set (a t-tuple covering the palette is what the
/// label key and the noisy-set pairing expect).
fn canonical_cover(mut sets: Vec<Vec<u8>>, t: usize) -> Vec<Vec<u8>> {
    sets.sort_by_key(|s| colex_rank(s));
    while sets.len() < t {
        sets.push(sets.last().unwrap().clone());
    }
    sets
}

fn attach_cover(scan: &mut VarScan, sets: Vec<Vec<u8>>, color: u8) {
    let mut cand = BTreeSet::new();
    for s in &sets {
        let rank = colex_rank(s);
        if let Some(Some(gset)) = scan.g.get(rank).map(|x| x.as_ref()) {
            cand.extend(gset.iter().copied());
        }
    }
    scan.cover_sets = Some(sets);
    scan.cover_color = Some(color);
    scan.candidates = cand.into_iter().collect();
}

/// Most frequent (cover, color) label weighted by incident constraints;
/// ties go to the smallest key.
fn select_group(core: &RedCore, scans: &[VarScan]) -> Option<(Vec<usize>, u8)> {
    let mut weights: BTreeMap<(Vec<usize>, u8), u64> = BTreeMap::new();
    for (gid, scan) in scans.iter().enumerate() {
        let (Some(sets), Some(color)) = (&scan.cover_sets, scan.cover_color) else {
            continue;
        };
        let v = core.clouds.var(gid);
        let w = core.incident_constraints(v.layer, v.index).max(1) as u64;
        let key = (sets.iter().map(|s| colex_rank(s)).collect::<Vec<_>>(), color);
        *weights.entry(key).or_default() += w;
    }
    weights
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(k, _)| k)
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|&x| x + 1).collect()
}

fn one_based_sets(sets: &[Vec<u8>]) -> Vec<Vec<u8>> {
    sets.iter().map(|s| s.iter().map(|&e| e + 1).collect()).collect()
}

/// Per-variable decode record. All labels, coordinates, colors and ground
/// elements are 1-based in serialized form.
#[derive(Debug, Clone, Serialize)]
pub struct VarRecord {
    pub layer: usize,
    pub index: usize,
    pub decode_failed: bool,
    pub vacuous_gadget: bool,
    pub subset_colors: Vec<Option<u8>>,
    pub noisy_sets: Vec<Option<Vec<usize>>>,
    pub cover_sets: Option<Vec<Vec<u8>>>,
    pub cover_color: Option<u8>,
    pub candidate_labels: Vec<usize>,
    pub selected_group: bool,
    pub label: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairFraction {
    pub i: usize,
    pub j: usize,
    pub numer: u64,
    pub denom: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectedFraction {
    pub i: usize,
    pub j: usize,
    /// Exact rational, "numer/denom".
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BalanceViolation {
    pub layer: usize,
    pub index: usize,
    pub color: u8,
    pub count: usize,
    pub cloud: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DisjointnessCheck {
    pub v_index: usize,
    pub neighbor_indices: Vec<usize>,
    pub projected_noisy_sets: Vec<Vec<usize>>,
    pub pairwise_disjoint: bool,
    /// Filled only when the sets were pairwise disjoint: the contradiction
    /// witness assembled from the recorded gadget edges.
    pub witness_is_edge: Option<bool>,
    pub witness_monochromatic: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WarmupLabelSet {
    pub i: usize,
    pub j: usize,
    pub v_index: usize,
    pub color: u8,
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecodeSummary {
    pub mode: String,
    pub seed: u64,
    pub t: usize,
    pub d: usize,
    pub c: usize,
    pub q: usize,
    pub coloring_proper: Option<bool>,
    pub decode_failures: usize,
    pub selected_cover: Option<Vec<Vec<u8>>>,
    pub selected_color: Option<u8>,
    pub assignment: Vec<Vec<usize>>,
    pub satisfied: Vec<PairFraction>,
    pub expected_satisfied: Vec<ExpectedFraction>,
    pub cloud_balance_violations: Vec<BalanceViolation>,
    pub disjointness_checks: Vec<DisjointnessCheck>,
    pub warmup_label_sets: Vec<WarmupLabelSet>,
    pub reference_bound: Option<f64>,
}

/// Full decode output: one record per cloud variable plus a summary.
#[derive(Debug, Clone, Serialize)]
pub struct DecodeReport {
    pub records: Vec<VarRecord>,
    pub summary: DecodeSummary,
}

impl DecodeReport {
    /// Line-delimited JSON: one record per line, summary last.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("serializable"));
        out.push('\n');
        out
    }
}

fn label_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_dims(red: &ReducedInstance, chi: &Coloring, colors: usize) -> Result<()> {
    if chi.len() != red.hypergraph.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "coloring covers {} vertices, instance has {}",
            chi.len(),
            red.hypergraph.num_vertices()
        )));
    }
    if chi.num_colors() != colors {
        return Err(Error::InvalidParams(format!(
            "decoder expects {colors} colors, coloring has {}",
            chi.num_colors()
        )));
    }
    Ok(())
}

fn properness(red: &ReducedInstance, chi: &Coloring, caps: &Caps) -> Option<bool> {
    if red.hypergraph.is_implicit() {
        None
    } else {
        crate::hypergraph::is_proper_coloring(&red.hypergraph, chi, caps).ok()
    }
}

fn balance_violations(core: &RedCore, chi: &Coloring) -> Vec<BalanceViolation> {
    let clouds = &core.clouds;
    let q = core.params.q;
    let mut out = Vec::new();
    for gid in 0..clouds.num_vars() {
        let size = clouds.cloud_size(gid);
        let mut counts = vec![0usize; chi.num_colors()];
        for rank in 0..size {
            counts[chi.color(clouds.base(gid) + rank as u32) as usize] += 1;
        }
        let v = clouds.var(gid);
        for (b, &count) in counts.iter().enumerate() {
            if count * q < size {
                out.push(BalanceViolation {
                    layer: v.layer + 1,
                    index: v.index + 1,
                    color: b as u8 + 1,
                    count,
                    cloud: size,
                });
            }
        }
    }
    out
}

fn build_records(core: &RedCore, scans: &[VarScan], selected: &BTreeSet<usize>, labels: &[Option<usize>]) -> Vec<VarRecord> {
    scans
        .iter()
        .enumerate()
        .map(|(gid, s)| {
            let v = core.clouds.var(gid);
            VarRecord {
                layer: v.layer + 1,
                index: v.index + 1,
                decode_failed: s.failed,
                vacuous_gadget: s.vacuous,
                subset_colors: s.f.iter().map(|x| x.map(|b| b + 1)).collect(),
                noisy_sets: s
                    .g
                    .iter()
                    .map(|x| x.as_ref().map(|g| one_based(g)))
                    .collect(),
                cover_sets: s.cover_sets.as_ref().map(|c| one_based_sets(c)),
                cover_color: s.cover_color.map(|b| b + 1),
                candidate_labels: one_based(&s.candidates),
                selected_group: selected.contains(&gid),
                label: labels[gid].map(|l| l + 1),
            }
        })
        .collect()
}

fn satisfied_fractions(core: &RedCore, a: &Assignment) -> Vec<PairFraction> {
    core.lc
        .constrained_pairs()
        .into_iter()
        .map(|(i, j)| {
            let f = crate::labelcover::satisfied_fraction(&core.lc, a, i, j)
                .expect("pair carries constraints");
            PairFraction { i: i + 1, j: j + 1, numer: *f.numer(), denom: *f.denom() }
        })
        .collect()
}

/// Decoder for the two-color reductions (modes fig1 and fig3).
///
/// Covers come from the constructive two-color cover. The report carries
/// per-cloud balance violations (each color class should hold at least a
/// 1/q fraction) and, at warmup parameters t=1, d=3, the projected label
/// sets whose size is bounded by 3 on proper colorings.
pub fn decode_two_color(
    red: &ReducedInstance,
    chi: &Coloring,
    seed: u64,
    caps: &Caps,
) -> Result<DecodeReport> {
    if !matches!(red.kind(), ReductionKind::Rainbow432 | ReductionKind::TwoColor) {
        return Err(Error::InvalidParams("decoder applies to two-color reduced instances".into()));
    }
    check_dims(red, chi, 2)?;
    let core = red.core().clone();
    let p = core.params;
    let sigmas = colex_subsets(p.q, p.d);
    let flavor = GadgetFlavor::PermRepair { budget: p.d / 2 };

    let mut scans: Vec<VarScan> = (0..core.clouds.num_vars())
        .map(|gid| scan_var(chi, &core, gid, &sigmas, flavor))
        .collect();
    for scan in scans.iter_mut() {
        if scan.failed {
            continue;
        }
        let values: Vec<u8> = scan.f.iter().map(|x| x.unwrap()).collect();
        let f = SubsetColoring::new(p.q, p.d, 2, values)?;
        let cover = two_color_cover(&f)?;
        let sets = canonical_cover(cover.sets, p.t);
        attach_cover(scan, sets, cover.color);
    }

    let selected_key = select_group(&core, &scans);
    let selected: BTreeSet<usize> = match &selected_key {
        Some((ranks, color)) => scans
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                s.cover_color == Some(*color)
                    && s.cover_sets.as_ref().map(|c| {
                        c.iter().map(|x| colex_rank(x)).collect::<Vec<_>>() == *ranks
                    }) == Some(true)
            })
            .map(|(g, _)| g)
            .collect(),
        None => BTreeSet::new(),
    };

    // every cloud variable draws from its own candidate set
    let mut labels: Vec<Option<usize>> = Vec::with_capacity(scans.len());
    for (gid, scan) in scans.iter().enumerate() {
        if scan.candidates.is_empty() {
            labels.push(None);
        } else {
            let mut rng = label_rng(seed, 1 + gid as u64);
            labels.push(Some(scan.candidates[rng.gen_range(0..scan.candidates.len())]));
        }
    }
    let mut assignment = Assignment {
        labels: core.lc.layers.iter().map(|l| vec![0usize; l.num_vars]).collect(),
    };
    for (gid, l) in labels.iter().enumerate() {
        let v = core.clouds.var(gid);
        assignment.labels[v.layer][v.index] = l.unwrap_or(0);
    }

    let warmup = p.q == 3 && p.d == 3 && p.t == 1;
    let mut warmup_label_sets = Vec::new();
    if warmup {
        for (i, j) in core.lc.constrained_pairs() {
            for b in 0..2u8 {
                for y in 0..core.lc.layers[j].num_vars {
                    let v_gid = core.clouds.gid(j, y).expect("cloud exists");
                    let size = core.clouds.cloud_size(v_gid);
                    let count = (0..size)
                        .filter(|&r| chi.color(core.clouds.base(v_gid) + r as u32) == b)
                        .count();
                    if count * 3 < size {
                        continue; // color class too small for the bound to apply
                    }
                    let mut set = BTreeSet::new();
                    for &cidx in core.constraints_into(i, j, y) {
                        let c = core.constraint(cidx);
                        let u_gid = core.clouds.gid(i, c.x).expect("cloud exists");
                        if let Some(hit) = scans[u_gid].per_color[0][b as usize].as_ref() {
                            let a_u = hit.noisy.first().copied().unwrap_or(0);
                            set.insert(c.proj[a_u]);
                        }
                    }
                    warmup_label_sets.push(WarmupLabelSet {
                        i: i + 1,
                        j: j + 1,
                        v_index: y + 1,
                        color: b + 1,
                        labels: one_based(&set.into_iter().collect::<Vec<_>>()),
                    });
                }
            }
        }
    }

    let reference_bound = if red.kind() == ReductionKind::TwoColor {
        Some(p.t as f64 * (p.q as f64).powi((p.t * p.d) as i32) * (p.q as f64).ln())
    } else {
        None
    };

    let failures = scans.iter().filter(|s| s.failed).count();
    let records = build_records(&core, &scans, &selected, &labels);
    let summary = DecodeSummary {
        mode: red.kind().token().to_string(),
        seed,
        t: p.t,
        d: p.d,
        c: 2,
        q: p.q,
        coloring_proper: properness(red, chi, caps),
        decode_failures: failures,
        selected_cover: selected_key.as_ref().map(|(ranks, _)| {
            one_based_sets(
                &ranks
                    .iter()
                    .map(|&r| crate::subsets::colex_unrank(r, p.d, p.q))
                    .collect::<Vec<_>>(),
            )
        }),
        selected_color: selected_key.as_ref().map(|(_, b)| b + 1),
        assignment: assignment.labels.iter().map(|l| one_based(l)).collect(),
        satisfied: satisfied_fractions(&core, &assignment),
        expected_satisfied: Vec::new(),
        cloud_balance_violations: balance_violations(&core, chi),
        disjointness_checks: Vec::new(),
        warmup_label_sets,
        reference_bound,
    };
    Ok(DecodeReport { records, summary })
}

/// Decoder for the almost-rainbow reduction (mode fig2).
///
/// Covers come from the exact minimum monochromatic cover. Second-layer
/// variables take the projected label of a uniformly chosen selected-group
/// neighbor. The report carries, per second-layer variable and t-subset of
/// selected neighbors, the projected noisy sets and their pairwise
/// disjointness; when they are disjoint the recorded gadget edges assemble
/// into a monochromatic witness edge, which is impossible on a proper
/// coloring.
pub fn decode_almost_rainbow(
    red: &ReducedInstance,
    chi: &Coloring,
    seed: u64,
    caps: &Caps,
) -> Result<DecodeReport> {
    if red.kind() != ReductionKind::AlmostRainbow {
        return Err(Error::InvalidParams(
            "decoder applies to almost-rainbow reduced instances".into(),
        ));
    }
    let core = red.core().clone();
    let p = core.params;
    check_dims(red, chi, p.c)?;
    let sigmas = colex_subsets(p.q, p.d);
    let flavor = GadgetFlavor::RainbowColumn { budget: p.d * p.d * p.c };

    let mut scans: Vec<VarScan> = (0..core.clouds.num_vars())
        .map(|gid| scan_var(chi, &core, gid, &sigmas, flavor))
        .collect();
    for scan in scans.iter_mut() {
        if scan.failed {
            continue;
        }
        let values: Vec<u8> = scan.f.iter().map(|x| x.unwrap()).collect();
        let f = SubsetColoring::new(p.q, p.d, p.c, values)?;
        match min_mono_cover(&f, caps)? {
            Some(cover) => {
                let sets = canonical_cover(cover.sets, p.t);
                attach_cover(scan, sets, cover.color);
            }
            None => scan.failed = true,
        }
    }

    let selected_key = select_group(&core, &scans);
    let selected: BTreeSet<usize> = match &selected_key {
        Some((ranks, color)) => scans
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                s.cover_color == Some(*color)
                    && s.cover_sets.as_ref().map(|c| {
                        c.iter().map(|x| colex_rank(x)).collect::<Vec<_>>() == *ranks
                    }) == Some(true)
            })
            .map(|(g, _)| g)
            .collect(),
        None => BTreeSet::new(),
    };

    let mut labels: Vec<Option<usize>> = Vec::with_capacity(scans.len());
    for (gid, scan) in scans.iter().enumerate() {
        if scan.candidates.is_empty() {
            labels.push(None);
        } else {
            let mut rng = label_rng(seed, 1 + gid as u64);
            labels.push(Some(scan.candidates[rng.gen_range(0..scan.candidates.len())]));
        }
    }

    // second-layer labels via a random selected neighbor
    let num_v = core.lc.layers[1].num_vars;
    let mut v_labels = vec![0usize; num_v];
    for y in 0..num_v {
        let nbrs: Vec<usize> = core
            .constraints_into(0, 1, y)
            .iter()
            .copied()
            .filter(|&cidx| {
                let x = core.constraint(cidx).x;
                selected.contains(&core.clouds.gid(0, x).expect("cloud exists"))
            })
            .collect();
        if nbrs.is_empty() {
            continue; // no selected neighbor: keep the arbitrary label 0
        }
        let mut rng = label_rng(seed, (1u64 << 32) + y as u64);
        let cidx = nbrs[rng.gen_range(0..nbrs.len())];
        let c = core.constraint(cidx);
        let u_gid = core.clouds.gid(0, c.x).expect("cloud exists");
        v_labels[y] = c.proj[labels[u_gid].unwrap_or(0)];
    }
    let assignment = Assignment {
        labels: vec![
            (0..core.lc.layers[0].num_vars)
                .map(|x| {
                    labels[core.clouds.gid(0, x).expect("cloud exists")].unwrap_or(0)
                })
                .collect(),
            v_labels,
        ],
    };

    // pairwise disjointness of projected noisy sets over the selected cover
    let mut disjointness_checks = Vec::new();
    let mut check_budget = 10_000usize;
    if let Some((ranks, color)) = &selected_key {
        let sigma_sets: Vec<Vec<u8>> =
            ranks.iter().map(|&r| crate::subsets::colex_unrank(r, p.d, p.q)).collect();
        for y in 0..num_v {
            let nbrs: Vec<usize> = core
                .constraints_into(0, 1, y)
                .iter()
                .copied()
                .filter(|&cidx| {
                    let x = core.constraint(cidx).x;
                    selected.contains(&core.clouds.gid(0, x).expect("cloud exists"))
                })
                .collect();
            if nbrs.len() < p.t {
                continue;
            }
            for combo in Combinations::new(nbrs.len(), p.t) {
                if check_budget == 0 {
                    break;
                }
                check_budget -= 1;
                let cons: Vec<usize> = combo.iter().map(|&i| nbrs[i]).collect();
                let mut proj_sets: Vec<BTreeSet<usize>> = Vec::with_capacity(p.t);
                let mut witness: Vec<u32> = Vec::new();
                for (j, &cidx) in cons.iter().enumerate() {
                    let c = core.constraint(cidx);
                    let u_gid = core.clouds.gid(0, c.x).expect("cloud exists");
                    let rank = colex_rank(&sigma_sets[j]);
                    let g = scans[u_gid].g[rank].as_ref().expect("selected vars decoded");
                    proj_sets.push(g.iter().map(|&a| c.proj[a]).collect());
                    let hit = scans[u_gid].per_color[rank][(*color) as usize]
                        .as_ref()
                        .expect("cover color has a hit");
                    for s in &hit.strings {
                        witness.push(core.clouds.vertex_id(u_gid, s));
                    }
                }
                let disjoint = (0..p.t).all(|a| {
                    (a + 1..p.t).all(|b| proj_sets[a].is_disjoint(&proj_sets[b]))
                });
                let (is_edge, mono) = if disjoint {
                    witness.sort_unstable();
                    let edge = red.hypergraph.contains_edge(&witness);
                    let mono = witness
                        .iter()
                        .all(|&v| chi.color(v) == *color);
                    (Some(edge), Some(mono))
                } else {
                    (None, None)
                };
                disjointness_checks.push(DisjointnessCheck {
                    v_index: y + 1,
                    neighbor_indices: cons
                        .iter()
                        .map(|&cidx| core.constraint(cidx).x + 1)
                        .collect(),
                    projected_noisy_sets: proj_sets
                        .iter()
                        .map(|s| one_based(&s.iter().copied().collect::<Vec<_>>()))
                        .collect(),
                    pairwise_disjoint: disjoint,
                    witness_is_edge: is_edge,
                    witness_monochromatic: mono,
                });
            }
        }
    }

    let expected_satisfied =
        expected_fraction(&core, &scans, &labels, &selected).map_or(Vec::new(), |value| {
            vec![ExpectedFraction { i: 1, j: 2, value }]
        });

    let failures = scans.iter().filter(|s| s.failed).count();
    let records = build_records(&core, &scans, &selected, &labels);
    let summary = DecodeSummary {
        mode: red.kind().token().to_string(),
        seed,
        t: p.t,
        d: p.d,
        c: p.c,
        q: p.q,
        coloring_proper: properness(red, chi, caps),
        decode_failures: failures,
        selected_cover: selected_key.as_ref().map(|(ranks, _)| {
            one_based_sets(
                &ranks
                    .iter()
                    .map(|&r| crate::subsets::colex_unrank(r, p.d, p.q))
                    .collect::<Vec<_>>(),
            )
        }),
        selected_color: selected_key.as_ref().map(|(_, b)| b + 1),
        assignment: assignment.labels.iter().map(|l| one_based(l)).collect(),
        satisfied: satisfied_fractions(&core, &assignment),
        expected_satisfied,
        cloud_balance_violations: Vec::new(),
        disjointness_checks,
        warmup_label_sets: Vec::new(),
        reference_bound: None,
    };
    Ok(DecodeReport { records, summary })
}

/// Exact expectation of the satisfied fraction between the two layers over
/// the label draws, when the candidate spaces are small enough to
/// enumerate. Failed variables contribute their deterministic fallback
/// label 1.
fn expected_fraction(
    core: &RedCore,
    scans: &[VarScan],
    _labels: &[Option<usize>],
    selected: &BTreeSet<usize>,
) -> Option<String> {
    let total = core.lc.constraints.len();
    if total == 0 {
        return None;
    }
    let cand = |gid: usize| -> Vec<usize> {
        if scans[gid].candidates.is_empty() {
            vec![0]
        } else {
            scans[gid].candidates.clone()
        }
    };
    // work estimate
    let mut work: u128 = 0;
    for y in 0..core.lc.layers[1].num_vars {
        let nbrs = core.constraints_into(0, 1, y);
        work += (nbrs.len() as u128).pow(2) * 225;
    }
    if work > 1_000_000 {
        return None;
    }
    let big = |x: usize| BigInt::from(x as u64);
    let mut sum = BigRational::from_integer(BigInt::from(0));
    for y in 0..core.lc.layers[1].num_vars {
        let all: Vec<usize> = core.constraints_into(0, 1, y).to_vec();
        let nprime: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&cidx| {
                selected.contains(&core.clouds.gid(0, core.constraint(cidx).x).unwrap())
            })
            .collect();
        for &cidx in &all {
            let c = core.constraint(cidx);
            let cu = cand(core.clouds.gid(0, c.x).unwrap());
            let p = if nprime.is_empty() {
                // fallback label 0 on the second layer
                let hits = cu.iter().filter(|&&a| c.proj[a] == 0).count();
                BigRational::new(big(hits), big(cu.len()))
            } else {
                let mut acc = BigRational::from_integer(BigInt::from(0));
                for &c0idx in &nprime {
                    if c0idx == cidx {
                        acc += BigRational::from_integer(BigInt::from(1));
                        continue;
                    }
                    let c0 = core.constraint(c0idx);
                    let cu0 = cand(core.clouds.gid(0, c0.x).unwrap());
                    let mut hits = 0usize;
                    for &a in &cu {
                        for &a0 in &cu0 {
                            if c.proj[a] == c0.proj[a0] {
                                hits += 1;
                            }
                        }
                    }
                    acc += BigRational::new(big(hits), big(cu.len() * cu0.len()));
                }
                acc / BigRational::from_integer(big(nprime.len()))
            };
            sum += p;
        }
    }
    let e = sum / BigRational::from_integer(big(total));
    Some(format!("{}/{}", e.numer(), e.denom()))
}
