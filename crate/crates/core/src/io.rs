//! Text formats: hypergraphs, colorings, subset colorings, label cover
//! instances, assignments, and reduction manifests.
//!
//! All formats are line-based ASCII with LF endings and 1-based ids.
//! Parsers report the offending line number; serializers emit canonical
//! output (sorted edges, one record per line) so that parse ∘ serialize is
//! the identity on values.
//!
//! - hypergraph: comment lines `c …`, header `h <n> <m> <k>`, edge lines
//!   `e v1 … vk` with strictly increasing ids, edges sorted
//!   lexicographically;
//! - coloring: header `s <n> <c>`, one line `l c1 … cn`;
//! - subset coloring: header `f <q> <d> <c>`, then one color per d-subset
//!   in colexicographic order;
//! - label cover: `lc <layers>`, per layer `layer <i> <vars> <range>`, per
//!   constraint `con <i> <x> <j> <y> <p1> … <pRi>`;
//! - assignment: `a <layers>`, per layer `al <i> <l1> … <lvars>`;
//! - manifest: `m <mode> <t> <d> <c>` followed by the label cover text;
//!   the reduction is rebuilt deterministically from it.

use crate::caps::Caps;
use crate::covering::SubsetColoring;
use crate::error::{Error, Result};
use crate::hypergraph::{Coloring, Edge, Hypergraph};
use crate::labelcover::{Assignment, Constraint, LabelCoverInstance, LayerSpec};
use crate::reductions::{
    reduce_almost_rainbow, reduce_rainbow432, reduce_two_color, ReducedInstance, ReductionKind,
};
use crate::subsets::binomial;

fn fields(line: &str) -> Vec<&str> {
    line.split_ascii_whitespace().collect()
}

/// A comment line's first token is exactly `c`.
fn is_comment(line: &str) -> bool {
    line.split_ascii_whitespace().next() == Some("c")
}

fn parse_num<T: std::str::FromStr>(tok: &str, lineno: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::parse(lineno, format!("invalid {what}: {tok}")))
}

/// Parses the hypergraph text format.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Edge> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let f = fields(line);
        match f[0] {
            "h" => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate header"));
                }
                if f.len() != 4 {
                    return Err(Error::parse(lineno, "malformed header: expected h <n> <m> <k>"));
                }
                let n = parse_num::<usize>(f[1], lineno, "vertex count")?;
                let m = parse_num::<usize>(f[2], lineno, "edge count")?;
                let k = parse_num::<usize>(f[3], lineno, "uniformity")?;
                header = Some((n, m, k));
            }
            "e" => {
                let Some((n, _, k)) = header else {
                    return Err(Error::parse(lineno, "edge before header"));
                };
                if f.len() != k + 1 {
                    return Err(Error::parse(
                        lineno,
                        format!("wrong uniformity: {} ids, expected {k}", f.len() - 1),
                    ));
                }
                let mut ids = Vec::with_capacity(k);
                for tok in &f[1..] {
                    let v = parse_num::<u32>(tok, lineno, "vertex id")?;
                    if v == 0 || v as usize > n {
                        return Err(Error::parse(lineno, format!("vertex id {v} out of range")));
                    }
                    ids.push(v - 1);
                }
                if ids.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::parse(lineno, "non-increasing vertex ids"));
                }
                edges.push(Edge::from_sorted(ids));
            }
            other => return Err(Error::parse(lineno, format!("unknown record {other}"))),
        }
    }
    let Some((n, m, k)) = header else {
        return Err(Error::parse(1, "missing header"));
    };
    if edges.len() != m {
        return Err(Error::parse(1, format!("header announces {m} edges, found {}", edges.len())));
    }
    let mut sorted = edges.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != edges.len() {
        return Err(Error::parse(1, "duplicate edge"));
    }
    Hypergraph::explicit(n, k, edges)
}

/// Serializes an explicit hypergraph canonically.
pub fn write_hypergraph(h: &Hypergraph) -> Result<String> {
    let edges = h.edges()?;
    let mut out = String::from("c hypergraph\n");
    out.push_str(&format!("h {} {} {}\n", h.num_vertices(), edges.len(), h.uniformity()));
    for e in edges {
        out.push('e');
        for &v in e.vertices() {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses the coloring format.
pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut header: Option<(usize, usize)> = None;
    let mut values: Option<Vec<u8>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let f = fields(line);
        match f[0] {
            "s" => {
                if f.len() != 3 {
                    return Err(Error::parse(lineno, "malformed header: expected s <n> <c>"));
                }
                header = Some((
                    parse_num::<usize>(f[1], lineno, "vertex count")?,
                    parse_num::<usize>(f[2], lineno, "color count")?,
                ));
            }
            "l" => {
                let Some((n, c)) = header else {
                    return Err(Error::parse(lineno, "values before header"));
                };
                if f.len() != n + 1 {
                    return Err(Error::parse(
                        lineno,
                        format!("{} values for {n} vertices", f.len() - 1),
                    ));
                }
                let mut vals = Vec::with_capacity(n);
                for tok in &f[1..] {
                    let v = parse_num::<usize>(tok, lineno, "color")?;
                    if v == 0 || v > c {
                        return Err(Error::parse(lineno, format!("color {v} out of range")));
                    }
                    vals.push((v - 1) as u8);
                }
                values = Some(vals);
            }
            other => return Err(Error::parse(lineno, format!("unknown record {other}"))),
        }
    }
    let (Some((_, c)), Some(vals)) = (header, values) else {
        return Err(Error::parse(1, "missing header or value line"));
    };
    Coloring::new(vals, c)
}

pub fn write_coloring(chi: &Coloring) -> String {
    let mut out = format!("s {} {}\n", chi.len(), chi.num_colors());
    out.push('l');
    for &v in chi.values() {
        out.push_str(&format!(" {}", v + 1));
    }
    out.push('\n');
    out
}

/// Parses the subset coloring format.
pub fn parse_subset_coloring(text: &str) -> Result<SubsetColoring> {
    let mut lines = text.lines().enumerate();
    let (q, d, c, header_line) = loop {
        let Some((idx, raw)) = lines.next() else {
            return Err(Error::parse(1, "missing header"));
        };
        let line = raw.trim_end();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let f = fields(line);
        if f[0] != "f" || f.len() != 4 {
            return Err(Error::parse(idx + 1, "malformed header: expected f <q> <d> <c>"));
        }
        break (
            parse_num::<usize>(f[1], idx + 1, "ground size")?,
            parse_num::<usize>(f[2], idx + 1, "subset size")?,
            parse_num::<usize>(f[3], idx + 1, "color count")?,
            idx + 1,
        );
    };
    let expect = binomial(q, d);
    let mut values = Vec::new();
    for (idx, raw) in lines {
        let line = raw.trim_end();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        for tok in fields(line) {
            let v = parse_num::<usize>(tok, idx + 1, "color")?;
            if v == 0 || v > c {
                return Err(Error::parse(idx + 1, format!("color {v} out of range")));
            }
            values.push((v - 1) as u8);
        }
    }
    if values.len() as u128 != expect {
        return Err(Error::parse(
            header_line,
            format!("{} colors for {expect} subsets", values.len()),
        ));
    }
    SubsetColoring::new(q, d, c, values)
}

pub fn write_subset_coloring(f: &SubsetColoring) -> String {
    let mut out = format!("f {} {} {}\n", f.q(), f.d(), f.num_colors());
    for &v in f.values() {
        out.push_str(&format!("{}\n", v + 1));
    }
    out
}

/// Parses the label cover format.
pub fn parse_labelcover(text: &str) -> Result<LabelCoverInstance> {
    let mut num_layers: Option<usize> = None;
    let mut layers: Vec<Option<LayerSpec>> = Vec::new();
    let mut constraints = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let f = fields(line);
        match f[0] {
            "lc" => {
                if f.len() != 2 {
                    return Err(Error::parse(lineno, "malformed header: expected lc <layers>"));
                }
                let l = parse_num::<usize>(f[1], lineno, "layer count")?;
                num_layers = Some(l);
                layers = vec![None; l];
            }
            "layer" => {
                let Some(l) = num_layers else {
                    return Err(Error::parse(lineno, "layer before header"));
                };
                if f.len() != 4 {
                    return Err(Error::parse(lineno, "expected layer <i> <vars> <range>"));
                }
                let i = parse_num::<usize>(f[1], lineno, "layer index")?;
                if i == 0 || i > l {
                    return Err(Error::parse(lineno, format!("layer index {i} out of range")));
                }
                layers[i - 1] = Some(LayerSpec {
                    num_vars: parse_num(f[2], lineno, "variable count")?,
                    range: parse_num(f[3], lineno, "range")?,
                });
            }
            "con" => {
                if num_layers.is_none() {
                    return Err(Error::parse(lineno, "constraint before header"));
                }
                if f.len() < 5 {
                    return Err(Error::parse(lineno, "expected con <i> <x> <j> <y> <proj…>"));
                }
                let i = parse_num::<usize>(f[1], lineno, "layer index")?;
                let x = parse_num::<usize>(f[2], lineno, "variable index")?;
                let j = parse_num::<usize>(f[3], lineno, "layer index")?;
                let y = parse_num::<usize>(f[4], lineno, "variable index")?;
                if i == 0 || j == 0 || x == 0 || y == 0 {
                    return Err(Error::parse(lineno, "indices are 1-based"));
                }
                let ri = layers
                    .get(i - 1)
                    .and_then(|s| *s)
                    .ok_or_else(|| Error::parse(lineno, format!("layer {i} not declared")))?
                    .range;
                let rj = layers
                    .get(j - 1)
                    .and_then(|s| *s)
                    .ok_or_else(|| Error::parse(lineno, format!("layer {j} not declared")))?
                    .range;
                if f.len() != 5 + ri {
                    return Err(Error::parse(
                        lineno,
                        format!("projection lists {} values, range is {ri}", f.len() - 5),
                    ));
                }
                let mut proj = Vec::with_capacity(ri);
                for tok in &f[5..] {
                    let v = parse_num::<usize>(tok, lineno, "projection value")?;
                    if v == 0 || v > rj {
                        return Err(Error::parse(
                            lineno,
                            format!("projection value {v} out of range"),
                        ));
                    }
                    proj.push(v - 1);
                }
                constraints.push(Constraint { i: i - 1, j: j - 1, x: x - 1, y: y - 1, proj });
            }
            other => return Err(Error::parse(lineno, format!("unknown record {other}"))),
        }
    }
    if num_layers.is_none() {
        return Err(Error::parse(1, "missing header"));
    }
    let mut specs = Vec::with_capacity(layers.len());
    for (i, l) in layers.iter().enumerate() {
        specs.push(l.ok_or_else(|| Error::parse(1, format!("layer {} not declared", i + 1)))?);
    }
    let inst = LabelCoverInstance { layers: specs, constraints };
    let violations = inst.validate();
    if !violations.is_empty() {
        return Err(Error::parse(1, violations.join("; ")));
    }
    Ok(inst)
}

pub fn write_labelcover(inst: &LabelCoverInstance) -> String {
    let mut out = format!("lc {}\n", inst.layers.len());
    for (i, l) in inst.layers.iter().enumerate() {
        out.push_str(&format!("layer {} {} {}\n", i + 1, l.num_vars, l.range));
    }
    for c in &inst.constraints {
        out.push_str(&format!("con {} {} {} {}", c.i + 1, c.x + 1, c.j + 1, c.y + 1));
        for &p in &c.proj {
            out.push_str(&format!(" {}", p + 1));
        }
        out.push('\n');
    }
    out
}

/// Parses the assignment format; shape is validated on use.
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    let mut num_layers: Option<usize> = None;
    let mut labels: Vec<Vec<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let f = fields(line);
        match f[0] {
            "a" => {
                if f.len() != 2 {
                    return Err(Error::parse(lineno, "malformed header: expected a <layers>"));
                }
                let l = parse_num::<usize>(f[1], lineno, "layer count")?;
                num_layers = Some(l);
                labels = vec![Vec::new(); l];
            }
            "al" => {
                let Some(l) = num_layers else {
                    return Err(Error::parse(lineno, "labels before header"));
                };
                if f.len() < 2 {
                    return Err(Error::parse(lineno, "expected al <i> <labels…>"));
                }
                let i = parse_num::<usize>(f[1], lineno, "layer index")?;
                if i == 0 || i > l {
                    return Err(Error::parse(lineno, format!("layer index {i} out of range")));
                }
                let mut vals = Vec::with_capacity(f.len() - 2);
                for tok in &f[2..] {
                    let v = parse_num::<usize>(tok, lineno, "label")?;
                    if v == 0 {
                        return Err(Error::parse(lineno, "labels are 1-based"));
                    }
                    vals.push(v - 1);
                }
                labels[i - 1] = vals;
            }
            other => return Err(Error::parse(lineno, format!("unknown record {other}"))),
        }
    }
    if num_layers.is_none() {
        return Err(Error::parse(1, "missing header"));
    }
    Ok(Assignment { labels })
}

pub fn write_assignment(a: &Assignment) -> String {
    let mut out = format!("a {}\n", a.labels.len());
    for (i, l) in a.labels.iter().enumerate() {
        out.push_str(&format!("al {}", i + 1));
        for &v in l {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    out
}

/// A reduction manifest: mode, parameters, and the label cover instance the
/// reduction is rebuilt from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub kind: ReductionKind,
    pub t: usize,
    pub d: usize,
    pub c: usize,
    pub label_cover: LabelCoverInstance,
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let mut head: Option<(ReductionKind, usize, usize, usize)> = None;
    let mut rest = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if head.is_none() {
            if line.is_empty() || is_comment(line) {
                continue;
            }
            let f = fields(line);
            if f[0] != "m" || f.len() != 5 {
                return Err(Error::parse(
                    lineno,
                    "malformed header: expected m <mode> <t> <d> <c>",
                ));
            }
            let kind = ReductionKind::from_token(f[1])
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
            head = Some((
                kind,
                parse_num(f[2], lineno, "t")?,
                parse_num(f[3], lineno, "d")?,
                parse_num(f[4], lineno, "c")?,
            ));
        } else {
            rest.push_str(raw);
            rest.push('\n');
        }
    }
    let Some((kind, t, d, c)) = head else {
        return Err(Error::parse(1, "missing manifest header"));
    };
    Ok(Manifest { kind, t, d, c, label_cover: parse_labelcover(&rest)? })
}

pub fn write_manifest(m: &Manifest) -> String {
    format!(
        "c reduction manifest\nm {} {} {} {}\n{}",
        m.kind.token(),
        m.t,
        m.d,
        m.c,
        write_labelcover(&m.label_cover)
    )
}

/// Rebuilds the reduction a manifest describes.
pub fn build_from_manifest(m: &Manifest, caps: &Caps) -> Result<ReducedInstance> {
    match m.kind {
        ReductionKind::Rainbow432 => reduce_rainbow432(&m.label_cover, caps),
        ReductionKind::AlmostRainbow => reduce_almost_rainbow(&m.label_cover, m.t, m.d, m.c, caps),
        ReductionKind::TwoColor => reduce_two_color(&m.label_cover, m.t, m.d, caps),
    }
}

/// Manifest for an already-built instance.
pub fn manifest_for(red: &ReducedInstance) -> Manifest {
    let p = red.params();
    Manifest {
        kind: red.kind(),
        t: p.t,
        d: p.d,
        c: p.c,
        label_cover: red.label_cover().clone(),
    }
}
