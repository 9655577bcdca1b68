//! Cloud layout: the bijection between hypergraph vertices and
//! (variable, string) pairs.
//!
//! Each label-cover variable with a cloud owns a contiguous block of
//! `q^R` vertex ids, one per string in `[q]^R`, where R is the variable's
//! label range. Blocks are laid out layer by layer, variables in index
//! order. Within a block the vertex id offset is the lexicographic rank of
//! the string with coordinate 0 most significant.

use crate::error::{Error, Result};
use crate::gadgets::{string_rank, string_unrank};
use crate::labelcover::LayerSpec;

/// A variable position: layer and index within the layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VarRef {
    pub layer: usize,
    pub index: usize,
}

/// Vertex id <-> (variable, string) bijection for all variables that carry
/// clouds.
#[derive(Debug, Clone)]
pub struct CloudMap {
    q: usize,
    vars: Vec<(VarRef, usize)>, // (variable, range) in global id order
    base: Vec<u32>,
    total: u32,
    gids: std::collections::BTreeMap<(usize, usize), usize>,
}

impl CloudMap {
    /// Builds clouds for the given layers (all variables of each).
    pub fn new(q: usize, layers: &[LayerSpec], cloud_layers: &[usize]) -> Result<CloudMap> {
        if q < 2 || q > 255 {
            return Err(Error::InvalidParams(format!("cloud alphabet {q} outside 2..=255")));
        }
        let mut vars = Vec::new();
        let mut base = Vec::new();
        let mut gids = std::collections::BTreeMap::new();
        let mut total: u64 = 0;
        for &layer in cloud_layers {
            let spec = &layers[layer];
            for index in 0..spec.num_vars {
                let size = (q as u64).checked_pow(spec.range as u32).ok_or_else(|| {
                    Error::TooLarge(format!("cloud size {q}^{} overflows", spec.range))
                })?;
                gids.insert((layer, index), vars.len());
                vars.push((VarRef { layer, index }, spec.range));
                base.push(total as u32);
                total += size;
                if total > u32::MAX as u64 {
                    return Err(Error::TooLarge(format!("{total} cloud vertices overflow ids")));
                }
            }
        }
        Ok(CloudMap { q, vars, base, total: total as u32, gids })
    }

    pub fn alphabet(&self) -> usize {
        self.q
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.total as usize
    }

    pub fn var(&self, gid: usize) -> VarRef {
        self.vars[gid].0
    }

    pub fn range(&self, gid: usize) -> usize {
        self.vars[gid].1
    }

    pub fn gid(&self, layer: usize, index: usize) -> Option<usize> {
        self.gids.get(&(layer, index)).copied()
    }

    pub fn cloud_size(&self, gid: usize) -> usize {
        (self.q as u64).pow(self.vars[gid].1 as u32) as usize
    }

    pub fn base(&self, gid: usize) -> u32 {
        self.base[gid]
    }

    /// Vertex id of (variable, string).
    pub fn vertex_id(&self, gid: usize, string: &[u8]) -> u32 {
        debug_assert_eq!(string.len(), self.vars[gid].1);
        self.base[gid] + string_rank(string, self.q)
    }

    /// Inverse of [`CloudMap::vertex_id`].
    pub fn decode_vertex(&self, id: u32) -> (usize, Vec<u8>) {
        let gid = match self.base.binary_search(&id) {
            Ok(g) => g,
            Err(g) => g - 1,
        };
        let offset = id - self.base[gid];
        (gid, string_unrank(offset, self.q, self.vars[gid].1))
    }

    /// Human-readable vertex description, 1-based symbols.
    pub fn describe_vertex(&self, id: u32) -> String {
        let (gid, s) = self.decode_vertex(id);
        let v = self.var(gid);
        let sym: Vec<String> = s.iter().map(|&x| (x + 1).to_string()).collect();
        format!("x{}.{}:{}", v.layer + 1, v.index + 1, sym.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_roundtrip() {
        let layers = [LayerSpec { num_vars: 2, range: 2 }, LayerSpec { num_vars: 1, range: 3 }];
        let cm = CloudMap::new(3, &layers, &[0, 1]).unwrap();
        assert_eq!(cm.num_vars(), 3);
        assert_eq!(cm.total_vertices(), 9 + 9 + 27);
        for gid in 0..cm.num_vars() {
            for rank in 0..cm.cloud_size(gid) {
                let id = cm.base(gid) + rank as u32;
                let (g2, s) = cm.decode_vertex(id);
                assert_eq!(g2, gid);
                assert_eq!(cm.vertex_id(gid, &s), id);
            }
        }
    }

    #[test]
    fn partial_layers() {
        let layers = [LayerSpec { num_vars: 2, range: 1 }, LayerSpec { num_vars: 5, range: 2 }];
        let cm = CloudMap::new(11, &layers, &[0]).unwrap();
        assert_eq!(cm.num_vars(), 2);
        assert_eq!(cm.total_vertices(), 22);
        assert!(cm.gid(1, 0).is_none());
        assert_eq!(cm.gid(0, 1), Some(1));
    }
}
