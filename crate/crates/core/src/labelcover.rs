//! Layered label cover instances: data model, planted generators, and exact
//! assignment scoring.
//!
//! An instance has ℓ layers of variables; layer i has a label range R_i.
//! Every constraint sits between a variable x of a lower layer i and a
//! variable y of a higher layer j and carries a projection `proj: R_i → R_j`;
//! the pair of labels (a, proj[a]) satisfies it. Instances here are either
//! hand-built or *planted*: generated around a hidden assignment that
//! satisfies every constraint.
//!
//! Scoring is exact rational arithmetic throughout. Nothing in this module
//! attempts to produce the structured (weakly dense) instances that come out
//! of PCP machinery — planted instances exercise reduction pipelines, they
//! are not hardness evidence.

use num_rational::Ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

/// One layer: a number of variables sharing a label range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerSpec {
    pub num_vars: usize,
    pub range: usize,
}

/// A projection constraint between variable `x` of layer `i` and variable
/// `y` of layer `j`, with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub i: usize,
    pub j: usize,
    pub x: usize,
    pub y: usize,
    /// Total map: label a of x forces label proj[a] on y.
    pub proj: Vec<usize>,
}

/// A layered label cover instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelCoverInstance {
    pub layers: Vec<LayerSpec>,
    pub constraints: Vec<Constraint>,
}

/// A total assignment: one label per variable, layer by layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub labels: Vec<Vec<usize>>,
}

impl Assignment {
    pub fn get(&self, layer: usize, var: usize) -> usize {
        self.labels[layer][var]
    }
}

impl LabelCoverInstance {
    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn constraints_between(&self, i: usize, j: usize) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(move |c| c.i == i && c.j == j)
    }

    /// Layer pairs that actually carry constraints, ascending.
    pub fn constrained_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> =
            self.constraints.iter().map(|c| (c.i, c.j)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// Checks an assignment's shape against the instance.
    pub fn check_assignment(&self, a: &Assignment) -> Result<()> {
        if a.labels.len() != self.layers.len() {
            return Err(Error::DimensionMismatch(format!(
                "assignment has {} layers, instance has {}",
                a.labels.len(),
                self.layers.len()
            )));
        }
        for (i, (vals, spec)) in a.labels.iter().zip(&self.layers).enumerate() {
            if vals.len() != spec.num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "layer {i}: {} labels for {} variables",
                    vals.len(),
                    spec.num_vars
                )));
            }
            if vals.iter().any(|&v| v >= spec.range) {
                return Err(Error::InvalidParams(format!("layer {i}: label out of range")));
            }
        }
        Ok(())
    }

    /// All invariant violations, as human-readable strings. An empty list
    /// means the instance is well-formed.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (idx, spec) in self.layers.iter().enumerate() {
            if spec.num_vars == 0 {
                out.push(format!("layer {idx} has no variables"));
            }
            if spec.range == 0 {
                out.push(format!("layer {idx} has an empty label range"));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (k, c) in self.constraints.iter().enumerate() {
            if c.i >= c.j {
                out.push(format!("constraint {k}: layers not ascending ({} >= {})", c.i, c.j));
                continue;
            }
            if c.j >= self.layers.len() {
                out.push(format!("constraint {k}: layer {} out of range", c.j));
                continue;
            }
            let (ri, rj) = (self.layers[c.i].range, self.layers[c.j].range);
            if c.x >= self.layers[c.i].num_vars || c.y >= self.layers[c.j].num_vars {
                out.push(format!("constraint {k}: variable index out of range"));
            }
            if c.proj.len() != ri {
                out.push(format!(
                    "constraint {k}: projection covers {} of {} labels",
                    c.proj.len(),
                    ri
                ));
            }
            if c.proj.iter().any(|&v| v >= rj) {
                out.push(format!("constraint {k}: projection value out of range"));
            }
            if !seen.insert((c.i, c.j, c.x, c.y)) {
                out.push(format!(
                    "constraint {k}: duplicate constraint between ({}, {}) and ({}, {})",
                    c.i, c.x, c.j, c.y
                ));
            }
        }
        out
    }
}

/// Generates an instance whose constraints are random projections
/// conditioned to agree with a hidden random assignment; the instance is
/// therefore fully satisfiable. Each ordered layer pair (i < j) contributes
/// each variable pair independently with probability `density`.
pub fn planted_instance(
    layers: &[LayerSpec],
    density: f64,
    seed: u64,
) -> Result<(LabelCoverInstance, Assignment)> {
    if layers.len() < 2 {
        return Err(Error::InvalidParams("need at least two layers".into()));
    }
    if layers.iter().any(|l| l.num_vars == 0 || l.range == 0) {
        return Err(Error::InvalidParams("layers must have variables and nonempty ranges".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidParams(format!("density {density} outside (0, 1]")));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let labels: Vec<Vec<usize>> = layers
        .iter()
        .map(|l| (0..l.num_vars).map(|_| rng.gen_range(0..l.range)).collect())
        .collect();
    let planted = Assignment { labels };

    let mut constraints = Vec::new();
    for i in 0..layers.len() {
        for j in i + 1..layers.len() {
            for x in 0..layers[i].num_vars {
                for y in 0..layers[j].num_vars {
                    if !rng.gen_bool(density) {
                        continue;
                    }
                    let mut proj: Vec<usize> =
                        (0..layers[i].range).map(|_| rng.gen_range(0..layers[j].range)).collect();
                    proj[planted.get(i, x)] = planted.get(j, y);
                    constraints.push(Constraint { i, j, x, y, proj });
                }
            }
        }
    }
    let inst = LabelCoverInstance { layers: layers.to_vec(), constraints };
    debug_assert!(inst.validate().is_empty());
    Ok((inst, planted))
}

/// Fraction of constraints between layers i and j satisfied by `a`, as an
/// exact rational. Errors when the pair carries no constraints.
pub fn satisfied_fraction(
    inst: &LabelCoverInstance,
    a: &Assignment,
    i: usize,
    j: usize,
) -> Result<Ratio<u64>> {
    inst.check_assignment(a)?;
    let mut total = 0u64;
    let mut sat = 0u64;
    for c in inst.constraints_between(i, j) {
        total += 1;
        if c.proj[a.get(c.i, c.x)] == a.get(c.j, c.y) {
            sat += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptyConstraints { i, j });
    }
    Ok(Ratio::new(sat, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_constraint_planted() {
        let layers = [LayerSpec { num_vars: 1, range: 2 }, LayerSpec { num_vars: 1, range: 2 }];
        let (inst, a) = planted_instance(&layers, 1.0, 3).unwrap();
        assert_eq!(inst.constraints.len(), 1);
        assert_eq!(satisfied_fraction(&inst, &a, 0, 1).unwrap(), Ratio::new(1, 1));
    }

    #[test]
    fn planted_scores_one_everywhere() {
        let layers = vec![LayerSpec { num_vars: 4, range: 3 }; 8];
        let (inst, a) = planted_instance(&layers, 1.0, 7).unwrap();
        for (i, j) in inst.constrained_pairs() {
            assert_eq!(satisfied_fraction(&inst, &a, i, j).unwrap(), Ratio::new(1, 1));
        }
    }

    #[test]
    fn density_controls_constraint_count() {
        let layers = vec![LayerSpec { num_vars: 10, range: 3 }; 2];
        let mut total = 0usize;
        let runs = 80;
        for seed in 0..runs {
            let (inst, a) = planted_instance(&layers, 0.5, seed).unwrap();
            total += inst.constraints.len();
            // satisfiability preserved at any density
            for (i, j) in inst.constrained_pairs() {
                assert_eq!(satisfied_fraction(&inst, &a, i, j).unwrap(), Ratio::new(1, 1));
            }
        }
        let mean = total as f64 / runs as f64;
        assert!((mean - 50.0).abs() < 5.0, "mean constraint count {mean} far from 50");
    }

    #[test]
    fn adversarial_assignment_on_binary_constraint() {
        let layers = [LayerSpec { num_vars: 1, range: 2 }, LayerSpec { num_vars: 1, range: 2 }];
        let (inst, a) = planted_instance(&layers, 1.0, 9).unwrap();
        let flipped = Assignment {
            labels: vec![a.labels[0].clone(), vec![1 - a.labels[1][0]]],
        };
        let f = satisfied_fraction(&inst, &flipped, 0, 1).unwrap();
        assert!(f == Ratio::new(0, 1) || f == Ratio::new(1, 1));
        assert_eq!(f, Ratio::new(0, 1));
    }

    #[test]
    fn random_assignment_scores_about_one_over_range() {
        use rand::Rng;
        use rand::SeedableRng;
        let layers = vec![LayerSpec { num_vars: 6, range: 3 }; 2];
        let mut num = 0u64;
        let mut den = 0u64;
        for seed in 0..1000u64 {
            let (inst, _) = planted_instance(&layers, 1.0, seed).unwrap();
            let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed ^ 0xabcd);
            let labels = vec![
                (0..6).map(|_| rng.gen_range(0..3)).collect(),
                (0..6).map(|_| rng.gen_range(0..3)).collect(),
            ];
            let f = satisfied_fraction(&inst, &Assignment { labels }, 0, 1).unwrap();
            num += f.numer() * (36 / f.denom()); // common denominator 36
            den += 36;
        }
        let avg = num as f64 / den as f64;
        assert!((avg - 1.0 / 3.0).abs() < 0.05, "average {avg} not near 1/3");
    }

    #[test]
    fn empty_pair_is_flagged() {
        let layers = [LayerSpec { num_vars: 1, range: 2 }, LayerSpec { num_vars: 1, range: 2 }];
        let (inst, a) = planted_instance(&layers, 1.0, 3).unwrap();
        assert!(matches!(
            satisfied_fraction(&inst, &a, 1, 0),
            Err(Error::EmptyConstraints { .. })
        ));
    }

    #[test]
    fn validation_catches_breakage() {
        let layers = [LayerSpec { num_vars: 1, range: 2 }, LayerSpec { num_vars: 1, range: 2 }];
        let (inst, _) = planted_instance(&layers, 1.0, 3).unwrap();
        assert!(inst.validate().is_empty());

        let mut broken = inst.clone();
        broken.constraints[0].proj.pop(); // projection no longer total
        assert!(!broken.validate().is_empty());

        let mut dup = inst.clone();
        let c = dup.constraints[0].clone();
        dup.constraints.push(c);
        assert!(dup.validate().iter().any(|v| v.contains("duplicate")));
    }

    #[test]
    fn degenerate_sizes_rejected() {
        assert!(planted_instance(&[LayerSpec { num_vars: 1, range: 2 }], 1.0, 0).is_err());
        let layers = [LayerSpec { num_vars: 0, range: 2 }, LayerSpec { num_vars: 1, range: 2 }];
        assert!(planted_instance(&layers, 1.0, 0).is_err());
        let layers = [LayerSpec { num_vars: 1, range: 2 }, LayerSpec { num_vars: 1, range: 2 }];
        assert!(planted_instance(&layers, 0.0, 0).is_err());
    }
}
