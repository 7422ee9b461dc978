use serde::{Deserialize, Serialize};

use super::local::best_of_restarts;
use crate::digraph::{Bipartition, CutStats, Digraph, Side, VertexSet};
use crate::error::{Error, Result};
use crate::ratio::{self, frac, int, Rational};
use crate::tightness::count_tight;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Slack `ε` in the two lower bounds; converted exactly to a rational.
    pub epsilon: f64,
    /// When set, record whether every vertex of `Y` has underlying degree at
    /// most this value.
    pub degree_threshold: Option<usize>,
}

impl Default for ExtendConfig {
    fn default() -> Self {
        ExtendConfig { restarts: 64, seed: 0, epsilon: 0.05, degree_threshold: None }
    }
}

/// The two lower bounds
/// `e(V₁,V₂) ≥ e(X₁,X₂) + (e(X₁,Y)+e(Y,X₂))/2 + e(Y)/4 + (n−τ)/8 − εn` and its
/// mirror, evaluated on a returned partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionVerdict {
    pub tau: usize,
    #[serde(serialize_with = "ratio::serialize")]
    pub epsilon: Rational,
    #[serde(serialize_with = "ratio::serialize")]
    pub forward_bound: Rational,
    #[serde(serialize_with = "ratio::serialize")]
    pub backward_bound: Rational,
    pub forward_holds: bool,
    pub backward_holds: bool,
    pub degree_hypothesis: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extension {
    pub partition: Bipartition,
    pub stats: CutStats,
    /// Index of the winning restart.
    pub restart: usize,
    pub verdict: ExtensionVerdict,
}

/// Extends `X₁ ⊆ V₁`, `X₂ ⊆ V₂` to all of `V(D)`: best of `restarts` random
/// placements of `Y = V ∖ (X₁ ∪ X₂)`, each followed by local search with `X`
/// locked.
pub fn extend_partition(d: &Digraph, x1: &VertexSet, x2: &VertexSet, cfg: &ExtendConfig) -> Result<Extension> {
    let n = d.n();
    if x1.universe() != n || x2.universe() != n {
        return Err(Error::NotAPartition(format!("X₁, X₂ must range over {n} vertices")));
    }
    if !x1.is_disjoint(x2) {
        return Err(Error::NotAPartition("X₁ and X₂ intersect".into()));
    }
    let epsilon = ratio::from_f64(cfg.epsilon)
        .ok_or_else(|| Error::InvalidParameter(format!("ε = {} is not finite", cfg.epsilon)))?;

    let fixed: Vec<Option<Side>> = (0..n)
        .map(|v| {
            if x1.contains(v) {
                Some(Side::One)
            } else if x2.contains(v) {
                Some(Side::Two)
            } else {
                None
            }
        })
        .collect();
    let (partition, stats, restart) = best_of_restarts(d, &fixed, cfg.restarts, cfg.seed, true)?;

    let y = x1.union(x2).complement();
    let e = |s: &VertexSet, t: &VertexSet| int(d.arc_count_unchecked(s, t) as u64);
    let (gy, _) = d.induced(&y)?;
    let gy = gy.underlying_graph();
    let tau = count_tight(&gy).tau;
    let common = e(&y, &y) / int(4) + frac(n as u64 - tau as u64, 8u64) - &epsilon * int(n as u64);
    let forward_bound = e(x1, x2) + (e(x1, &y) + e(&y, x2)) / int(2) + &common;
    let backward_bound = e(x2, x1) + (e(x2, &y) + e(&y, x1)) / int(2) + &common;

    let g = d.underlying_graph();
    let degree_hypothesis = cfg.degree_threshold.map(|t| y.iter().all(|v| g.degree(v) <= t));
    let verdict = ExtensionVerdict {
        tau,
        forward_holds: int(stats.e12 as u64) >= forward_bound,
        backward_holds: int(stats.e21 as u64) >= backward_bound,
        epsilon,
        forward_bound,
        backward_bound,
        degree_hypothesis,
    };
    Ok(Extension { partition, stats, restart, verdict })
}
