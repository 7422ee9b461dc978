use serde::Serialize;

use super::local::best_of_restarts;
use crate::digraph::{Bipartition, CutStats, Digraph};
use crate::error::{Error, Result};
use crate::ratio::{self, int, Rational};

/// Which density hypothesis holds: `m ≥ 8n/ε²` or `Δ ≤ ε²m/4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DenseHypothesis {
    ManyArcs,
    LowMaxDegree,
    Both,
    Neither,
}

impl DenseHypothesis {
    pub fn holds(self) -> bool {
        self != DenseHypothesis::Neither
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseOutcome {
    pub partition: Bipartition,
    pub stats: CutStats,
    pub hypothesis: DenseHypothesis,
    /// `m/4 − εm`
    #[serde(serialize_with = "ratio::serialize")]
    pub bound: Rational,
    /// `value ≥ bound`, reported only when a hypothesis holds. `Some(false)`
    /// is a counterexample to the dense-case guarantee.
    pub bound_met: Option<bool>,
}

pub fn dense_hypothesis(d: &Digraph, epsilon: &Rational) -> DenseHypothesis {
    let (n, m, delta) = (int(d.n() as u64), int(d.m() as u64), int(d.max_degree() as u64));
    let eps2 = epsilon * epsilon;
    let many = &m * &eps2 >= int(8) * n;
    let low = int(4) * delta <= eps2 * m;
    match (many, low) {
        (true, true) => DenseHypothesis::Both,
        (true, false) => DenseHypothesis::ManyArcs,
        (false, true) => DenseHypothesis::LowMaxDegree,
        (false, false) => DenseHypothesis::Neither,
    }
}

/// Best-of-restarts random partition plus local search, checked against
/// `m/4 − εm` whenever one of the density hypotheses holds.
pub fn dense_partition(d: &Digraph, epsilon: f64, restarts: usize, seed: u64) -> Result<DenseOutcome> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("ε must be positive, got {epsilon}")));
    }
    let eps = ratio::from_f64(epsilon).expect("finite");
    let hypothesis = dense_hypothesis(d, &eps);
    let (partition, stats, _) = best_of_restarts(d, &vec![None; d.n()], restarts, seed, true)?;
    let m = int(d.m() as u64);
    let bound = &m / int(4) - eps * m;
    let bound_met = hypothesis.holds().then(|| int(stats.value as u64) >= bound);
    Ok(DenseOutcome { partition, stats, hypothesis, bound, bound_met })
}
