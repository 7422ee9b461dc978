//! Exact bounds on the number of tight components.

use num_traits::Zero;
use serde::Serialize;

use crate::digraph::UGraph;
use crate::error::{Error, Result};
use crate::ratio::{self, frac, int, Rational};

/// `counts[i]` = number of vertices of degree `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub counts: Vec<u64>,
}

impl DegreeProfile {
    pub fn new(counts: Vec<u64>) -> Self {
        DegreeProfile { counts }
    }

    /// Profile over degrees `0..n`.
    pub fn of_graph(g: &UGraph) -> Self {
        let mut counts = vec![0; g.n()];
        for v in 0..g.n() {
            counts[g.degree(v)] += 1;
        }
        DegreeProfile { counts }
    }

    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    pub fn vertices(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ i·d_i`, twice the edge count for a graph profile.
    pub fn degree_sum(&self) -> u64 {
        self.counts.iter().enumerate().map(|(i, &c)| i as u64 * c).sum()
    }
}

/// `d₀/1 + d₂/3 + d₄/5 + ⋯`, an upper bound on the number of tight components.
pub fn lee_bound(profile: &DegreeProfile) -> Rational {
    profile
        .counts
        .iter()
        .enumerate()
        .filter(|(i, &c)| i % 2 == 0 && c > 0)
        .fold(Rational::zero(), |acc, (i, &c)| acc + frac(c, i as u64 + 1))
}

/// Result of the `(n + ρ)/(δ − α + 1)` bound on the even-degree sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedProfileBound {
    #[serde(serialize_with = "ratio::serialize")]
    pub bound: Rational,
    #[serde(serialize_with = "ratio::serialize")]
    pub even_sum: Rational,
    /// `Σ d_i ≤ n` and `(δ−α)d₀ + (δ−α−1)d₁ + ⋯ + d_{δ−α−1} ≤ ρ`
    pub hypotheses_hold: bool,
    /// `even_sum ≤ bound`, evaluated only under the hypotheses.
    pub satisfied: Option<bool>,
}

/// Evaluates `bound = (n + ρ)/(δ − α + 1)` and the hypotheses under which the
/// even-degree sum of `profile` is at most `bound`. `ρ` is rational because
/// callers pass halved arc counts.
pub fn weighted_profile_bound(
    n: u64,
    rho: &Rational,
    alpha: u64,
    delta: u64,
    profile: &DegreeProfile,
) -> Result<WeightedProfileBound> {
    if delta < alpha + 1 {
        return Err(Error::InvalidParameter(format!("need δ − α ≥ 1, got δ={delta}, α={alpha}")));
    }
    if rho < &Rational::zero() {
        return Err(Error::InvalidParameter("ρ must be nonnegative".into()));
    }
    let gap = delta - alpha;
    let bound = (int(n) + rho) / int(gap + 1);
    let weighted: u64 = (0..gap).map(|i| (gap - i) * profile.get(i as usize)).sum();
    let in_range = profile.counts.iter().all(|&c| c <= n);
    let hypotheses_hold = in_range && profile.vertices() <= n && &int(weighted) <= rho;
    let even_sum = lee_bound(profile);
    let satisfied = hypotheses_hold.then(|| even_sum <= bound);
    Ok(WeightedProfileBound { bound, even_sum, hypotheses_hold, satisfied })
}
