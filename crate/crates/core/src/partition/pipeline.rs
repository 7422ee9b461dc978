//! The staged partitioning pipeline.
//!
//! Stages, in order:
//!
//! 1. split off the high-degree set `X` (degree at least `n^{3/4}` by default)
//!    and delete the arcs inside it;
//! 2. balance `X = X₁ ∪ X₂` by minimising the gap `|θ|`;
//! 3. extend `X₁, X₂` over `Y` by randomized restarts and local search;
//! 4. evaluate the case analysis (bounds on `θ`, `m₂`, the tight components of
//!    order 1 and 3 in `G[Y]`, a rounding partition around them, `m₁`, the huge
//!    vertices, `α`, `ρ`, `τ`, `β`), recording every inequality on the instance;
//! 5. return the best of all candidate partitions built along the way.
//!
//! The case analysis only pins down which candidate must win for very large
//! instances; at small sizes every candidate is built and the best is kept.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::dense::{dense_partition, DenseHypothesis};
use super::extend::{extend_partition, ExtendConfig, ExtensionVerdict};
use super::gap::{is_forward, minimize_gap, surplus, GapPartition};
use super::local::{best_of_restarts, local_improve, LocalObjective};
use super::rounding::{azuma_tail, TailCertificate};
use super::target_bound;
use crate::digraph::{Bipartition, CutStats, Digraph, Side, VertexSet};
use crate::error::{Error, Result};
use crate::ratio::{self, frac, int, Exact, Rational};
use crate::rng;
use crate::tightness::{count_tight, lee_bound, weighted_profile_bound, DegreeProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeThreshold {
    /// `d(v) ≥ n^{3/4}`, compared exactly as `d(v)⁴ ≥ n³`.
    NPow34,
    Absolute(usize),
}

impl DegreeThreshold {
    fn admits(self, degree: usize, n: usize) -> bool {
        match self {
            DegreeThreshold::NPow34 => (degree as u128).pow(4) >= (n as u128).pow(3),
            DegreeThreshold::Absolute(t) => degree >= t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    /// Degree parameter of the target bound; defaults to `max(δ⁰(D), 1)`.
    pub d: Option<usize>,
    pub threshold: DegreeThreshold,
    /// Restarts of the extension and dense candidates.
    pub restarts: usize,
    pub rounding_restarts: usize,
    pub epsilon: f64,
    pub gap_exhaustive_limit: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            d: None,
            threshold: DegreeThreshold::NPow34,
            restarts: 64,
            rounding_restarts: 16,
            epsilon: 0.05,
            gap_exhaustive_limit: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurplusEntry {
    pub vertex: usize,
    pub s_plus: i64,
    pub s_minus: i64,
    pub s: i64,
}

/// The named quantities of the case analysis, all measured on the digraph
/// with the arcs inside `X` removed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineState {
    pub d: usize,
    pub n: usize,
    pub original_m: usize,
    pub dropped_arcs: usize,
    pub m: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub n_prime: usize,
    /// `e(X,Y) + e(Y,X)`
    pub m1: usize,
    /// `e(Y)`
    pub m2: usize,
    pub gap: GapPartition,
    pub tau: usize,
    pub a1: Vec<usize>,
    pub a3: Vec<usize>,
    pub surplus: Vec<SurplusEntry>,
    pub forward: Vec<usize>,
    pub huge: Vec<usize>,
    pub alpha: usize,
    /// Degree sum over the non-huge vertices of `X`.
    pub rho: usize,
    /// `m₁/(d·n′)`
    #[serde(serialize_with = "ratio::serialize_opt")]
    pub beta: Option<Rational>,
}

impl PipelineState {
    /// `m = m₁ + m₂` and `m₁ ≥ αθ + ρ`.
    pub fn bookkeeping_ok(&self) -> bool {
        let lhs = self.m1 as i128;
        let rhs = self.alpha as i128 * self.gap.theta as i128 + self.rho as i128;
        self.m == self.m1 + self.m2 && lhs >= rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Preamble,
    HighDegreeSplit,
    GapBalance,
    Extension,
    ThetaAndM2,
    SmallTightComponents,
    RandomRounding,
    M1Bound,
    HugeVertices,
    TauRefinement,
    AlphaCases,
    Selection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "==")]
    Eq,
}

impl Relation {
    fn eval(self, a: &Rational, b: &Rational) -> bool {
        match self {
            Relation::Le => a <= b,
            Relation::Lt => a < b,
            Relation::Ge => a >= b,
            Relation::Gt => a > b,
            Relation::Eq => a == b,
        }
    }
}

/// One inequality evaluated on the instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub lhs: Exact,
    pub relation: Relation,
    pub rhs: Exact,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateSummary {
    pub name: String,
    pub e12: usize,
    pub e21: usize,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub stage: Stage,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub candidates: Vec<CandidateSummary>,
}

impl TraceStep {
    fn new(stage: Stage) -> Self {
        TraceStep { stage, checks: Vec::new(), notes: Vec::new(), candidates: Vec::new() }
    }

    fn check(&mut self, name: &str, statement: &str, lhs: Rational, relation: Relation, rhs: Rational) -> bool {
        let holds = relation.eval(&lhs, &rhs);
        self.checks.push(Check {
            name: name.to_string(),
            statement: statement.to_string(),
            lhs: Exact::from(&lhs),
            relation,
            rhs: Exact::from(&rhs),
            holds,
        });
        holds
    }

    /// Looks up a check by name.
    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineOutcome {
    pub partition: Bipartition,
    /// Cut statistics on the input digraph.
    pub stats: CutStats,
    pub chosen: String,
    #[serde(serialize_with = "ratio::serialize")]
    pub target: Rational,
    pub meets_target: bool,
    pub candidates: Vec<CandidateSummary>,
    pub state: PipelineState,
    pub extension: ExtensionVerdict,
    pub rounding_tail: Option<TailCertificate>,
    pub dense_hypothesis: DenseHypothesis,
    pub trace: Vec<TraceStep>,
}

impl PipelineOutcome {
    pub fn step(&self, stage: Stage) -> Option<&TraceStep> {
        self.trace.iter().find(|s| s.stage == stage)
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.trace.iter().flat_map(|s| &s.checks)
    }
}

struct Candidates<'a> {
    original: &'a Digraph,
    list: Vec<(String, Bipartition, CutStats)>,
}

impl Candidates<'_> {
    fn add(&mut self, step: &mut TraceStep, name: &str, p: Bipartition) {
        let c = self.original.cut_stats(&p).expect("partition covers all vertices");
        step.candidates.push(CandidateSummary { name: name.into(), e12: c.e12, e21: c.e21, value: c.value });
        self.list.push((name.into(), p, c));
    }
}

fn n_u(x: usize) -> Rational {
    int(x as u64)
}

fn approx(x: f64) -> Rational {
    ratio::from_f64(x).unwrap_or_else(Rational::zero)
}

/// Runs every stage on `original` and returns the best partition found, the
/// named quantities and a step-by-step trace.
pub fn proof_pipeline(original: &Digraph, seed: u64, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    let n = original.n();
    let m0 = original.m();
    let d = cfg.d.unwrap_or_else(|| original.min_semidegree().max(1));
    if d == 0 {
        return Err(Error::InvalidParameter("pipeline needs d ≥ 1".into()));
    }
    if !(cfg.epsilon.is_finite() && cfg.epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("ε must be positive, got {}", cfg.epsilon)));
    }
    let dq = n_u(d);
    let k = n_u(2 * d - 1); // 2d − 1
    let target = target_bound(d, m0)?;
    let mut trace = Vec::new();
    let mut cands = Candidates { original, list: Vec::new() };

    // Preamble: density cases handled by plain randomized partitioning.
    let mut st = TraceStep::new(Stage::Preamble);
    st.check("min_semidegree_at_least_d", "δ⁰(D) ≥ d", n_u(original.min_semidegree()), Relation::Ge, dq.clone());
    let sparse = st.check("m_at_most_128k2n", "m ≤ 128(2d−1)²n", n_u(m0), Relation::Le, int(128) * &k * &k * n_u(n));
    let spiky = st.check(
        "max_degree_at_least_m_over_64k2",
        "Δ ≥ m/(64(2d−1)²)",
        n_u(original.max_degree()),
        Relation::Ge,
        n_u(m0) / (int(64) * &k * &k),
    );
    let dense = dense_partition(original, 1.0 / (8.0 * d as f64 - 4.0), cfg.restarts, rng::derive(seed, 3))?;
    st.check(
        "dense_candidate_reaches_quarter_minus_eps",
        "value(dense) ≥ (1/4 − 1/(8d−4))m",
        n_u(dense.stats.value),
        Relation::Ge,
        (frac(1, 4) - frac(1, 8 * d as u64 - 4)) * n_u(m0),
    );
    if !(sparse && spiky) {
        st.notes.push("density case: the dense candidate alone carries the bound".into());
    }
    cands.add(&mut st, "dense", dense.partition.clone());
    trace.push(st);

    // High-degree split.
    let mut st = TraceStep::new(Stage::HighDegreeSplit);
    let x = VertexSet::from_vertices(n, (0..n).filter(|&v| cfg.threshold.admits(original.degree(v), n)))?;
    let y = x.complement();
    let dg = original.without_arcs_inside(&x)?;
    let m = dg.m();
    let n_prime = y.len();
    let m1 = dg.arc_count(&x, &y)? + dg.arc_count(&y, &x)?;
    let m2 = dg.arcs_within(&y)?;
    st.notes.push(format!("threshold {:?}: |X| = {}, {} arcs inside X dropped", cfg.threshold, x.len(), m0 - m));
    st.check(
        "x_size_at_most_256k2_n_quarter",
        "|X| ≤ 256(2d−1)²n^{1/4}",
        n_u(x.len()),
        Relation::Le,
        int(256) * &k * &k * approx((n as f64).powf(0.25)),
    );
    st.check("m_equals_m1_plus_m2", "m = m₁ + m₂", n_u(m), Relation::Eq, n_u(m1 + m2));
    trace.push(st);

    // Gap balancing.
    let mut st = TraceStep::new(Stage::GapBalance);
    let gp = minimize_gap(&dg, &x, &y, None, cfg.gap_exhaustive_limit)?;
    let theta = gp.theta;
    let thq = int(theta);
    st.check("gap_at_most_y", "θ ≤ |Y|", thq.clone(), Relation::Le, n_u(n_prime));
    st.notes.push(format!("X₁ = {:?}, X₂ = {:?}", gp.x1, gp.x2));
    trace.push(st);

    // Extension over Y.
    let mut st = TraceStep::new(Stage::Extension);
    let ext_cfg = ExtendConfig {
        restarts: cfg.restarts,
        seed: rng::derive(seed, 1),
        epsilon: cfg.epsilon,
        degree_threshold: None,
    };
    let ext = extend_partition(&dg, &gp.x1_set(n), &gp.x2_set(n), &ext_cfg)?;
    let tau = ext.verdict.tau;
    let tq = n_u(tau);
    let eps = ext.verdict.epsilon.clone();
    st.check(
        "extension_forward_bound",
        "e(V₁,V₂) ≥ e(X₁,X₂) + (e(X₁,Y)+e(Y,X₂))/2 + e(Y)/4 + (n−τ)/8 − εn",
        n_u(ext.stats.e12),
        Relation::Ge,
        ext.verdict.forward_bound.clone(),
    );
    st.check(
        "extension_backward_bound",
        "e(V₂,V₁) ≥ e(X₂,X₁) + (e(X₂,Y)+e(Y,X₁))/2 + e(Y)/4 + (n−τ)/8 − εn",
        n_u(ext.stats.e21),
        Relation::Ge,
        ext.verdict.backward_bound.clone(),
    );
    st.check(
        "extension_value_at_least_balanced_bound",
        "min(e(W₁,W₂), e(W₂,W₁)) ≥ (m−θ)/4 + (n−τ)/8 − εn",
        n_u(ext.stats.value),
        Relation::Ge,
        (n_u(m) - &thq) / int(4) + (n_u(n) - &tq) / int(8) - &eps * n_u(n),
    );
    let sufficient = st.check(
        "sufficient_condition",
        "n/2 + m/(2d−1) ≥ θ + τ/2",
        n_u(n) / int(2) + n_u(m) / &k,
        Relation::Ge,
        &thq + &tq / int(2),
    );
    if sufficient {
        st.notes.push("sufficient condition holds: the extension carries the bound".into());
    }
    cands.add(&mut st, "extension", ext.partition.clone());
    trace.push(st);

    // θ, m and m₂.
    let mut st = TraceStep::new(Stage::ThetaAndM2);
    st.check("theta_at_most_m_over_k", "θ ≤ m/(2d−1)", thq.clone(), Relation::Le, n_u(m) / &k);
    st.check("m_at_least_dn", "m ≥ dn", n_u(m), Relation::Ge, &dq * n_u(n));
    st.check("m_below_k_n_prime", "m < (2d−1)n′", n_u(m), Relation::Lt, &k * n_u(n_prime));
    st.check(
        "m2_at_most_(d+1)m_over_2k",
        "m₂ ≤ (d+1)m/(2(2d−1))",
        n_u(m2),
        Relation::Le,
        n_u((d + 1) * m) / (int(2) * &k),
    );
    let exy = dg.arc_count(&x, &y)?;
    let eyx = dg.arc_count(&y, &x)?;
    st.check(
        "xy_cut_at_least_d_n_prime_minus_m2",
        "min(e(X,Y), e(Y,X)) ≥ dn′ − m₂",
        n_u(exy.min(eyx)),
        Relation::Ge,
        &dq * n_u(n_prime) - n_u(m2),
    );
    cands.add(&mut st, "x_versus_y", Bipartition::from_set(&x));
    trace.push(st);

    // Tight components of order 1 and 3 in G[Y].
    let mut st = TraceStep::new(Stage::SmallTightComponents);
    let (dy, ymap) = dg.induced(&y)?;
    let gy = dy.underlying_graph();
    let report = count_tight(&gy);
    debug_assert_eq!(report.tau, tau);
    let a1: Vec<usize> = report.tight_vertices_of_order(1).iter().map(|&v| ymap[v]).collect();
    let a3: Vec<usize> = report.tight_vertices_of_order(3).iter().map(|&v| ymap[v]).collect();
    let a1s = VertexSet::from_vertices(n, a1.iter().copied())?;
    let a3s = VertexSet::from_vertices(n, a3.iter().copied())?;
    st.check(
        "a1_arcs_with_x_at_least_d_a1",
        "min(e(A₁,X), e(X,A₁)) ≥ d|A₁|",
        n_u(dg.arc_count(&a1s, &x)?.min(dg.arc_count(&x, &a1s)?)),
        Relation::Ge,
        &dq * n_u(a1.len()),
    );
    st.check(
        "a3_arcs_with_x_at_least_(d-2)_a3",
        "min(e(A₃,X), e(X,A₃)) ≥ (d−2)|A₃|",
        n_u(dg.arc_count(&a3s, &x)?.min(dg.arc_count(&x, &a3s)?)),
        Relation::Ge,
        (&dq - int(2)) * n_u(a3.len()),
    );
    st.notes.push(format!("τ = {tau}, |A₁| = {}, |A₃| = {}", a1.len(), a3.len()));
    trace.push(st);

    // Randomized rounding of D[Y] − (A₁ ∪ A₃) with X on side 2 and A₁ ∪ A₃ on side 1.
    let mut st = TraceStep::new(Stage::RandomRounding);
    let a13 = a1s.union(&a3s);
    let z_set = y.difference(&a13);
    let inner_m = dg.arcs_within(&z_set)?;
    let inner_deg: Vec<f64> = z_set
        .iter()
        .map(|v| {
            let o = dg.out_neighbors(v).iter().filter(|&&w| z_set.contains(w)).count();
            let i = dg.in_neighbors(v).iter().filter(|&&w| z_set.contains(w)).count();
            (o + i) as f64
        })
        .collect();
    let z = 2.0 * (n as f64).powf(0.375) * (inner_m as f64).sqrt();
    let rounding_tail = if inner_m > 0 { Some(azuma_tail(z, &inner_deg)?) } else { None };
    if let Some(t) = &rounding_tail {
        st.notes.push(format!("deviation z = {:.3}, Σc² = {}, tail bound {:.4}", t.z, t.sum_sq, t.bound));
    }
    let fixed: Vec<Option<Side>> = (0..n)
        .map(|v| {
            if x.contains(v) {
                Some(Side::Two)
            } else if a13.contains(v) {
                Some(Side::One)
            } else {
                None
            }
        })
        .collect();
    let (rounded, _, _) = best_of_restarts(&dg, &fixed, cfg.rounding_restarts, rng::derive(seed, 2), false)?;
    let u1 = rounded.part(Side::One).intersection(&z_set);
    let u2 = rounded.part(Side::Two).intersection(&z_set);
    let quarter_minus_z = n_u(inner_m) / int(4) - approx(z);
    st.check(
        "rounding_forward_deviation",
        "e(U₁,U₂) ≥ e(D″)/4 − z",
        n_u(dg.arc_count(&u1, &u2)?),
        Relation::Ge,
        quarter_minus_z.clone(),
    );
    st.check(
        "rounding_backward_deviation",
        "e(U₂,U₁) ≥ e(D″)/4 − z",
        n_u(dg.arc_count(&u2, &u1)?),
        Relation::Ge,
        quarter_minus_z,
    );
    st.check(
        "inner_arcs_at_least_m2_minus_2a3",
        "e(D″) ≥ m₂ − 2|A₃|",
        n_u(inner_m),
        Relation::Ge,
        n_u(m2) - int(2) * n_u(a3.len()),
    );
    st.check(
        "rounding_estimate_at_most_target",
        "m₂/4 + d|A₁| + (d−5/2)|A₃| ≤ (d−1)m/(2(2d−1))",
        n_u(m2) / int(4) + &dq * n_u(a1.len()) + (&dq - frac(5, 2)) * n_u(a3.len()),
        Relation::Le,
        n_u((d - 1) * m) / (int(2) * &k),
    );
    st.check(
        "tau_at_most_small_component_count",
        "τ ≤ |A₁| + |A₃|/3 + (n′−|A₁|−|A₃|)/5",
        tq.clone(),
        Relation::Le,
        n_u(a1.len()) + n_u(a3.len()) / int(3) + (n_u(n_prime) - n_u(a1.len()) - n_u(a3.len())) / int(5),
    );
    st.check(
        "m_below_12dk_n_prime_over_17d+5",
        "m < 12d(2d−1)n′/(17d+5)",
        n_u(m),
        Relation::Lt,
        int(12) * &dq * &k * n_u(n_prime) / n_u(17 * d + 5),
    );
    let locked = x.union(&a13);
    let improved = local_improve(&dg, &rounded, LocalObjective::MinBoth, &locked)?;
    cands.add(&mut st, "rounding", rounded);
    cands.add(&mut st, "rounding_improved", improved);
    trace.push(st);

    // m₁.
    let mut st = TraceStep::new(Stage::M1Bound);
    st.check(
        "m2_at_most_(11d+11)m_over_12k",
        "m₂ ≤ (11d+11)m/(12(2d−1))",
        n_u(m2),
        Relation::Le,
        n_u((11 * d + 11) * m) / (int(12) * &k),
    );
    st.check(
        "m1_below_(13d-23)m_over_12k",
        "m₁ < (13d−23)m/(12(2d−1))",
        n_u(m1),
        Relation::Lt,
        (int(13) * &dq - int(23)) * n_u(m) / (int(12) * &k),
    );
    trace.push(st);

    // Huge and forward vertices.
    let mut st = TraceStep::new(Stage::HugeVertices);
    let surplus_entries: Vec<SurplusEntry> = x
        .iter()
        .map(|v| {
            let sp = surplus(&dg, v);
            SurplusEntry { vertex: v, s_plus: sp, s_minus: -sp, s: sp.abs() }
        })
        .collect();
    let forward: Vec<usize> = x.iter().filter(|&v| is_forward(&dg, &gp, v)).collect();
    let huge: Vec<usize> = surplus_entries.iter().filter(|e| e.s >= theta).map(|e| e.vertex).collect();
    let alpha = huge.len();
    let rho: usize = x.iter().filter(|v| !huge.contains(v)).map(|v| dg.degree(v)).sum();
    let aq = n_u(alpha);
    let rq = n_u(rho);
    st.check(
        "forward_vertices_are_huge",
        "#{forward v : s(v) < θ} = 0",
        n_u(forward.iter().filter(|v| !huge.contains(v)).count()),
        Relation::Eq,
        int(0),
    );
    st.check(
        "m1_equals_degree_sum_of_x",
        "m₁ = Σ_{v∈X} d(v)",
        n_u(m1),
        Relation::Eq,
        n_u(x.iter().map(|v| dg.degree(v)).sum()),
    );
    st.check("m1_at_least_alpha_theta_plus_rho", "m₁ ≥ αθ + ρ", n_u(m1), Relation::Ge, &aq * &thq + &rq);
    st.check(
        "one_minus_alpha_over_2k_positive",
        "1 − α/(2(2d−1)) > 0",
        int(1) - &aq / (int(2) * &k),
        Relation::Gt,
        int(0),
    );
    st.check(
        "y_degree_sum_at_least_2d_n_prime",
        "m₁ + 2m₂ ≥ 2dn′",
        n_u(m1 + 2 * m2),
        Relation::Ge,
        int(2) * &dq * n_u(n_prime),
    );
    st.check(
        "m_at_least_half_(2dn'+alpha_theta+rho)",
        "m ≥ (2dn′ + αθ + ρ)/2",
        n_u(m),
        Relation::Ge,
        (int(2) * &dq * n_u(n_prime) + &aq * &thq + &rq) / int(2),
    );
    st.check(
        "alpha_below_2d(7d-17)_over_17d+5",
        "α < 2d(7d−17)/(17d+5)",
        aq.clone(),
        Relation::Lt,
        int(2) * &dq * (int(7) * &dq - int(17)) / n_u(17 * d + 5),
    );
    st.notes.push(format!("α = {alpha}, ρ = {rho}, forward = {forward:?}, huge = {huge:?}"));
    trace.push(st);

    // τ against the degree profile of G[Y].
    let mut st = TraceStep::new(Stage::TauRefinement);
    let profile = DegreeProfile::of_graph(&gy);
    st.check("tau_at_most_lee_bound", "τ ≤ d₀/1 + d₂/3 + d₄/5 + ⋯", tq.clone(), Relation::Le, lee_bound(&profile));
    if d > alpha {
        let half_rho = &rq / int(2);
        let gap_d = d - alpha;
        let weighted: u64 = (0..gap_d).map(|i| (gap_d - i) as u64 * profile.get(i)).sum();
        st.check(
            "low_degree_weight_at_most_half_rho",
            "(d−α)d₀ + (d−α−1)d₁ + ⋯ + d_{d−α−1} ≤ ρ/2",
            int(weighted),
            Relation::Le,
            half_rho.clone(),
        );
        let hb = weighted_profile_bound(n_prime as u64, &half_rho, alpha as u64, d as u64, &profile)?;
        st.check(
            "tau_at_most_(n'+rho/2)_over_(d-alpha+1)",
            "τ ≤ (n′ + ρ/2)/(d−α+1)",
            tq.clone(),
            Relation::Le,
            hb.bound,
        );
    } else {
        st.notes.push(format!("α = {alpha} ≥ d = {d}: profile bound not applicable"));
    }
    trace.push(st);

    // α = 1 versus α ≥ 2.
    let mut st = TraceStep::new(Stage::AlphaCases);
    let beta = (n_prime > 0).then(|| n_u(m1) / (&dq * n_u(n_prime)));
    if let Some(b) = &beta {
        st.check(
            "beta_at_most_(13d-23)_over_(17d+5)",
            "β ≤ (13d−23)/(17d+5)",
            b.clone(),
            Relation::Le,
            (int(13) * &dq - int(23)) / n_u(17 * d + 5),
        );
        st.check(
            "(1-beta)d_minus_3/2_positive",
            "(1−β)d − 3/2 > 0",
            (int(1) - b) * &dq - frac(3, 2),
            Relation::Gt,
            int(0),
        );
    }
    match alpha {
        0 => st.notes.push("no huge vertices".into()),
        1 => {
            st.notes.push("case α = 1".into());
            st.check(
                "alpha_one_margin_positive",
                "(1/(2d−1) − 1/(2d))n′ > 0",
                (int(1) / &k - frac(1, 2 * d as u64)) * n_u(n_prime),
                Relation::Gt,
                int(0),
            );
        }
        a => {
            st.notes.push(format!("case α = {a} ≥ 2"));
            if d + 1 > a {
                st.check(
                    "alpha_coefficient_nonnegative",
                    "1 − α/(4(d−α+1)) ≥ 0",
                    int(1) - &aq / (int(4) * n_u(d + 1 - a)),
                    Relation::Ge,
                    int(0),
                );
            }
        }
    }
    trace.push(st);

    // Selection on the input digraph.
    let mut st = TraceStep::new(Stage::Selection);
    let mut best = 0;
    for (i, c) in cands.list.iter().enumerate() {
        if c.2.value > cands.list[best].2.value {
            best = i;
        }
    }
    let (chosen, partition, stats) = cands.list[best].clone();
    let meets_target = st.check(
        "value_at_least_target",
        "min(e(V₁,V₂), e(V₂,V₁)) ≥ (d−1)m/(2(2d−1))",
        n_u(stats.value),
        Relation::Ge,
        target.clone(),
    );
    st.notes.push(format!("chosen candidate: {chosen}"));
    trace.push(st);

    let candidates = cands
        .list
        .iter()
        .map(|(name, _, c)| CandidateSummary { name: name.clone(), e12: c.e12, e21: c.e21, value: c.value })
        .collect();
    let state = PipelineState {
        d,
        n,
        original_m: m0,
        dropped_arcs: m0 - m,
        m,
        x: x.to_vec(),
        y: y.to_vec(),
        n_prime,
        m1,
        m2,
        gap: gp,
        tau,
        a1,
        a3,
        surplus: surplus_entries,
        forward,
        huge,
        alpha,
        rho,
        beta,
    };
    Ok(PipelineOutcome {
        partition,
        stats,
        chosen,
        target,
        meets_target,
        candidates,
        state,
        extension: ext.verdict,
        rounding_tail,
        dense_hypothesis: dense.hypothesis,
        trace,
    })
}
