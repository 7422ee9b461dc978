use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rounding::random_bipartition_with;
use crate::digraph::{Bipartition, CutStats, Digraph, Side, VertexSet};
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalObjective {
    /// `min(e12, e21)`, ties broken by `e12 + e21`.
    MinBoth,
    E12Only,
}

impl LocalObjective {
    fn key(self, e12: i64, e21: i64) -> (i64, i64) {
        match self {
            LocalObjective::MinBoth => (e12.min(e21), e12 + e21),
            LocalObjective::E12Only => (e12, 0),
        }
    }
}

/// First-improvement hill climbing over single flips of unlocked vertices,
/// scanning in index order until a full pass changes nothing.
pub fn local_improve(
    d: &Digraph,
    p: &Bipartition,
    objective: LocalObjective,
    locked: &VertexSet,
) -> Result<Bipartition> {
    let n = d.n();
    if p.len() != n {
        return Err(Error::LabelCount { expected: n, got: p.len() });
    }
    if locked.universe() != n {
        return Err(Error::LabelCount { expected: n, got: locked.universe() });
    }
    let mut part = p.clone();
    // [out to V₁, out to V₂, in from V₁, in from V₂]
    let mut cnt = vec![[0i64; 4]; n];
    let (mut e12, mut e21) = (0i64, 0i64);
    for (u, v) in d.arcs() {
        let (su, sv) = (part.side(u).index(), part.side(v).index());
        cnt[u][sv] += 1;
        cnt[v][2 + su] += 1;
        match (su, sv) {
            (0, 1) => e12 += 1,
            (1, 0) => e21 += 1,
            _ => {}
        }
    }

    loop {
        let mut improved = false;
        for v in 0..n {
            if locked.contains(v) {
                continue;
            }
            let [o1, o2, i1, i2] = cnt[v];
            let from = part.side(v);
            let (n12, n21) = match from {
                Side::One => (e12 - o2 + i1, e21 - i2 + o1),
                Side::Two => (e12 - i1 + o2, e21 - o1 + i2),
            };
            if objective.key(n12, n21) <= objective.key(e12, e21) {
                continue;
            }
            let (a, b) = (from.index(), from.other().index());
            for &w in d.out_neighbors(v) {
                cnt[w][2 + a] -= 1;
                cnt[w][2 + b] += 1;
            }
            for &u in d.in_neighbors(v) {
                cnt[u][a] -= 1;
                cnt[u][b] += 1;
            }
            part.flip(v);
            e12 = n12;
            e21 = n21;
            improved = true;
        }
        if !improved {
            break;
        }
    }
    Ok(part)
}

/// Best of `restarts` independent random completions of `fixed`, each
/// optionally followed by [`local_improve`] with the fixed vertices locked.
/// Candidates are ranked by `(min(e12,e21), e12+e21)`; ties go to the lowest
/// restart index. Restart `r` draws from stream `r` of `seed`.
pub fn best_of_restarts(
    d: &Digraph,
    fixed: &[Option<Side>],
    restarts: usize,
    seed: u64,
    improve: bool,
) -> Result<(Bipartition, CutStats, usize)> {
    if fixed.len() != d.n() {
        return Err(Error::LabelCount { expected: d.n(), got: fixed.len() });
    }
    let locked = VertexSet::from_vertices(d.n(), (0..d.n()).filter(|&v| fixed[v].is_some()))?;
    let runs: Vec<(Bipartition, CutStats)> = (0..restarts.max(1) as u64)
        .into_par_iter()
        .map(|r| {
            let p = random_bipartition_with(fixed, &mut rng::stream(seed, r));
            let p = if improve {
                local_improve(d, &p, LocalObjective::MinBoth, &locked).expect("sizes checked")
            } else {
                p
            };
            let c = d.cut_stats(&p).expect("sizes checked");
            (p, c)
        })
        .collect();
    let key = |c: &CutStats| (c.value, c.e12 + c.e21);
    let mut best = 0;
    for (i, (_, c)) in runs.iter().enumerate() {
        if key(c) > key(&runs[best].1) {
            best = i;
        }
    }
    let (p, c) = runs.into_iter().nth(best).expect("at least one restart");
    Ok((p, c, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_digraph, regular_tournament};
    use crate::oracle::max_min_dicut_exact;

    #[test]
    fn optimal_partition_unchanged_in_value() {
        let d = regular_tournament(3).unwrap();
        let p: Bipartition = "122".parse().unwrap();
        assert_eq!(d.cut_stats(&p).unwrap().value, 1);
        assert_eq!(max_min_dicut_exact(&d, 24).unwrap().best_value, 1);
        let q = local_improve(&d, &p, LocalObjective::MinBoth, &VertexSet::empty(3)).unwrap();
        assert_eq!(d.cut_stats(&q).unwrap().value, 1);
    }

    #[test]
    fn one_sided_start_gains() {
        for seed in 0..10 {
            let d = random_digraph(12, 0.2, seed).unwrap();
            if d.m() == 0 {
                continue;
            }
            let p = Bipartition::all(12, Side::One);
            let q = local_improve(&d, &p, LocalObjective::E12Only, &VertexSet::empty(12)).unwrap();
            assert!(d.cut_stats(&q).unwrap().e12 > 0);
        }
    }

    #[test]
    fn fully_locked_is_identity() {
        let d = random_digraph(10, 0.3, 2).unwrap();
        let p = Bipartition::from_mask(10, 0b1010011);
        let q = local_improve(&d, &p, LocalObjective::MinBoth, &VertexSet::full(10)).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn never_worse_and_locked_vertices_stay() {
        for seed in 0..40 {
            let d = random_digraph(20, 0.15, seed).unwrap();
            let p = Bipartition::from_mask(20, rng::derive(seed, 1));
            let locked = VertexSet::from_vertices(20, [0, 5, 7]).unwrap();
            for obj in [LocalObjective::MinBoth, LocalObjective::E12Only] {
                let q = local_improve(&d, &p, obj, &locked).unwrap();
                let (a, b) = (d.cut_stats(&p).unwrap(), d.cut_stats(&q).unwrap());
                match obj {
                    LocalObjective::MinBoth => assert!(b.value >= a.value),
                    LocalObjective::E12Only => assert!(b.e12 >= a.e12),
                }
                for v in locked.iter() {
                    assert_eq!(p.side(v), q.side(v));
                }
            }
        }
    }

    #[test]
    fn restarts_are_deterministic() {
        let d = random_digraph(25, 0.2, 3).unwrap();
        let fixed = vec![None; 25];
        let a = best_of_restarts(&d, &fixed, 8, 11, true).unwrap();
        let b = best_of_restarts(&d, &fixed, 8, 11, true).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.2, b.2);
    }
}
