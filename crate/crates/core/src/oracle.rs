//! Exhaustive optimal cuts for small instances, and the Edwards-type bounds.
//!
//! The sweep fixes the last vertex in `V₂` and walks the remaining `2^{n−1}`
//! assignments in Gray-code order, so each step flips one vertex and updates
//! both directed cut counts with a few popcounts. The top bits are split off
//! into independent chunks that run in parallel and merge deterministically.

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{Bipartition, Digraph, UGraph};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_LIMIT: usize = 24;
const MAX_SUPPORTED: usize = 63;
const CHUNK_BITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `max e(V₁, V₂)`
    MaxDicut,
    /// `max min{e(V₁, V₂), e(V₂, V₁)}`
    MaxMinDicut,
    /// undirected max cut
    MaxCut,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub objective: Objective,
    pub best_value: u64,
    pub witness: Bipartition,
    /// Number of side assignments visited (`2^{n−1}`, or 1 when `n = 0`).
    pub explored: u64,
}

pub fn max_dicut_exact(d: &Digraph, limit: usize) -> Result<OracleResult> {
    let (out, inn) = masks(d);
    sweep(d.n(), &out, &inn, limit, Objective::MaxDicut)
}

pub fn max_min_dicut_exact(d: &Digraph, limit: usize) -> Result<OracleResult> {
    let (out, inn) = masks(d);
    sweep(d.n(), &out, &inn, limit, Objective::MaxMinDicut)
}

pub fn max_cut_exact(g: &UGraph, limit: usize) -> Result<OracleResult> {
    let adj: Vec<u64> = (0..g.n()).map(|v| to_mask(g.neighbors(v))).collect();
    // with out = in = adj, e(V₁,V₂) counts every cut edge once
    sweep(g.n(), &adj, &adj, limit, Objective::MaxCut)
}

/// `m/2 + (√(2m + 1/4) − 1/2)/4`
pub fn edwards_bound(m: usize) -> f64 {
    let m = m as f64;
    m / 2.0 + ((2.0 * m + 0.25).sqrt() - 0.5) / 4.0
}

/// `m/4 + (√(2m + 1/4) − 1/2)/8`
pub fn directed_edwards_bound(m: usize) -> f64 {
    let m = m as f64;
    m / 4.0 + ((2.0 * m + 0.25).sqrt() - 0.5) / 8.0
}

fn to_mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

fn masks(d: &Digraph) -> (Vec<u64>, Vec<u64>) {
    if d.n() > MAX_SUPPORTED {
        return (Vec::new(), Vec::new());
    }
    let out = (0..d.n()).map(|v| to_mask(d.out_neighbors(v))).collect();
    let inn = (0..d.n()).map(|v| to_mask(d.in_neighbors(v))).collect();
    (out, inn)
}

/// Best `(score, side-1 mask, swap)` in one chunk, first occurrence kept.
type ChunkBest = (u64, u64, bool);

fn sweep(n: usize, out: &[u64], inn: &[u64], limit: usize, objective: Objective) -> Result<OracleResult> {
    let limit = limit.min(MAX_SUPPORTED);
    if n > limit {
        return Err(Error::TooLarge { size: n, limit });
    }
    if n == 0 {
        return Ok(OracleResult { objective, best_value: 0, witness: Bipartition::new(vec![]), explored: 1 });
    }
    let free = n - 1;
    let high = free.min(CHUNK_BITS);
    let low = free - high;
    let universe = (1u64 << n) - 1;

    let score = |e12: u64, e21: u64| -> (u64, bool) {
        match objective {
            Objective::MaxDicut if e21 > e12 => (e21, true),
            Objective::MaxDicut | Objective::MaxCut => (e12, false),
            Objective::MaxMinDicut => (e12.min(e21), false),
        }
    };

    let chunk = |c: u64| -> ChunkBest {
        let mut s = c << low;
        let (mut e12, mut e21) = (0u64, 0u64);
        for u in 0..n {
            if s >> u & 1 == 1 {
                e12 += (out[u] & !s & universe).count_ones() as u64;
                e21 += (inn[u] & !s & universe).count_ones() as u64;
            }
        }
        let (v0, sw0) = score(e12, e21);
        let mut best = (v0, s, sw0);
        for i in 1..(1u64 << low) {
            let v = i.trailing_zeros() as usize;
            let bit = 1u64 << v;
            if s & bit == 0 {
                let outside = !s & universe;
                e12 = e12 + (out[v] & outside).count_ones() as u64 - (inn[v] & s).count_ones() as u64;
                e21 = e21 + (inn[v] & outside).count_ones() as u64 - (out[v] & s).count_ones() as u64;
                s |= bit;
            } else {
                s &= !bit;
                let outside = !s & universe;
                e12 = e12 + (inn[v] & s).count_ones() as u64 - (out[v] & outside).count_ones() as u64;
                e21 = e21 + (out[v] & s).count_ones() as u64 - (inn[v] & outside).count_ones() as u64;
            }
            let (val, sw) = score(e12, e21);
            if val > best.0 {
                best = (val, s, sw);
            }
        }
        best
    };

    let results: Vec<ChunkBest> = (0..1u64 << high).into_par_iter().map(chunk).collect();
    let mut best = results[0];
    for &r in &results[1..] {
        if r.0 > best.0 {
            best = r;
        }
    }
    let (best_value, mask, swap) = best;
    let mut witness = Bipartition::from_mask(n, mask);
    if swap {
        witness = witness.swapped();
    }
    Ok(OracleResult { objective, best_value, witness, explored: 1u64 << free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Side;

    fn tournament(n: usize) -> Digraph {
        let h = (n - 1) / 2;
        Digraph::from_arcs(n, (0..n).flat_map(|i| (1..=h).map(move |k| (i, (i + k) % n)))).unwrap()
    }

    fn complete(n: usize) -> UGraph {
        UGraph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// Direct evaluation over all 2^n labelled bipartitions.
    fn brute(d: &Digraph, f: impl Fn(usize, usize) -> usize) -> usize {
        (0..1u64 << d.n())
            .map(|mask| {
                let c = d.cut_stats(&Bipartition::from_mask(d.n(), mask)).unwrap();
                f(c.e12, c.e21)
            })
            .max()
            .unwrap()
    }

    #[test]
    fn small_examples() {
        let c3 = tournament(3);
        assert_eq!(max_dicut_exact(&c3, 24).unwrap().best_value, 1);
        assert_eq!(max_min_dicut_exact(&c3, 24).unwrap().best_value, 1);
        assert_eq!(max_dicut_exact(&tournament(5), 24).unwrap().best_value, 3);
        let arc = Digraph::from_arcs(2, [(1, 0)]).unwrap();
        let r = max_dicut_exact(&arc, 24).unwrap();
        assert_eq!(r.best_value, 1);
        assert_eq!(r.witness.side(1), Side::One);
        assert_eq!(max_min_dicut_exact(&Digraph::empty(4), 24).unwrap().best_value, 0);
    }

    #[test]
    fn max_cut_examples() {
        assert_eq!(max_cut_exact(&complete(5), 24).unwrap().best_value, 6);
        let k33 = UGraph::from_edges(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
        assert_eq!(max_cut_exact(&k33, 24).unwrap().best_value, 9);
        assert_eq!(max_cut_exact(&UGraph::empty(5), 24).unwrap().best_value, 0);
    }

    #[test]
    fn bounds() {
        assert_eq!(edwards_bound(0), 0.0);
        assert_eq!(directed_edwards_bound(0), 0.0);
        assert!((edwards_bound(10) - 6.0).abs() < 1e-12);
        assert!((directed_edwards_bound(21) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn limit_enforced() {
        assert_eq!(max_dicut_exact(&Digraph::empty(10), 8), Err(Error::TooLarge { size: 10, limit: 8 }));
    }

    #[test]
    fn matches_brute_force_and_witnesses_are_valid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=10 {
            for _ in 0..5 {
                let arcs: Vec<_> = (0..n)
                    .flat_map(|u| (0..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| u != v)
                    .filter(|_| rng.gen_bool(0.3))
                    .collect();
                let d = Digraph::from_arcs(n, arcs).unwrap();
                let dc = max_dicut_exact(&d, 24).unwrap();
                let mm = max_min_dicut_exact(&d, 24).unwrap();
                assert_eq!(dc.best_value as usize, brute(&d, |a, _| a));
                assert_eq!(mm.best_value as usize, brute(&d, |a, b| a.min(b)));
                assert_eq!(d.cut_stats(&dc.witness).unwrap().e12 as u64, dc.best_value);
                assert_eq!(d.cut_stats(&mm.witness).unwrap().value as u64, mm.best_value);
                assert!(mm.best_value <= dc.best_value);
                assert_eq!(mm.explored, 1 << (n - 1));
            }
        }
    }
}
