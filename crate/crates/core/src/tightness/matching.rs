//! Tightness straight from the definition, by enumerating perfect matchings.

use crate::digraph::UGraph;
use crate::error::{Error, Result};

/// Components up to this order are enumerated; `K₁₁ − v` has 945 perfect
/// matchings, so the whole check stays in the microsecond range.
pub const DEFAULT_SIZE_LIMIT: usize = 12;

/// Decides whether the connected subgraph of `g` induced by `component` is
/// tight: for every vertex `v`, `T − v` has a perfect matching, and no perfect
/// matching of `T − v` has an edge with exactly one end adjacent to `v`.
pub fn is_tight_by_definition(g: &UGraph, component: &[usize], size_limit: usize) -> Result<bool> {
    if component.len() > size_limit.min(64) {
        return Err(Error::TooLarge { size: component.len(), limit: size_limit.min(64) });
    }
    if component.is_empty() {
        return Err(Error::InvalidParameter("empty component".into()));
    }
    let (t, _) = g.induced(component)?;
    if !t.is_connected() {
        return Err(Error::Disconnected);
    }
    let k = t.n();
    let adj: Vec<u64> = (0..k).map(|v| t.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };

    for v in 0..k {
        let rest = all & !(1 << v);
        if rest.count_ones() % 2 == 1 {
            return Ok(false);
        }
        let outcome = explore(&adj, rest, adj[v], false);
        if !outcome.any || outcome.violating {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Default)]
struct Outcome {
    /// some perfect matching exists
    any: bool,
    /// some perfect matching contains an edge with exactly one end in `near`
    violating: bool,
}

fn explore(adj: &[u64], rest: u64, near: u64, violated: bool) -> Outcome {
    if rest == 0 {
        return Outcome { any: true, violating: violated };
    }
    let a = rest.trailing_zeros() as usize;
    let rest = rest & !(1 << a);
    let mut cand = adj[a] & rest;
    let mut acc = Outcome::default();
    while cand != 0 {
        let b = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let crosses = (near >> a & 1) != (near >> b & 1);
        let sub = explore(adj, rest & !(1 << b), near, violated || crosses);
        acc.any |= sub.any;
        if sub.violating {
            acc.violating = true;
            return acc;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(k: usize) -> UGraph {
        UGraph::from_edges(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(is_tight_by_definition(&complete(1), &[0], 12).unwrap());
        assert!(!is_tight_by_definition(&complete(2), &[0, 1], 12).unwrap());
        assert!(is_tight_by_definition(&complete(3), &[0, 1, 2], 12).unwrap());
        assert!(is_tight_by_definition(&complete(5), &[0, 1, 2, 3, 4], 12).unwrap());
        assert!(!is_tight_by_definition(&complete(4), &[0, 1, 2, 3], 12).unwrap());
    }

    #[test]
    fn c5_is_not_tight() {
        // C5 − 0 is the path 1-2-3-4; its only perfect matching uses 12,
        // and 1 is adjacent to 0 while 2 is not.
        let c5 = UGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(!is_tight_by_definition(&c5, &[0, 1, 2, 3, 4], 12).unwrap());
    }

    #[test]
    fn errors() {
        let g = UGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(is_tight_by_definition(&g, &[0, 1, 2, 3], 12), Err(Error::Disconnected));
        assert_eq!(
            is_tight_by_definition(&complete(13), &(0..13).collect::<Vec<_>>(), 12),
            Err(Error::TooLarge { size: 13, limit: 12 })
        );
    }
}
