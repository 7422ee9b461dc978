use serde::Serialize;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};

/// A split `X = X₁ ∪ X₂` of the high-degree set together with its gap
/// `θ = (e(X₁,Y) + e(Y,X₂)) − (e(X₂,Y) + e(Y,X₁))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapPartition {
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub theta: i64,
}

impl GapPartition {
    pub fn x1_set(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, self.x1.iter().copied()).expect("in range")
    }

    pub fn x2_set(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, self.x2.iter().copied()).expect("in range")
    }
}

/// `s⁺(v) = d⁺(v) − d⁻(v)`.
pub fn surplus(d: &Digraph, v: usize) -> i64 {
    d.out_degree(v) as i64 - d.in_degree(v) as i64
}

/// The gap of `(x1, x2)` computed from arc counts against `Y = V ∖ (x1 ∪ x2)`.
pub fn gap(d: &Digraph, x1: &VertexSet, x2: &VertexSet) -> Result<i64> {
    let y = x1.union(x2).complement();
    let c = |s: &VertexSet, t: &VertexSet| d.arc_count(s, t).map(|x| x as i64);
    Ok(c(x1, &y)? + c(&y, x2)? - c(x2, &y)? - c(&y, x1)?)
}

/// A vertex is forward when its side makes its surplus push `θ` up.
pub fn is_forward(d: &Digraph, gp: &GapPartition, v: usize) -> bool {
    let s = surplus(d, v);
    (gp.x1.contains(&v) && s > 0) || (gp.x2.contains(&v) && s < 0)
}

/// Balances `X` against `Y` by single-vertex moves, lowest index first, until
/// no move lowers `|θ|`. When `|X| ≤ exhaustive_limit` the result is then
/// replaced by a global minimiser if one is strictly better. The returned
/// partition has `θ ≥ 0` (sides swapped if needed).
///
/// With no arcs inside `X`, every arc at `v ∈ X` goes to `Y`, so a move of `v`
/// shifts `θ` by `∓2s⁺(v)` and `|s⁺(v)| ≤ |Y|`; a local minimum with `θ > 0`
/// has a forward vertex `v` with `s(v) ≥ θ`, hence `θ ≤ |Y|`.
pub fn minimize_gap(
    d: &Digraph,
    x: &VertexSet,
    y: &VertexSet,
    init: Option<&GapPartition>,
    exhaustive_limit: usize,
) -> Result<GapPartition> {
    let n = d.n();
    if x.universe() != n || y.universe() != n {
        return Err(Error::NotAPartition(format!("vertex sets must range over {n} vertices")));
    }
    if !x.is_disjoint(y) || x.union(y).len() != n {
        return Err(Error::NotAPartition("X and Y must partition V(D)".into()));
    }
    let inside = d.arcs_within(x)?;
    if inside != 0 {
        return Err(Error::ArcsInsideX { arcs: inside });
    }

    let xs: Vec<usize> = x.to_vec();
    let s: Vec<i64> = xs.iter().map(|&v| surplus(d, v)).collect();
    // +1 for X₁, −1 for X₂
    let mut sign: Vec<i64> = match init {
        Some(gp) => {
            let x1 = VertexSet::from_vertices(n, gp.x1.iter().copied())?;
            let x2 = VertexSet::from_vertices(n, gp.x2.iter().copied())?;
            if !x1.is_disjoint(&x2) || &x1.union(&x2) != x {
                return Err(Error::NotAPartition("initial split must partition X".into()));
            }
            xs.iter().map(|&v| if x1.contains(v) { 1 } else { -1 }).collect()
        }
        None => {
            let mut acc = 0i64;
            s.iter()
                .map(|&si| {
                    let sg = if (acc + si).abs() <= (acc - si).abs() { 1 } else { -1 };
                    acc += sg * si;
                    sg
                })
                .collect()
        }
    };
    let mut theta: i64 = s.iter().zip(&sign).map(|(a, b)| a * b).sum();

    loop {
        let mut improved = false;
        for i in 0..xs.len() {
            let next = theta - 2 * sign[i] * s[i];
            if next.abs() < theta.abs() {
                theta = next;
                sign[i] = -sign[i];
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }

    if theta != 0 && xs.len() <= exhaustive_limit {
        let (best, best_sign) = exhaustive(&s);
        if best.abs() < theta.abs() {
            theta = best;
            sign = best_sign;
        }
    }

    if theta.unsigned_abs() as usize > y.len() {
        return Err(Error::GapUnresolved { theta, y: y.len(), x: xs.len() });
    }
    if theta < 0 {
        theta = -theta;
        sign.iter_mut().for_each(|g| *g = -*g);
    }
    let (mut x1, mut x2) = (Vec::new(), Vec::new());
    for (&v, &g) in xs.iter().zip(&sign) {
        if g > 0 {
            x1.push(v)
        } else {
            x2.push(v)
        }
    }
    Ok(GapPartition { x1, x2, theta })
}

/// Minimum of `|Σ ±s_i|`, first vertex pinned to `+`, Gray-code order.
fn exhaustive(s: &[i64]) -> (i64, Vec<i64>) {
    let k = s.len();
    let mut sign = vec![1i64; k];
    let mut theta: i64 = s.iter().sum();
    let mut best = (theta, 0u64);
    let mut code = 0u64;
    for i in 1..(1u64 << k.saturating_sub(1)) {
        let b = i.trailing_zeros() as usize + 1;
        code ^= 1 << b;
        theta -= 2 * sign[b] * s[b];
        sign[b] = -sign[b];
        if theta.abs() < best.0.abs() {
            best = (theta, code);
            if theta == 0 {
                break;
            }
        }
    }
    let signs = (0..k).map(|i| if best.1 >> i & 1 == 1 { -1 } else { 1 }).collect();
    (best.0, signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_digraph;

    fn split(n: usize, x: &[usize]) -> (VertexSet, VertexSet) {
        let x = VertexSet::from_vertices(n, x.iter().copied()).unwrap();
        let y = x.complement();
        (x, y)
    }

    #[test]
    fn empty_x_has_zero_gap() {
        let d = random_digraph(6, 0.4, 1).unwrap();
        let (x, y) = split(6, &[]);
        let g = minimize_gap(&d, &x, &y, None, 20).unwrap();
        assert_eq!(g.theta, 0);
        assert!(g.x1.is_empty() && g.x2.is_empty());
    }

    #[test]
    fn balanced_vertex_has_zero_gap() {
        // 0 → 1, 2 → 0
        let d = Digraph::from_arcs(3, [(0, 1), (2, 0)]).unwrap();
        let (x, y) = split(3, &[0]);
        assert_eq!(minimize_gap(&d, &x, &y, None, 20).unwrap().theta, 0);
        let init = GapPartition { x1: vec![], x2: vec![0], theta: 0 };
        assert_eq!(minimize_gap(&d, &x, &y, Some(&init), 0).unwrap().theta, 0);
    }

    #[test]
    fn errors() {
        let d = Digraph::from_arcs(3, [(0, 1)]).unwrap();
        let (x, y) = split(3, &[0, 1]);
        assert_eq!(minimize_gap(&d, &x, &y, None, 20), Err(Error::ArcsInsideX { arcs: 1 }));
        let (x, _) = split(3, &[0]);
        assert!(matches!(minimize_gap(&d, &x, &x, None, 20), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn gap_matches_arc_counts_and_exhaustive_is_optimal() {
        for seed in 0..50 {
            let n = 14;
            let base = random_digraph(n, 0.3, seed).unwrap();
            let (x, y) = split(n, &[0, 3, 5, 8, 11]);
            let d = base.without_arcs_inside(&x).unwrap();
            let g = minimize_gap(&d, &x, &y, None, 20).unwrap();
            assert!(g.theta >= 0);
            assert_eq!(g.theta, gap(&d, &g.x1_set(n), &g.x2_set(n)).unwrap());
            // brute force over all 2^5 splits
            let xs = x.to_vec();
            let best = (0..1u32 << xs.len())
                .map(|mask| {
                    let x1 = VertexSet::from_vertices(
                        n,
                        xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v),
                    )
                    .unwrap();
                    gap(&d, &x1, &x.difference(&x1)).unwrap().abs()
                })
                .min()
                .unwrap();
            assert_eq!(g.theta, best);
        }
    }
}
