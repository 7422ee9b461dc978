//! Simple loop-free digraphs and cut accounting.
//!
//! Vertices are dense indices `0..n`. Parallel arcs are rejected but an
//! antiparallel pair `(u, v)`, `(v, u)` is a legal pair of distinct arcs.

mod bipartition;
mod io;
mod set;
mod ugraph;

pub use bipartition::{Bipartition, CutStats, Side};
pub use io::{read_digraph, write_digraph};
pub use set::VertexSet;
pub use ugraph::UGraph;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    m: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

/// Per-vertex degrees and the extremal values derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub out_degree: Vec<usize>,
    pub in_degree: Vec<usize>,
    pub degree: Vec<usize>,
    pub min_out: usize,
    pub min_in: usize,
    /// `min(min_out, min_in)`.
    pub min_semi: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph { n, m: 0, out_adj: vec![Vec::new(); n], in_adj: vec![Vec::new(); n] }
    }

    /// Builds a digraph, rejecting loops, repeated arcs and out-of-range endpoints.
    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Result<Self> {
        let mut out_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            out_adj[u].push(v);
        }
        let mut m = 0;
        let mut in_adj = vec![Vec::new(); n];
        for (u, outs) in out_adj.iter_mut().enumerate() {
            outs.sort_unstable();
            if let Some(w) = outs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateArc(u, w[0]));
            }
            m += outs.len();
            for &v in outs.iter() {
                in_adj[v].push(u);
            }
        }
        // in-lists come out sorted because sources are visited in order
        Ok(Digraph { n, m, out_adj, in_adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj.iter().enumerate().flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> DegreeSummary {
        let out_degree: Vec<usize> = (0..self.n).map(|v| self.out_degree(v)).collect();
        let in_degree: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let degree: Vec<usize> = out_degree.iter().zip(&in_degree).map(|(a, b)| a + b).collect();
        let min = |xs: &[usize]| xs.iter().copied().min().unwrap_or(0);
        let min_out = min(&out_degree);
        let min_in = min(&in_degree);
        DegreeSummary {
            min_out,
            min_in,
            min_semi: min_out.min(min_in),
            min_degree: min(&degree),
            max_degree: degree.iter().copied().max().unwrap_or(0),
            out_degree,
            in_degree,
            degree,
        }
    }

    /// `min(δ⁺, δ⁻)`, zero for the empty graph.
    pub fn min_semidegree(&self) -> usize {
        (0..self.n).map(|v| self.out_degree(v).min(self.in_degree(v))).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of arcs from `s` to `t`. The sets may overlap; an arc with both
    /// ends in `s ∩ t` is counted once.
    pub fn arc_count(&self, s: &VertexSet, t: &VertexSet) -> Result<usize> {
        self.check_set(s)?;
        self.check_set(t)?;
        Ok(self.arc_count_unchecked(s, t))
    }

    pub(crate) fn arc_count_unchecked(&self, s: &VertexSet, t: &VertexSet) -> usize {
        let (s_len, t_len) = (s.len(), t.len());
        if s_len <= t_len {
            s.iter().map(|u| self.out_adj[u].iter().filter(|&&v| t.contains(v)).count()).sum()
        } else {
            t.iter().map(|v| self.in_adj[v].iter().filter(|&&u| s.contains(u)).count()).sum()
        }
    }

    /// Arcs with both ends in `s`.
    pub fn arcs_within(&self, s: &VertexSet) -> Result<usize> {
        self.arc_count(s, s)
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max() {
            Some(v) if v >= self.n => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            _ => Ok(()),
        }
    }

    /// Orientation dropped, antiparallel pairs merged.
    pub fn underlying_graph(&self) -> UGraph {
        let mut adj: Vec<Vec<usize>> = (0..self.n)
            .map(|v| {
                let mut nb: Vec<usize> = self.out_adj[v].iter().chain(&self.in_adj[v]).copied().collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect();
        adj.shrink_to_fit();
        UGraph::from_sorted_adjacency(adj)
    }

    /// Subdigraph induced by `s`, compacted to `0..|s|`. The returned map sends
    /// a new index to the original vertex.
    pub fn induced(&self, s: &VertexSet) -> Result<(Digraph, Vec<usize>)> {
        self.check_set(s)?;
        let map: Vec<usize> = s.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let arcs = map.iter().enumerate().flat_map(|(i, &u)| {
            let index = &index;
            self.out_adj[u].iter().filter(move |&&v| index[v] != usize::MAX).map(move |&v| (i, index[v]))
        });
        let d = Digraph::from_arcs(map.len(), arcs)?;
        Ok((d, map))
    }

    /// `D − S`, i.e. the subdigraph induced by the complement of `s`.
    pub fn remove(&self, s: &VertexSet) -> Result<(Digraph, Vec<usize>)> {
        self.check_set(s)?;
        let keep = VertexSet::from_vertices(self.n, (0..self.n).filter(|&v| !s.contains(v)))?;
        self.induced(&keep)
    }

    /// Same vertex set with every arc inside `s` deleted.
    pub fn without_arcs_inside(&self, s: &VertexSet) -> Result<Digraph> {
        self.check_set(s)?;
        let arcs = self.arcs().filter(|&(u, v)| !(s.contains(u) && s.contains(v)));
        Digraph::from_arcs(self.n, arcs)
    }

    pub fn cut_stats(&self, p: &Bipartition) -> Result<CutStats> {
        if p.len() != self.n {
            return Err(Error::LabelCount { expected: self.n, got: p.len() });
        }
        let mut c = [[0usize; 2]; 2];
        for (u, v) in self.arcs() {
            c[p.side(u).index()][p.side(v).index()] += 1;
        }
        Ok(CutStats::new(c[0][1], c[1][0], c[0][0], c[1][1]))
    }

    /// Disjoint union with index shifting, in list order.
    pub fn disjoint_union<'a, I: IntoIterator<Item = &'a Digraph>>(parts: I) -> Digraph {
        let mut n = 0;
        let mut arcs = Vec::new();
        for d in parts {
            arcs.extend(d.arcs().map(|(u, v)| (u + n, v + n)));
            n += d.n;
        }
        Digraph::from_arcs(n, arcs).expect("union of simple digraphs is simple")
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph").field("n", &self.n).field("arcs", &self.arcs().collect::<Vec<_>>()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn tournament5() -> Digraph {
        let arcs = (0..5).flat_map(|i| (1..=2).map(move |k| (i, (i + k) % 5)));
        Digraph::from_arcs(5, arcs).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Digraph::from_arcs(2, [(0, 0)]), Err(Error::Loop(0)));
        assert_eq!(Digraph::from_arcs(2, [(0, 1), (0, 1)]), Err(Error::DuplicateArc(0, 1)));
        assert_eq!(Digraph::from_arcs(2, [(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(digon.m(), 2);
    }

    #[test]
    fn arc_count_examples() {
        let d = cycle3();
        assert_eq!(d.arc_count(&set(3, &[0]), &set(3, &[1, 2])).unwrap(), 1);
        assert_eq!(d.arc_count(&VertexSet::empty(3), &VertexSet::full(3)).unwrap(), 0);
        assert_eq!(d.arc_count(&VertexSet::full(3), &VertexSet::full(3)).unwrap(), 3);
        let big = set(5, &[4]);
        assert!(matches!(d.arc_count(&big, &big), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn tournament_two_sets_enumerated() {
        let d = tournament5();
        let mut seen = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                let s = set(5, &[a, b]);
                let v = d.arc_count(&s, &s.complement()).unwrap();
                // brute force over the arc list
                let brute = d.arcs().filter(|&(u, w)| s.contains(u) && !s.contains(w)).count();
                assert_eq!(v, brute);
                seen.push(v);
            }
        }
        assert_eq!(seen.len(), 10);
        assert!(seen.iter().all(|v| (3..=5).contains(v)));
    }

    #[test]
    fn degree_examples() {
        let s = cycle3().degrees();
        assert_eq!(s.degree, vec![2, 2, 2]);
        assert_eq!((s.min_semi, s.max_degree), (1, 2));
        let t = tournament5().degrees();
        assert!(t.out_degree.iter().chain(&t.in_degree).all(|&x| x == 2));
        let e = Digraph::empty(4).degrees();
        assert_eq!((e.min_out, e.min_in, e.max_degree), (0, 0, 0));
    }

    #[test]
    fn underlying_graph_examples() {
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(digon.underlying_graph().m(), 1);
        assert_eq!(cycle3().underlying_graph().m(), 3);
        let k5 = tournament5().underlying_graph();
        assert_eq!(k5.m(), 10);
        assert!((0..5).all(|v| k5.degree(v) == 4));
    }

    #[test]
    fn induced_and_remove() {
        let (d, map) = cycle3().induced(&VertexSet::empty(3)).unwrap();
        assert_eq!((d.n(), d.m(), map.len()), (0, 0, 0));
        let (d, map) = cycle3().induced(&set(3, &[0, 2])).unwrap();
        assert_eq!(d.m(), 1);
        assert_eq!(map, vec![0, 2]);
        assert!(d.has_arc(1, 0));
        let (d, _) = tournament5().remove(&set(5, &[1, 3])).unwrap();
        assert_eq!((d.n(), d.m()), (3, 3));
    }

    #[test]
    fn cut_stats_examples() {
        let d = cycle3();
        let p = Bipartition::from_set(&set(3, &[0]));
        let c = d.cut_stats(&p).unwrap();
        assert_eq!((c.e12, c.e21, c.value), (1, 1, 1));
        let c = d.cut_stats(&Bipartition::all(3, Side::One)).unwrap();
        assert_eq!((c.e12, c.e21, c.inside1), (0, 0, 3));
        assert_eq!(d.cut_stats(&Bipartition::all(2, Side::One)), Err(Error::LabelCount { expected: 3, got: 2 }));
    }

    #[test]
    fn union_shifts_indices() {
        let u = Digraph::disjoint_union([&cycle3(), &cycle3()]);
        assert_eq!((u.n(), u.m()), (6, 6));
        assert!(u.has_arc(5, 3));
        let e = Digraph::disjoint_union([&cycle3(), &Digraph::empty(0)]);
        assert_eq!(e, cycle3());
    }
}
