//! Seeded instance families.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::rng;

/// Orientation of `K_n`, `n` odd, in which vertex `i` beats `i+1, …, i+(n−1)/2` mod `n`.
pub fn regular_tournament(n: usize) -> Result<Digraph> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("regular tournament needs odd order, got {n}")));
    }
    let h = (n - 1) / 2;
    Digraph::from_arcs(n, (0..n).flat_map(|i| (1..=h).map(move |k| (i, (i + k) % n))))
}

/// Vertex roles of [`star_plus_edge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarRoles {
    pub center: usize,
    /// The leaf the centre points to.
    pub u: usize,
    /// The leaf `u` points to.
    pub w: usize,
}

/// `K_{1,n−1}` plus one edge between two leaves, oriented with `δ⁺ = 1`:
/// every leaf except `u` points to the centre, the centre points to `u`, and
/// `u` points to the leaf `w`. The seed picks `u` and `w`.
pub fn star_plus_edge(n: usize, seed: u64) -> Result<(Digraph, StarRoles)> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("star plus edge needs n ≥ 3, got {n}")));
    }
    let mut leaves: Vec<usize> = (1..n).collect();
    leaves.shuffle(&mut rng::stream(seed, 0));
    let roles = StarRoles { center: 0, u: leaves[0], w: leaves[1] };
    let mut arcs: Vec<(usize, usize)> = (1..n).filter(|&l| l != roles.u).map(|l| (l, roles.center)).collect();
    arcs.push((roles.center, roles.u));
    arcs.push((roles.u, roles.w));
    Ok((Digraph::from_arcs(n, arcs)?, roles))
}

/// Extra arcs between the tournaments of [`extremal_family`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkSpec {
    None,
    /// Vertex `j` of tournament `i` points to vertex `j` of tournament `i + 1`,
    /// for every small tournament; the last one feeds the large tournament.
    Chain,
    /// Explicit arcs in global vertex labels.
    Arcs(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeAudit {
    pub min_out: usize,
    pub min_in: usize,
    pub m: usize,
    /// `k(2d−1)(d−1) + (2d+1)d` plus the number of link arcs.
    pub expected_m: usize,
}

/// `k` regular tournaments on `2d−1` vertices followed by one on `2d+1`
/// vertices, joined by `links`. Returns the digraph and its semi-degree audit.
pub fn extremal_family(d: usize, k: usize, links: &LinkSpec) -> Result<(Digraph, DegreeAudit)> {
    if d < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("extremal family needs d ≥ 2, k ≥ 1 (got d={d}, k={k})")));
    }
    let small = regular_tournament(2 * d - 1)?;
    let large = regular_tournament(2 * d + 1)?;
    let mut parts: Vec<&Digraph> = vec![&small; k];
    parts.push(&large);
    let base = Digraph::disjoint_union(parts);
    let s = 2 * d - 1;
    let extra: Vec<(usize, usize)> = match links {
        LinkSpec::None => Vec::new(),
        LinkSpec::Chain => (0..k).flat_map(|i| (0..s).map(move |j| (i * s + j, (i + 1) * s + j))).collect(),
        LinkSpec::Arcs(a) => a.clone(),
    };
    let digraph = Digraph::from_arcs(base.n(), base.arcs().chain(extra.iter().copied()))?;
    let deg = digraph.degrees();
    let audit = DegreeAudit {
        min_out: deg.min_out,
        min_in: deg.min_in,
        m: digraph.m(),
        expected_m: k * s * (d - 1) + (2 * d + 1) * d + extra.len(),
    };
    Ok((digraph, audit))
}

/// Each ordered pair `(u, v)`, `u ≠ v`, is an arc independently with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("arc probability {p} outside [0, 1]")));
    }
    let mut rng = rng::stream(seed, 0);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}

/// [`random_digraph`] followed by repair arcs until `δ⁰ ≥ d`. Vertices are
/// repaired in index order, out-degree first, each missing arc going to a
/// uniformly chosen non-neighbour. Returns the digraph and the repair arcs.
pub fn random_min_semidegree(n: usize, d: usize, p: f64, seed: u64) -> Result<(Digraph, Vec<(usize, usize)>)> {
    if d >= n {
        return Err(Error::InvalidParameter(format!("min semidegree {d} needs more than {n} vertices")));
    }
    let base = random_digraph(n, p, seed)?;
    let mut rng = rng::stream(seed, 1);
    let mut out: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for (u, v) in base.arcs() {
        out[u][v] = true;
    }
    let mut out_deg: Vec<usize> = (0..n).map(|v| base.out_degree(v)).collect();
    let mut in_deg: Vec<usize> = (0..n).map(|v| base.in_degree(v)).collect();
    let mut repairs = Vec::new();

    for v in 0..n {
        while out_deg[v] < d {
            let cand: Vec<usize> = (0..n).filter(|&u| u != v && !out[v][u]).collect();
            let u = cand[rng.gen_range(0..cand.len())];
            out[v][u] = true;
            out_deg[v] += 1;
            in_deg[u] += 1;
            repairs.push((v, u));
        }
    }
    for v in 0..n {
        while in_deg[v] < d {
            let cand: Vec<usize> = (0..n).filter(|&u| u != v && !out[u][v]).collect();
            let u = cand[rng.gen_range(0..cand.len())];
            out[u][v] = true;
            in_deg[v] += 1;
            out_deg[u] += 1;
            repairs.push((u, v));
        }
    }
    let digraph = Digraph::from_arcs(n, base.arcs().chain(repairs.iter().copied()))?;
    debug_assert!(digraph.min_semidegree() >= d);
    Ok((digraph, repairs))
}

/// Declarative description of an instance; building the same spec twice gives
/// the same digraph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InstanceSpec {
    RegularTournament {
        n: usize,
    },
    StarPlusEdge {
        n: usize,
        seed: u64,
    },
    ExtremalFamily {
        d: usize,
        k: usize,
        #[serde(default = "default_links")]
        links: LinkSpec,
    },
    RandomDigraph {
        n: usize,
        p: f64,
        seed: u64,
    },
    RandomMinSemidegree {
        n: usize,
        d: usize,
        p: f64,
        seed: u64,
    },
    DisjointUnion {
        parts: Vec<InstanceSpec>,
    },
}

fn default_links() -> LinkSpec {
    LinkSpec::None
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub digraph: Digraph,
    /// Construction details worth keeping next to the instance.
    pub notes: Vec<String>,
}

impl InstanceSpec {
    pub fn family(&self) -> &'static str {
        match self {
            InstanceSpec::RegularTournament { .. } => "regular_tournament",
            InstanceSpec::StarPlusEdge { .. } => "star_plus_edge",
            InstanceSpec::ExtremalFamily { .. } => "extremal_family",
            InstanceSpec::RandomDigraph { .. } => "random_digraph",
            InstanceSpec::RandomMinSemidegree { .. } => "random_min_semidegree",
            InstanceSpec::DisjointUnion { .. } => "disjoint_union",
        }
    }

    /// Short stable label, e.g. `random_min_semidegree(n=30,d=4,p=0.1,seed=7)`.
    pub fn label(&self) -> String {
        match self {
            InstanceSpec::RegularTournament { n } => format!("regular_tournament(n={n})"),
            InstanceSpec::StarPlusEdge { n, seed } => format!("star_plus_edge(n={n},seed={seed})"),
            InstanceSpec::ExtremalFamily { d, k, links } => {
                let l = match links {
                    LinkSpec::None => "none".to_string(),
                    LinkSpec::Chain => "chain".to_string(),
                    LinkSpec::Arcs(a) => format!("{}arcs", a.len()),
                };
                format!("extremal_family(d={d},k={k},links={l})")
            }
            InstanceSpec::RandomDigraph { n, p, seed } => format!("random_digraph(n={n},p={p},seed={seed})"),
            InstanceSpec::RandomMinSemidegree { n, d, p, seed } => {
                format!("random_min_semidegree(n={n},d={d},p={p},seed={seed})")
            }
            InstanceSpec::DisjointUnion { parts } => {
                let inner: Vec<String> = parts.iter().map(InstanceSpec::label).collect();
                format!("disjoint_union[{}]", inner.join("+"))
            }
        }
    }

    pub fn build(&self) -> Result<Instance> {
        let mut notes = Vec::new();
        let digraph = match self {
            InstanceSpec::RegularTournament { n } => regular_tournament(*n)?,
            InstanceSpec::StarPlusEdge { n, seed } => {
                let (d, r) = star_plus_edge(*n, *seed)?;
                notes.push(format!("center={} u={} w={}", r.center, r.u, r.w));
                d
            }
            InstanceSpec::ExtremalFamily { d, k, links } => {
                let (g, a) = extremal_family(*d, *k, links)?;
                notes.push(format!("min_out={} min_in={} m={} expected_m={}", a.min_out, a.min_in, a.m, a.expected_m));
                g
            }
            InstanceSpec::RandomDigraph { n, p, seed } => random_digraph(*n, *p, *seed)?,
            InstanceSpec::RandomMinSemidegree { n, d, p, seed } => {
                let (g, repairs) = random_min_semidegree(*n, *d, *p, *seed)?;
                notes.push(format!("repairs={}", repairs.len()));
                g
            }
            InstanceSpec::DisjointUnion { parts } => {
                let built = parts.iter().map(InstanceSpec::build).collect::<Result<Vec<_>>>()?;
                for b in &built {
                    notes.extend(b.notes.iter().cloned());
                }
                Digraph::disjoint_union(built.iter().map(|b| &b.digraph))
            }
        };
        Ok(Instance { spec: self.clone(), digraph, notes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::write_digraph;
    use crate::tightness::count_tight;

    #[test]
    fn tournaments() {
        let t3 = regular_tournament(3).unwrap();
        assert_eq!(t3.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        for n in [1, 5, 7, 9] {
            let t = regular_tournament(n).unwrap();
            assert_eq!(t.m(), n * (n - 1) / 2);
            for u in 0..n {
                assert_eq!((t.out_degree(u), t.in_degree(u)), ((n - 1) / 2, (n - 1) / 2));
                for v in u + 1..n {
                    assert!(t.has_arc(u, v) ^ t.has_arc(v, u));
                }
            }
        }
        assert!(regular_tournament(4).is_err());
    }

    #[test]
    fn star_plus_edge_shape() {
        for n in 3..10 {
            for seed in 0..4 {
                let (d, r) = star_plus_edge(n, seed).unwrap();
                assert_eq!(d.m(), n);
                assert_eq!(d.degrees().min_out, 1);
                assert!(d.has_arc(r.center, r.u) && d.has_arc(r.u, r.w));
                assert_eq!(d.underlying_graph().m(), n);
            }
        }
        assert!(star_plus_edge(2, 0).is_err());
    }

    #[test]
    fn extremal_audit() {
        let (g, a) = extremal_family(2, 2, &LinkSpec::None).unwrap();
        assert_eq!(g.n(), 11);
        assert_eq!((a.min_out, a.min_in), (1, 1));
        assert_eq!(a.m, a.expected_m);
        assert_eq!(a.m, 2 * 3 + 5 * 2);
        let comps = g.underlying_graph().components();
        assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3, 5]);

        for d in 2..5 {
            for k in 1..4 {
                let (_, a) = extremal_family(d, k, &LinkSpec::Chain).unwrap();
                assert_eq!(a.m, a.expected_m);
                assert_eq!((a.min_out, a.min_in), (d, d - 1));
            }
        }
        assert!(extremal_family(1, 1, &LinkSpec::None).is_err());
        assert!(extremal_family(2, 0, &LinkSpec::None).is_err());
    }

    #[test]
    fn random_families() {
        assert_eq!(random_digraph(10, 0.0, 1).unwrap().m(), 0);
        assert_eq!(random_digraph(10, 1.0, 1).unwrap().m(), 90);
        assert!(random_digraph(3, 1.5, 1).is_err());
        for seed in 0..20 {
            let (g, repairs) = random_min_semidegree(30, 4, 0.05, seed).unwrap();
            assert!(g.min_semidegree() >= 4);
            assert!(!repairs.is_empty());
        }
        assert!(random_min_semidegree(4, 4, 0.5, 0).is_err());
    }

    #[test]
    fn specs_are_deterministic() {
        let specs = [
            InstanceSpec::RandomMinSemidegree { n: 25, d: 3, p: 0.1, seed: 9 },
            InstanceSpec::StarPlusEdge { n: 8, seed: 3 },
            InstanceSpec::ExtremalFamily { d: 3, k: 2, links: LinkSpec::Chain },
        ];
        for s in &specs {
            let a = write_digraph(&s.build().unwrap().digraph);
            let b = write_digraph(&s.build().unwrap().digraph);
            assert_eq!(a, b);
            let json = serde_json::to_string(s).unwrap();
            assert_eq!(&serde_json::from_str::<InstanceSpec>(&json).unwrap(), s);
        }
    }

    #[test]
    fn union_adds_tight_counts() {
        let a = InstanceSpec::RandomDigraph { n: 12, p: 0.08, seed: 1 }.build().unwrap().digraph;
        let b = InstanceSpec::RandomDigraph { n: 9, p: 0.1, seed: 2 }.build().unwrap().digraph;
        let u = Digraph::disjoint_union([&a, &b]);
        let ta = count_tight(&a.underlying_graph()).tau;
        let tb = count_tight(&b.underlying_graph()).tau;
        assert_eq!(count_tight(&u.underlying_graph()).tau, ta + tb);
        assert_eq!(u.m(), a.m() + b.m());
    }
}
