use serde::Serialize;

use crate::digraph::UGraph;

/// A maximal 2-connected piece of a graph. Bridges give two-vertex blocks and
/// isolated vertices give single-vertex blocks with no edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_clique(&self) -> bool {
        let k = self.vertices.len();
        self.edges.len() == k * k.saturating_sub(1) / 2
    }

    pub fn is_odd_clique(&self) -> bool {
        self.order() % 2 == 1 && self.is_clique()
    }
}

const UNSEEN: usize = usize::MAX;

/// Block decomposition (Hopcroft–Tarjan, iterative). Blocks are returned
/// sorted by vertex list; edges are stored as `(min, max)` and sorted.
pub fn blocks(g: &UGraph) -> Vec<Block> {
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        if g.degree(root) == 0 {
            out.push(Block { vertices: vec![root], edges: Vec::new() });
            continue;
        }
        frames.push((root, UNSEEN, 0));
        while let Some(&mut (v, parent, ref mut next)) = frames.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*next) {
                *next += 1;
                if disc[w] == UNSEEN {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut edges = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    edges.push((e.0.min(e.1), e.0.max(e.1)));
                    if e == (parent, v) {
                        break;
                    }
                }
                out.push(make_block(edges));
            }
        }
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

fn make_block(mut edges: Vec<(usize, usize)>) -> Block {
    edges.sort_unstable();
    let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    Block { vertices, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> UGraph {
        UGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn triangle_is_one_block() {
        let b = blocks(&graph(3, &[(0, 1), (1, 2), (0, 2)]));
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].vertices, vec![0, 1, 2]);
        assert!(b[0].is_odd_clique());
    }

    #[test]
    fn path_has_two_bridges() {
        let b = blocks(&graph(3, &[(0, 1), (1, 2)]));
        assert_eq!(b.iter().map(|b| b.vertices.clone()).collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 2]]);
        assert!(b.iter().all(|b| b.is_clique() && !b.is_odd_clique()));
    }

    #[test]
    fn bowtie_has_two_triangles() {
        let b = blocks(&graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]));
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|b| b.order() == 3 && b.is_odd_clique()));
    }

    #[test]
    fn isolated_vertices_and_cycles() {
        let b = blocks(&graph(6, &[(1, 2), (2, 3), (3, 4), (4, 1)]));
        assert_eq!(b.len(), 3);
        assert_eq!(b[0].vertices, vec![0]);
        assert_eq!(b[1].vertices, vec![1, 2, 3, 4]);
        assert!(!b[1].is_clique());
        assert_eq!(b[2].vertices, vec![5]);
    }
}
