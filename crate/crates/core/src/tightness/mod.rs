//! Tight components of undirected graphs.
//!
//! A connected graph is tight exactly when every block is an odd clique; the
//! module decides it that way in linear time and, for small components, also
//! from the perfect-matching definition so the two can be cross-checked.

mod blocks;
mod bounds;
mod matching;

pub use blocks::{blocks, Block};
pub use bounds::{lee_bound, weighted_profile_bound, DegreeProfile, WeightedProfileBound};
pub use matching::{is_tight_by_definition, DEFAULT_SIZE_LIMIT};

use serde::Serialize;

use crate::digraph::UGraph;
use crate::error::{Error, Result};
use crate::ratio::{self, Rational};

/// Whether the connected subgraph induced by `component` has only odd-clique blocks.
pub fn is_tight_by_blocks(g: &UGraph, component: &[usize]) -> Result<bool> {
    if component.is_empty() {
        return Err(Error::InvalidParameter("empty component".into()));
    }
    let (t, _) = g.induced(component)?;
    if !t.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(blocks(&t).iter().all(Block::is_odd_clique))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TightnessMethod {
    Blocks,
    Definition,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentVerdict {
    pub vertices: Vec<usize>,
    pub tight: bool,
    pub method: TightnessMethod,
    /// Block vertex lists, in original labels.
    pub blocks: Vec<Vec<usize>>,
    /// Verdict of the matching enumeration, when the component was small enough.
    pub cross_check: Option<bool>,
}

impl ComponentVerdict {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightnessReport {
    pub components: Vec<ComponentVerdict>,
    pub tau: usize,
    pub profile: DegreeProfile,
    #[serde(serialize_with = "ratio::serialize")]
    pub lee_bound: Rational,
}

impl TightnessReport {
    /// Vertices lying in tight components of the given order.
    pub fn tight_vertices_of_order(&self, order: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .components
            .iter()
            .filter(|c| c.tight && c.order() == order)
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// Components where the two deciders disagree.
    pub fn disagreements(&self) -> impl Iterator<Item = &ComponentVerdict> {
        self.components.iter().filter(|c| c.cross_check.is_some_and(|x| x != c.tight))
    }
}

/// Splits `g` into components and decides each by its blocks.
pub fn count_tight(g: &UGraph) -> TightnessReport {
    build_report(g, None)
}

/// Like [`count_tight`], additionally running the matching enumeration on
/// every component of at most `size_limit` vertices.
pub fn count_tight_cross_checked(g: &UGraph, size_limit: usize) -> TightnessReport {
    build_report(g, Some(size_limit))
}

fn build_report(g: &UGraph, cross_limit: Option<usize>) -> TightnessReport {
    let mut components = Vec::new();
    for comp in g.components() {
        let (t, map) = g.induced(&comp).expect("component vertices are in range");
        let bl = blocks(&t);
        let tight = bl.iter().all(Block::is_odd_clique);
        let cross_check = cross_limit
            .filter(|&lim| comp.len() <= lim)
            .map(|lim| is_tight_by_definition(g, &comp, lim).expect("component is connected"));
        components.push(ComponentVerdict {
            blocks: bl.iter().map(|b| b.vertices.iter().map(|&v| map[v]).collect()).collect(),
            vertices: comp,
            tight,
            method: TightnessMethod::Blocks,
            cross_check,
        });
    }
    let profile = DegreeProfile::of_graph(g);
    TightnessReport {
        tau: components.iter().filter(|c| c.tight).count(),
        lee_bound: lee_bound(&profile),
        components,
        profile,
    }
}
