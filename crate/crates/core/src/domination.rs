//! Minimal dominating sets as minimal transversals of the closed
//! neighbourhood hypergraph `N[G] = {N[v] : v ∈ V(G)}`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::engine::{BigCount, CountReport, Counter};
use crate::error::Result;
use crate::hypergraph::{Edge, Hypergraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Adds `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[v].insert(u);
        Ok(self.adj[u].insert(v))
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains(&v))
    }

    /// Edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.range(u + 1..).map(move |&v| (u, v)))
    }

    /// `N[v]`
    pub fn closed_neighborhood(&self, v: usize) -> Edge {
        std::iter::once(v)
            .chain(self.neighbors(v))
            .map(|w| VertexId(w as u32))
            .collect()
    }
}

/// `N[G]` together with the vertices generating each edge. Vertices with equal
/// closed neighbourhoods share one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodHypergraph {
    pub hypergraph: Hypergraph,
    generators: Vec<Vec<usize>>,
}

impl NeighborhoodHypergraph {
    /// The vertex recorded for the `k`-th edge of `hypergraph`.
    pub fn generator(&self, k: usize) -> usize {
        self.generators[k][0]
    }

    /// Every vertex whose closed neighbourhood is the `k`-th edge.
    pub fn twins(&self, k: usize) -> &[usize] {
        &self.generators[k]
    }
}

pub fn closed_neighborhood_hypergraph(g: &Graph) -> NeighborhoodHypergraph {
    let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for v in 0..g.num_vertices() {
        by_edge.entry(g.closed_neighborhood(v)).or_default().push(v);
    }
    let hypergraph = Hypergraph::new(by_edge.keys().cloned());
    // both orders are the sorted edge order
    let generators = by_edge.into_values().collect();
    NeighborhoodHypergraph {
        hypergraph,
        generators,
    }
}

/// Counts minimal dominating sets. Fails with `NotBetaAcyclic` when `N[G]`
/// has no β-elimination ordering; strongly chordal graphs always succeed.
pub fn count_minimal_dominating_sets(g: &Graph) -> Result<BigCount> {
    count_minimal_dominating_sets_with(g, &Counter::default()).map(|r| r.count)
}

pub fn count_minimal_dominating_sets_with(g: &Graph, counter: &Counter) -> Result<CountReport> {
    counter.count(&closed_neighborhood_hypergraph(g).hypergraph)
}
