//! Hypergraph representation and the set operations used by the counting
//! engine and the brute-force oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Dense vertex identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An arbitrary set of vertices.
pub type VertexSet = BTreeSet<VertexId>;

/// A set of vertex sets, e.g. the transversals of a hypergraph.
pub type Family = BTreeSet<VertexSet>;

/// A hyperedge, stored as a sorted duplicate-free vertex list. May be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vec<VertexId>);

impl Edge {
    pub fn new<I, V>(vertices: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut v: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        v.sort_unstable();
        v.dedup();
        Edge(v)
    }

    pub fn empty() -> Self {
        Edge(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True iff the edge shares at least one vertex with `s`.
    pub fn meets(&self, s: &VertexSet) -> bool {
        self.0.iter().any(|v| s.contains(v))
    }

    /// The trace `self ∩ s`.
    pub fn restrict(&self, s: &VertexSet) -> Edge {
        Edge(self.0.iter().copied().filter(|v| s.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &Edge) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn to_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<VertexId> for Edge {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Edge::new(iter)
    }
}

/// A finite set of hyperedges.
///
/// Edges are deduplicated and kept in sorted order, so two hypergraphs with
/// the same edge sets compare equal. The vertex set is the union of the edges.
/// `Hypergraph::default()` is the empty hypergraph, which is distinct from the
/// hypergraph `{∅}` holding a single empty edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    edges: Vec<Edge>,
}

impl Hypergraph {
    pub fn new<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Hypergraph { edges }
    }

    /// Builds a hypergraph from raw vertex index lists.
    pub fn from_sets<E, V>(sets: E) -> Self
    where
        E: IntoIterator<Item = V>,
        V: IntoIterator<Item = u32>,
    {
        Hypergraph::new(sets.into_iter().map(|s| Edge::new(s)))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn has_empty_edge(&self) -> bool {
        // the empty edge sorts first
        self.edges.first().is_some_and(Edge::is_empty)
    }

    /// `V(H)`, the union of all edges.
    pub fn vertices(&self) -> VertexSet {
        self.edges.iter().flat_map(Edge::iter).collect()
    }

    /// One past the largest vertex index, i.e. the size of a dense array
    /// indexed by the vertices of this hypergraph.
    pub fn vertex_bound(&self) -> usize {
        self.edges
            .iter()
            .filter_map(|e| e.vertices().last())
            .map(|v| v.index() + 1)
            .max()
            .unwrap_or(0)
    }

    /// The induced hypergraph `H[S] = {e ∩ S : e ∈ H}`.
    pub fn induce(&self, s: &VertexSet) -> Hypergraph {
        Hypergraph::new(self.edges.iter().map(|e| e.restrict(s)))
    }

    /// `H(S)`: the edges meeting `s`.
    pub fn hitting_edges(&self, s: &VertexSet) -> Hypergraph {
        Hypergraph {
            edges: self.edges.iter().filter(|e| e.meets(s)).cloned().collect(),
        }
    }

    /// `H(x)`: the edges containing `x`.
    pub fn edges_containing(&self, x: VertexId) -> Hypergraph {
        Hypergraph {
            edges: self
                .edges
                .iter()
                .filter(|e| e.contains(x))
                .cloned()
                .collect(),
        }
    }

    /// Edge-set difference `self \ other`.
    pub fn minus(&self, other: &Hypergraph) -> Hypergraph {
        Hypergraph {
            edges: self
                .edges
                .iter()
                .filter(|e| !other.contains_edge(e))
                .cloned()
                .collect(),
        }
    }

    /// Edge-set union.
    pub fn union(&self, other: &Hypergraph) -> Hypergraph {
        Hypergraph::new(self.edges.iter().chain(other.edges.iter()).cloned())
    }

    pub fn intersection(&self, other: &Hypergraph) -> Hypergraph {
        Hypergraph {
            edges: self
                .edges
                .iter()
                .filter(|e| other.contains_edge(e))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Hypergraph) -> bool {
        self.edges.iter().all(|e| other.contains_edge(e))
    }

    /// The sub-hypergraph of edges satisfying `keep`.
    pub fn filter<F: FnMut(&Edge) -> bool>(&self, mut keep: F) -> Hypergraph {
        Hypergraph {
            edges: self.edges.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    /// Partitions the edges into walk-connected classes.
    ///
    /// An empty edge shares no vertex with anything and forms its own class.
    /// Classes are ordered by their smallest edge.
    pub fn connected_components(&self) -> EdgePartition {
        let mut uf = UnionFind::new(self.vertex_bound());
        for e in &self.edges {
            if let Some((first, rest)) = e.vertices().split_first() {
                for v in rest {
                    uf.union(first.index(), v.index());
                }
            }
        }
        let mut empty_class = None;
        let mut by_root: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
        for e in &self.edges {
            match e.vertices().first() {
                None => {
                    empty_class = Some(Hypergraph {
                        edges: vec![e.clone()],
                    })
                }
                Some(v) => by_root
                    .entry(uf.find(v.index()))
                    .or_default()
                    .push(e.clone()),
            }
        }
        let mut classes: Vec<Hypergraph> = empty_class.into_iter().collect();
        classes.extend(by_root.into_values().map(|edges| Hypergraph { edges }));
        classes.sort_by(|a, b| a.edges.first().cmp(&b.edges.first()));
        EdgePartition { classes }
    }
}

impl FromIterator<Edge> for Hypergraph {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        Hypergraph::new(iter)
    }
}

/// A partition of a hypergraph's edges into connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    classes: Vec<Hypergraph>,
}

impl EdgePartition {
    pub fn classes(&self) -> &[Hypergraph] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn into_classes(self) -> Vec<Hypergraph> {
        self.classes
    }
}

/// The product `A_1 ⊗ … ⊗ A_k`: every union `T_1 ∪ … ∪ T_k` with `T_i ∈ A_i`.
///
/// Empty if some family is empty. The product of no families is `{∅}`.
pub fn cross_union(families: &[Family]) -> Family {
    let mut acc: Family = std::iter::once(VertexSet::new()).collect();
    for fam in families {
        if fam.is_empty() {
            return Family::new();
        }
        acc = acc
            .iter()
            .flat_map(|t| fam.iter().map(move |u| t.union(u).copied().collect()))
            .collect();
    }
    acc
}

/// Disjoint-set forest over `0..n` with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
