//! β-elimination orderings, the lexicographic edge order they induce, and the
//! sub-hypergraphs `H_e^x` that index the counting recursion.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, VertexId};

/// A vertex ordering `x_1, …, x_n` together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrdering {
    order: Vec<VertexId>,
    rank: Vec<Option<usize>>,
}

impl EliminationOrdering {
    /// Wraps a vertex sequence. Returns `None` if a vertex repeats.
    pub fn new(order: Vec<VertexId>) -> Option<Self> {
        let bound = order.iter().map(|v| v.index() + 1).max().unwrap_or(0);
        let mut rank = vec![None; bound];
        for (i, v) in order.iter().enumerate() {
            if rank[v.index()].replace(i).is_some() {
                return None;
            }
        }
        Some(EliminationOrdering { order, rank })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Zero-based position of `v`, if it is ordered.
    pub fn rank(&self, v: VertexId) -> Option<usize> {
        self.rank.get(v.index()).copied().flatten()
    }

    fn rank_of(&self, v: VertexId) -> usize {
        self.rank(v)
            .unwrap_or_else(|| panic!("vertex {v} is not covered by the ordering"))
    }

    /// The ranks of an edge's vertices, ascending.
    pub fn ranks(&self, e: &Edge) -> Vec<usize> {
        let mut r: Vec<usize> = e.iter().map(|v| self.rank_of(v)).collect();
        r.sort_unstable();
        r
    }

    /// Restricts the ordering to the vertices of `keep`, preserving order.
    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> EliminationOrdering {
        EliminationOrdering::new(
            self.order
                .iter()
                .copied()
                .filter(|v| keep.contains(v))
                .collect(),
        )
        .expect("restriction of a permutation is a permutation")
    }
}

fn is_chain(mut traces: Vec<Vec<usize>>) -> bool {
    traces.sort_unstable_by_key(Vec::len);
    traces.dedup();
    traces.windows(2).all(|w| is_sorted_subset(&w[0], &w[1]))
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|a| it.by_ref().any(|b| b == a))
}

/// Checks the defining chain condition: for every position `i`, the traces on
/// `{x_i, …, x_n}` of the edges containing `x_i` are linearly ordered by
/// inclusion. Also requires `ordering` to be exactly a permutation of `V(H)`.
pub fn verify_ordering(h: &Hypergraph, ordering: &EliminationOrdering) -> bool {
    let vertices = h.vertices();
    if vertices.len() != ordering.len() || !ordering.order().iter().all(|v| vertices.contains(v)) {
        return false;
    }
    let ranked: Vec<Vec<usize>> = h.edges().iter().map(|e| ordering.ranks(e)).collect();
    (0..ordering.len()).all(|i| {
        let traces = ranked
            .iter()
            .filter(|r| r.binary_search(&i).is_ok())
            .map(|r| r.iter().copied().filter(|&k| k >= i).collect())
            .collect();
        is_chain(traces)
    })
}

/// Greedy nest-point elimination. Among the removable vertices the one with
/// the smallest index is taken.
pub fn find_elimination_ordering(h: &Hypergraph) -> Result<EliminationOrdering> {
    Eliminator::new(h).run(None)
}

/// Like [`find_elimination_ordering`], but `last` is only eliminated once
/// every other vertex is gone.
pub fn find_elimination_ordering_ending_with(
    h: &Hypergraph,
    last: VertexId,
) -> Result<EliminationOrdering> {
    Eliminator::new(h).run(Some(last))
}

struct Eliminator {
    vertices: Vec<VertexId>,
    // current traces, as positions into `vertices`
    traces: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    alive: Vec<bool>,
}

impl Eliminator {
    fn new(h: &Hypergraph) -> Self {
        let vertices: Vec<VertexId> = h.vertices().into_iter().collect();
        let pos = |v: &VertexId| vertices.binary_search(v).unwrap();
        let traces: Vec<Vec<usize>> = h
            .edges()
            .iter()
            .map(|e| e.vertices().iter().map(pos).collect())
            .collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (k, t) in traces.iter().enumerate() {
            for &v in t {
                incident[v].push(k);
            }
        }
        let alive = vec![true; vertices.len()];
        Eliminator {
            vertices,
            traces,
            incident,
            alive,
        }
    }

    fn is_nest_point(&self, v: usize) -> bool {
        is_chain(
            self.incident[v]
                .iter()
                .map(|&k| self.traces[k].clone())
                .collect(),
        )
    }

    fn run(mut self, last: Option<VertexId>) -> Result<EliminationOrdering> {
        let n = self.vertices.len();
        let last = match last {
            Some(l) => match self.vertices.binary_search(&l) {
                Ok(p) => Some(p),
                Err(_) => return Err(Error::NotBetaAcyclic),
            },
            None => None,
        };
        let mut nest: BTreeSet<usize> = (0..n).filter(|&v| self.is_nest_point(v)).collect();
        let mut order = Vec::with_capacity(n);
        for step in 0..n {
            let pick = if step + 1 == n {
                nest.iter().next().copied()
            } else {
                nest.iter().copied().find(|&v| Some(v) != last)
            };
            let v = pick.ok_or(Error::NotBetaAcyclic)?;
            nest.remove(&v);
            self.alive[v] = false;
            order.push(self.vertices[v]);

            let mut touched = BTreeSet::new();
            for &k in &self.incident[v] {
                self.traces[k].retain(|&u| u != v);
                touched.extend(self.traces[k].iter().copied());
            }
            for u in touched {
                if self.alive[u] {
                    self.incident[u].retain(|&k| !self.traces[k].is_empty());
                    if self.is_nest_point(u) {
                        nest.insert(u);
                    }
                }
            }
        }
        Ok(EliminationOrdering::new(order).expect("each vertex is eliminated once"))
    }
}

/// Compares two edges under the order induced by `ordering`: `e < f` iff the
/// largest vertex of the symmetric difference lies in `f`.
///
/// Ordering edges by their largest differing vertex is what makes the walk
/// sub-hypergraphs `H_e^x` keep every vertex `>= x` inside `e`: edges through
/// a nest point form a chain, and a subset must come before its supersets.
pub fn lex_compare(e: &Edge, f: &Edge, ordering: &EliminationOrdering) -> Ordering {
    compare_ranks(&ordering.ranks(e), &ordering.ranks(f))
}

/// Same order on ascending rank lists, compared from the top. A proper
/// suffix is the *smaller* edge, since the maximum of the difference then
/// belongs to the longer edge.
pub(crate) fn compare_ranks(a: &[usize], b: &[usize]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// The edges of a hypergraph sorted by the induced lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexEdgeOrder {
    edges: Vec<Edge>,
}

impl LexEdgeOrder {
    pub fn new(h: &Hypergraph, ordering: &EliminationOrdering) -> Self {
        let mut keyed: Vec<(Vec<usize>, Edge)> = h
            .edges()
            .iter()
            .map(|e| (ordering.ranks(e), e.clone()))
            .collect();
        keyed.sort_by(|a, b| compare_ranks(&a.0, &b.0));
        LexEdgeOrder {
            edges: keyed.into_iter().map(|(_, e)| e).collect(),
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn position(&self, e: &Edge) -> Option<usize> {
        self.edges.iter().position(|f| f == e)
    }
}

/// The sub-hypergraph `H_e^x`: edges reachable from `e` by walks that use
/// only edges `≤ e` and pass through vertices `≤ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubHypergraphHex {
    pub anchor_edge: Edge,
    pub anchor_vertex: VertexId,
    pub edges: Hypergraph,
}

impl SubHypergraphHex {
    /// Every vertex of the sub-hypergraph at or after the anchor vertex lies
    /// in the anchor edge.
    pub fn suffix_within_anchor(&self, ordering: &EliminationOrdering) -> bool {
        let rx = ordering.rank_of(self.anchor_vertex);
        self.edges
            .vertices()
            .into_iter()
            .filter(|&v| ordering.rank_of(v) >= rx)
            .all(|v| self.anchor_edge.contains(v))
    }
}

pub fn build_hex(
    h: &Hypergraph,
    ordering: &EliminationOrdering,
    e: &Edge,
    x: VertexId,
) -> SubHypergraphHex {
    let rx = ordering.rank_of(x);
    let re = ordering.ranks(e);
    let candidates: Vec<&Edge> = h
        .edges()
        .iter()
        .filter(|g| compare_ranks(&ordering.ranks(g), &re) != Ordering::Greater)
        .collect();
    let mut seen = vec![false; candidates.len()];
    let start = candidates
        .iter()
        .position(|g| *g == e)
        .expect("anchor edge belongs to the hypergraph");
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        let joints: Vec<VertexId> = candidates[k]
            .iter()
            .filter(|&v| ordering.rank_of(v) <= rx)
            .collect();
        for (l, g) in candidates.iter().enumerate() {
            if !seen[l] && joints.iter().any(|&v| g.contains(v)) {
                seen[l] = true;
                queue.push_back(l);
            }
        }
    }
    SubHypergraphHex {
        anchor_edge: e.clone(),
        anchor_vertex: x,
        edges: candidates
            .into_iter()
            .zip(seen)
            .filter(|&(_, s)| s)
            .map(|(g, _)| g.clone())
            .collect(),
    }
}
