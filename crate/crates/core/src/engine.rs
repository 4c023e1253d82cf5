//! Blocked-transversal dynamic program.
//!
//! With `x_1 < … < x_n` a β-elimination ordering and `e_1 < … < e_m` the
//! induced edge order, a state `(i, j, b)` stands for the number of
//! `B`-blocked transversals of `H_{e_j}^{x_i}` inside `[≤ x_i]`, where `B` is
//! empty or the single vertex `x_b` with `b > i`. The count of minimal
//! transversals of a connected hypergraph is the state `(n, m, ∅)`.
//!
//! Each state splits on `x_i`: the transversals avoiding `x_i`, plus those
//! built from `H' \ H'(x_i)`, minus the ones where `x_i` would have no private
//! edge. Every one of these three hypergraphs, traced on `[< x_i]`, falls apart
//! into connected components that are themselves `H_f^y[≤ y]` for some earlier
//! state, so each term is a product of table entries.
//!
//! Ranks are zero-based throughout this module.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, UnionFind, VertexId};
use crate::order::{
    compare_ranks, find_elimination_ordering, find_elimination_ordering_ending_with,
    verify_ordering, EliminationOrdering,
};

/// Arbitrary-precision count.
pub type BigCount = BigUint;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FillMode {
    /// Only states reachable from the final one are computed.
    #[default]
    Lazy,
    /// Every `(i, j)` pair is computed in increasing vertex rank.
    Eager,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineOptions {
    pub mode: FillMode,
    /// Re-derive every sub-hypergraph used by a decomposition and compare it
    /// against the component it replaces. Slower; meant for test suites.
    pub check_invariants: bool,
    pub record_trace: bool,
}

/// Table index. `block` is `None` for `B = ∅`, else the rank of the blocked
/// vertex, which is always greater than `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateKey {
    pub vertex: usize,
    pub edge: usize,
    pub block: Option<usize>,
}

impl StateKey {
    pub fn new(vertex: usize, edge: usize, block: Option<usize>) -> Self {
        StateKey {
            vertex,
            edge,
            block,
        }
    }
}

/// One term of the recursion: zero (some edge has an empty trace), or the
/// product of the listed states, one per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Zero,
    Product(Vec<StateKey>),
}

impl Decomposition {
    fn components(&self) -> Option<usize> {
        match self {
            Decomposition::Zero => None,
            Decomposition::Product(keys) => Some(keys.len()),
        }
    }
}

#[derive(Clone, Debug)]
struct Plan {
    /// `(subtract, term)`
    terms: Vec<(bool, Decomposition)>,
}

/// Debug record for one computed state. `terms[k]` is the number of
/// components of the k-th term, `None` when it short-circuited to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTrace {
    pub key: StateKey,
    pub terms: Vec<Option<usize>>,
}

/// Counters for the structural checks performed in checked mode.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckStats {
    /// Sub-hypergraphs verified to keep their late vertices inside the anchor.
    pub hex_checked: usize,
    /// Components whose recovered `(y, f)` reproduced them exactly.
    pub components_checked: usize,
    /// Components checked against a two-vertex block.
    pub double_blocks_checked: usize,
}

impl std::ops::AddAssign for CheckStats {
    fn add_assign(&mut self, o: Self) {
        self.hex_checked += o.hex_checked;
        self.components_checked += o.components_checked;
        self.double_blocks_checked += o.double_blocks_checked;
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::InternalInvariantViolation(msg.into())
}

/// The table and everything needed to fill it, for one hypergraph and one
/// β-elimination ordering.
pub struct Engine {
    options: EngineOptions,
    vertices: Vec<VertexId>,
    /// Edges as ascending rank lists, sorted by the induced edge order.
    edges: Vec<Vec<usize>>,
    /// For each vertex rank, the indices of the edges containing it, ascending.
    incident: Vec<Vec<usize>>,
    hex_cache: HashMap<(usize, usize), Arc<[usize]>>,
    table: HashMap<StateKey, BigCount>,
    filled: bool,
    stats: CheckStats,
    trace: Vec<StateTrace>,
}

impl Engine {
    /// Fails with [`Error::InvalidOrdering`] unless `ordering` is a
    /// β-elimination ordering of exactly `V(h)`.
    pub fn new(
        h: &Hypergraph,
        ordering: &EliminationOrdering,
        options: EngineOptions,
    ) -> Result<Self> {
        if !verify_ordering(h, ordering) {
            return Err(Error::InvalidOrdering);
        }
        let mut edges: Vec<Vec<usize>> = h.edges().iter().map(|e| ordering.ranks(e)).collect();
        edges.sort_by(|a, b| compare_ranks(a, b));
        let mut incident = vec![Vec::new(); ordering.len()];
        for (j, e) in edges.iter().enumerate() {
            for &v in e {
                incident[v].push(j);
            }
        }
        Ok(Engine {
            options,
            vertices: ordering.order().to_vec(),
            edges,
            incident,
            hex_cache: HashMap::new(),
            table: HashMap::new(),
            filled: false,
            stats: CheckStats::default(),
            trace: Vec::new(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, rank: usize) -> VertexId {
        self.vertices[rank]
    }

    /// The `j`-th edge in the induced order.
    pub fn edge(&self, j: usize) -> Edge {
        self.edges[j].iter().map(|&r| self.vertices[r]).collect()
    }

    pub fn states_computed(&self) -> usize {
        self.table.len()
    }

    pub fn stats(&self) -> CheckStats {
        self.stats
    }

    pub fn trace(&self) -> &[StateTrace] {
        &self.trace
    }

    fn contains(&self, edge: usize, rank: usize) -> bool {
        self.edges[edge].binary_search(&rank).is_ok()
    }

    /// `H_{e_j}^{x_i}` as sorted edge indices.
    fn hex_indices(&mut self, i: usize, j: usize) -> Result<Arc<[usize]>> {
        if let Some(h) = self.hex_cache.get(&(i, j)) {
            return Ok(h.clone());
        }
        let mut seen = vec![false; j + 1];
        seen[j] = true;
        let mut queue = VecDeque::from([j]);
        let mut found = vec![j];
        while let Some(g) = queue.pop_front() {
            for &v in self.edges[g].iter().take_while(|&&v| v <= i) {
                for &h in self.incident[v].iter().take_while(|&&h| h <= j) {
                    if !seen[h] {
                        seen[h] = true;
                        found.push(h);
                        queue.push_back(h);
                    }
                }
            }
        }
        found.sort_unstable();
        if self.options.check_invariants {
            let anchor = &self.edges[j];
            for &g in &found {
                for &v in self.edges[g].iter().filter(|&&v| v >= i) {
                    if anchor.binary_search(&v).is_err() {
                        return Err(violation(format!(
                            "H_e^x for (i={i}, j={j}) reaches rank {v} outside its anchor edge"
                        )));
                    }
                }
            }
            self.stats.hex_checked += 1;
        }
        let found: Arc<[usize]> = found.into();
        self.hex_cache.insert((i, j), found.clone());
        Ok(found)
    }

    /// `H_{e_j}^{x_i}` as a hypergraph.
    pub fn hex(&mut self, i: usize, j: usize) -> Result<Hypergraph> {
        let idx = self.hex_indices(i, j)?;
        Ok(idx.iter().map(|&g| self.edge(g)).collect())
    }

    /// Maps a block that does not occur in the state's hypergraph to `None`;
    /// such a block forbids nothing.
    pub fn canonical_key(&mut self, key: StateKey) -> Result<StateKey> {
        match key.block {
            None => Ok(key),
            Some(w) => {
                let hex = self.hex_indices(key.vertex, key.edge)?;
                let present = hex.iter().any(|&g| self.contains(g, w));
                Ok(StateKey {
                    block: present.then_some(w),
                    ..key
                })
            }
        }
    }

    /// States with `i = 0`, where `[≤ x_1]` is a single vertex.
    pub fn base_case(&mut self, edge: usize, block: Option<usize>) -> Result<BigCount> {
        let hex = self.hex_indices(0, edge)?;
        // T = {x_1} is the only candidate and must hit everything
        if hex.iter().any(|&g| !self.contains(g, 0)) {
            return Ok(BigCount::zero());
        }
        let private_free = match block {
            None => true,
            Some(w) => hex.iter().any(|&g| !self.contains(g, w)),
        };
        Ok(if private_free {
            BigCount::one()
        } else {
            BigCount::zero()
        })
    }

    /// Splits `sub` traced on `[< x]` into components and names, for each,
    /// the earlier state it equals, with `blocked` cut down to the vertices
    /// the component actually uses.
    pub fn decompose(
        &mut self,
        sub: &[usize],
        x: usize,
        blocked: &[usize],
    ) -> Result<Decomposition> {
        struct Group {
            edges: Vec<usize>,
            top_vertex: usize,
        }
        let mut uf = UnionFind::new(x);
        for &g in sub {
            let trace = &self.edges[g][..self.edges[g].partition_point(|&v| v < x)];
            match trace.split_first() {
                None => return Ok(Decomposition::Zero),
                Some((&first, rest)) => {
                    for &v in rest {
                        uf.union(first, v);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Group> = BTreeMap::new();
        for &g in sub {
            let e = &self.edges[g];
            let last_below = e[e.partition_point(|&v| v < x) - 1];
            let group = groups.entry(uf.find(e[0])).or_insert(Group {
                edges: Vec::new(),
                top_vertex: 0,
            });
            group.edges.push(g);
            group.top_vertex = group.top_vertex.max(last_below);
        }

        let mut keys = Vec::with_capacity(groups.len());
        for group in groups.into_values() {
            let y = group.top_vertex;
            let f = *group.edges.iter().max().expect("groups are non-empty");
            let present: Vec<usize> = blocked
                .iter()
                .copied()
                .filter(|&w| group.edges.iter().any(|&g| self.contains(g, w)))
                .collect();
            if blocked.len() > 1 {
                self.stats.double_blocks_checked += usize::from(self.options.check_invariants);
            }
            if present.len() > 1 {
                return Err(violation(format!(
                    "component with top vertex {y} and top edge {f} meets both blocked vertices {present:?}"
                )));
            }
            if self.options.check_invariants {
                self.check_component(&group.edges, x, y, f)?;
            }
            keys.push(StateKey::new(y, f, present.first().copied()));
        }
        Ok(Decomposition::Product(keys))
    }

    /// The component must be exactly `H_f^y`, and its traces on `[< x]` must
    /// be those of `H_f^y` on `[≤ y]`.
    fn check_component(&mut self, component: &[usize], x: usize, y: usize, f: usize) -> Result<()> {
        let mut sorted = component.to_vec();
        sorted.sort_unstable();
        let hex = self.hex_indices(y, f)?;
        if *hex != *sorted {
            return Err(violation(format!(
                "component {sorted:?} below rank {x} differs from H_f^y = {hex:?} for y={y}, f={f}"
            )));
        }
        let traces = |bound: &dyn Fn(usize) -> bool, edges: &[usize]| {
            let mut t: Vec<Vec<usize>> = edges
                .iter()
                .map(|&g| {
                    self.edges[g]
                        .iter()
                        .copied()
                        .filter(|&v| bound(v))
                        .collect()
                })
                .collect();
            t.sort();
            t.dedup();
            t
        };
        if traces(&|v| v < x, &sorted) != traces(&|v| v <= y, &hex) {
            return Err(violation(format!(
                "traces of the component below rank {x} differ from H_f^y[<= y] for y={y}, f={f}"
            )));
        }
        self.stats.components_checked += 1;
        Ok(())
    }

    fn plan(&mut self, key: StateKey) -> Result<Plan> {
        let StateKey {
            vertex: x,
            edge: j,
            block,
        } = key;
        let sub = self.hex_indices(x, j)?;
        let blocked: Vec<usize> = block.into_iter().collect();
        let keep_all = self.decompose(&sub, x, &blocked)?;
        if !sub.iter().any(|&g| self.contains(g, x)) {
            return Ok(Plan {
                terms: vec![(false, keep_all)],
            });
        }
        let without_x: Vec<usize> = sub
            .iter()
            .copied()
            .filter(|&g| !self.contains(g, x))
            .collect();
        let x_removed = self.decompose(&without_x, x, &blocked)?;
        let unprivate: Vec<usize> = sub
            .iter()
            .copied()
            .filter(|&g| !(self.contains(g, x) && blocked.iter().any(|&w| self.contains(g, w))))
            .collect();
        let mut with_x = blocked.clone();
        with_x.push(x);
        let x_blocked = self.decompose(&unprivate, x, &with_x)?;
        Ok(Plan {
            terms: vec![(false, keep_all), (false, x_removed), (true, x_blocked)],
        })
    }

    fn eval_term(&self, term: &Decomposition) -> Result<BigCount> {
        match term {
            Decomposition::Zero => Ok(BigCount::zero()),
            Decomposition::Product(keys) => {
                let mut acc = BigCount::one();
                for k in keys {
                    let v = self.table.get(k).ok_or_else(|| {
                        violation(format!("state {k:?} read before it was written"))
                    })?;
                    acc *= v;
                }
                Ok(acc)
            }
        }
    }

    fn eval_plan(&self, key: StateKey, plan: &Plan) -> Result<BigCount> {
        let mut plus = BigCount::zero();
        let mut minus = BigCount::zero();
        for (subtract, term) in &plan.terms {
            let v = self.eval_term(term)?;
            if *subtract {
                minus += v;
            } else {
                plus += v;
            }
        }
        if minus > plus {
            return Err(violation(format!("negative count at state {key:?}")));
        }
        Ok(plus - minus)
    }

    fn store(&mut self, key: StateKey, value: BigCount, plan: Option<&Plan>) -> Result<()> {
        if self.options.check_invariants && value > (BigCount::one() << (key.vertex + 1)) {
            return Err(violation(format!(
                "count at state {key:?} exceeds 2^{}",
                key.vertex + 1
            )));
        }
        if self.options.record_trace {
            self.trace.push(StateTrace {
                key,
                terms: plan
                    .map(|p| p.terms.iter().map(|(_, t)| t.components()).collect())
                    .unwrap_or_default(),
            });
        }
        self.table.insert(key, value);
        Ok(())
    }

    fn compute_now(&mut self, key: StateKey) -> Result<()> {
        if key.vertex == 0 {
            let v = self.base_case(key.edge, key.block)?;
            return self.store(key, v, None);
        }
        let plan = self.plan(key)?;
        let v = self.eval_plan(key, &plan)?;
        self.store(key, v, Some(&plan))
    }

    /// Memoized evaluation through an explicit stack, so depth is not bounded
    /// by the call stack.
    fn ensure(&mut self, root: StateKey) -> Result<()> {
        let mut plans: HashMap<StateKey, Plan> = HashMap::new();
        let mut stack = vec![root];
        while let Some(&key) = stack.last() {
            if self.table.contains_key(&key) {
                stack.pop();
                continue;
            }
            if key.vertex == 0 {
                stack.pop();
                self.compute_now(key)?;
                continue;
            }
            if let Entry::Vacant(slot) = plans.entry(key) {
                slot.insert(self.plan(key)?);
            }
            let missing: Vec<StateKey> = plans[&key]
                .terms
                .iter()
                .filter_map(|(_, t)| match t {
                    Decomposition::Product(keys) => Some(keys),
                    Decomposition::Zero => None,
                })
                .flatten()
                .filter(|k| !self.table.contains_key(k))
                .copied()
                .collect();
            if missing.iter().any(|k| k.vertex >= key.vertex) {
                return Err(violation(format!("state {key:?} depends on a later state")));
            }
            if missing.is_empty() {
                stack.pop();
                let plan = plans.remove(&key).expect("planned above");
                let v = self.eval_plan(key, &plan)?;
                self.store(key, v, Some(&plan))?;
            } else {
                stack.extend(missing);
            }
        }
        Ok(())
    }

    /// Fills every state in increasing vertex rank, then edge rank. Blocks
    /// are enumerated over the anchor edge's later vertices; any other block
    /// misses the state's hypergraph and equals the unblocked entry.
    pub fn fill_eager(&mut self) -> Result<()> {
        if self.filled {
            return Ok(());
        }
        for i in 0..self.num_vertices() {
            for j in 0..self.num_edges() {
                let blocks: Vec<Option<usize>> = std::iter::once(None)
                    .chain(self.edges[j].iter().copied().filter(|&w| w > i).map(Some))
                    .collect();
                for block in blocks {
                    let key = StateKey::new(i, j, block);
                    if !self.table.contains_key(&key) {
                        self.compute_now(key)?;
                    }
                }
            }
        }
        self.filled = true;
        Ok(())
    }

    /// The value of any state, computed on demand.
    pub fn state(&mut self, key: StateKey) -> Result<BigCount> {
        if key.vertex >= self.num_vertices()
            || key.edge >= self.num_edges()
            || key
                .block
                .is_some_and(|w| w <= key.vertex || w >= self.num_vertices())
        {
            return Err(violation(format!("state {key:?} is outside the table")));
        }
        let key = self.canonical_key(key)?;
        match self.options.mode {
            FillMode::Eager => self.fill_eager()?,
            FillMode::Lazy => self.ensure(key)?,
        }
        self.table
            .get(&key)
            .cloned()
            .ok_or_else(|| violation(format!("state {key:?} missing after fill")))
    }

    /// Counts `B`-blocked transversals of the edge set `sub` inside `[< x]`,
    /// as a product of table entries.
    pub fn decompose_and_multiply(
        &mut self,
        sub: &Hypergraph,
        x: usize,
        blocked: &[VertexId],
    ) -> Result<BigCount> {
        let rank: HashMap<VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(r, &v)| (v, r))
            .collect();
        let mut idx = Vec::with_capacity(sub.len());
        for e in sub.edges() {
            let mut r: Vec<usize> = e
                .iter()
                .map(|v| {
                    rank.get(&v)
                        .copied()
                        .ok_or_else(|| violation(format!("unknown vertex {v}")))
                })
                .collect::<Result<_>>()?;
            r.sort_unstable();
            let j = self
                .edges
                .iter()
                .position(|f| *f == r)
                .ok_or_else(|| violation("edge not in the hypergraph"))?;
            idx.push(j);
        }
        let blocked: Vec<usize> = blocked
            .iter()
            .map(|v| {
                rank.get(v)
                    .copied()
                    .ok_or_else(|| violation(format!("unknown vertex {v}")))
            })
            .collect::<Result<_>>()?;
        let term = self.decompose(&idx, x, &blocked)?;
        if let Decomposition::Product(keys) = &term {
            for &k in keys {
                self.state(k)?;
            }
        }
        self.eval_term(&term)
    }

    /// `#mtr` of the whole hypergraph. Requires it to be connected, since
    /// only then does the last state cover every edge.
    pub fn count(&mut self) -> Result<BigCount> {
        let (n, m) = (self.num_vertices(), self.num_edges());
        if m == 0 {
            return Ok(BigCount::one());
        }
        if n == 0 {
            // the only edge is empty
            return Ok(BigCount::zero());
        }
        if self.hex_indices(n - 1, m - 1)?.len() != m {
            return Err(violation(
                "engine root does not cover a disconnected hypergraph",
            ));
        }
        self.state(StateKey::new(n - 1, m - 1, None))
    }

    /// Minimal transversals containing the last vertex of the ordering: the
    /// second and third terms of the root split.
    pub fn count_containing_last(&mut self) -> Result<BigCount> {
        let (n, m) = (self.num_vertices(), self.num_edges());
        if n == 0 || m == 0 {
            return Ok(BigCount::zero());
        }
        if self.hex_indices(n - 1, m - 1)?.len() != m {
            return Err(violation(
                "engine root does not cover a disconnected hypergraph",
            ));
        }
        let root = StateKey::new(n - 1, m - 1, None);
        let plan = self.plan(root)?;
        let mut rest = plan.clone();
        rest.terms.remove(0);
        for (_, term) in &plan.terms {
            if let Decomposition::Product(keys) = term {
                for &k in keys {
                    self.state(k)?;
                }
            }
        }
        self.eval_plan(root, &rest)
    }
}

/// Result of a full counting run.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub count: BigCount,
    pub ordering: EliminationOrdering,
    pub components: usize,
    pub states_computed: usize,
    pub stats: CheckStats,
    pub trace: Vec<StateTrace>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Counter {
    pub options: EngineOptions,
}

impl Counter {
    pub fn new(options: EngineOptions) -> Self {
        Counter { options }
    }

    pub fn count(&self, h: &Hypergraph) -> Result<CountReport> {
        let ordering = find_elimination_ordering(h)?;
        self.count_with_ordering(h, &ordering)
    }

    /// Disconnected inputs are counted per component and multiplied.
    pub fn count_with_ordering(
        &self,
        h: &Hypergraph,
        ordering: &EliminationOrdering,
    ) -> Result<CountReport> {
        if !verify_ordering(h, ordering) {
            return Err(Error::InvalidOrdering);
        }
        let mut report = CountReport {
            count: BigCount::one(),
            ordering: ordering.clone(),
            components: 0,
            states_computed: 0,
            stats: CheckStats::default(),
            trace: Vec::new(),
        };
        if h.has_empty_edge() {
            report.count = BigCount::zero();
            return Ok(report);
        }
        for component in h.connected_components().into_classes() {
            let sub_order = ordering.restrict(&component.vertices());
            let mut engine = Engine::new(&component, &sub_order, self.options)?;
            report.count *= engine.count()?;
            report.components += 1;
            report.states_computed += engine.states_computed();
            report.stats += engine.stats();
            report.trace.append(&mut engine.trace);
        }
        Ok(report)
    }

    /// Number of minimal transversals containing `x`.
    pub fn count_containing(&self, h: &Hypergraph, x: VertexId) -> Result<BigCount> {
        find_elimination_ordering(h)?;
        if h.has_empty_edge() || !h.vertices().contains(&x) {
            return Ok(BigCount::zero());
        }
        let mut total = BigCount::one();
        for component in h.connected_components().into_classes() {
            if component.vertices().contains(&x) {
                let ordering = find_elimination_ordering_ending_with(&component, x)?;
                total *=
                    Engine::new(&component, &ordering, self.options)?.count_containing_last()?;
            } else {
                total *= self.count(&component)?.count;
            }
        }
        Ok(total)
    }
}

/// Number of minimal transversals of a β-acyclic hypergraph.
pub fn count_mtr(h: &Hypergraph) -> Result<BigCount> {
    Counter::default().count(h).map(|r| r.count)
}

/// Number of minimal transversals of a β-acyclic hypergraph that contain `x`.
pub fn count_mtr_containing(h: &Hypergraph, x: VertexId) -> Result<BigCount> {
    Counter::default().count_containing(h, x)
}
