//! Brute-force ground truth.
//!
//! Everything here enumerates subsets directly from the definitions and is
//! only meant for small inputs. The generators produce reproducible random
//! instances from a 64-bit seed using ChaCha8 (`rand_chacha::ChaCha8Rng`).

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domination::Graph;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Family, Hypergraph, VertexId, VertexSet};
use crate::order::{find_elimination_ordering, EliminationOrdering};

/// Largest number of candidate vertices a subset scan accepts.
pub const ENUMERATION_LIMIT: usize = 24;

/// Subset scan over the vertices of `S ∩ V(H)`, with each edge as a bitmask
/// of its trace on that set.
struct Scan {
    universe: Vec<VertexId>,
    masks: Vec<u32>,
    blocked: Vec<bool>,
}

impl Scan {
    fn new(h: &Hypergraph, b: &VertexSet, s: &VertexSet) -> Result<Self> {
        let universe: Vec<VertexId> = h.vertices().intersection(s).copied().collect();
        if universe.len() > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                size: universe.len(),
                limit: ENUMERATION_LIMIT,
            });
        }
        let masks = h
            .edges()
            .iter()
            .map(|e| {
                universe
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| e.contains(**v))
                    .fold(0u32, |m, (k, _)| m | (1 << k))
            })
            .collect();
        let blocked = h.edges().iter().map(|e| e.meets(b)).collect();
        Ok(Scan {
            universe,
            masks,
            blocked,
        })
    }

    fn subsets(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.universe.len())
    }

    fn is_transversal(&self, t: u32) -> bool {
        self.masks.iter().all(|&m| m & t != 0)
    }

    /// Every member of `t` has an unblocked edge meeting `t` in it alone.
    fn all_private(&self, t: u32) -> bool {
        let mut private = 0u32;
        for (&m, &blocked) in self.masks.iter().zip(&self.blocked) {
            let hit = m & t;
            if !blocked && hit.count_ones() == 1 {
                private |= hit;
            }
        }
        private == t
    }

    fn to_set(&self, t: u32) -> VertexSet {
        self.universe
            .iter()
            .enumerate()
            .filter(|(k, _)| t & (1 << k) != 0)
            .map(|(_, &v)| v)
            .collect()
    }
}

/// All transversals of `h` contained in `s`.
pub fn enumerate_tr(h: &Hypergraph, s: &VertexSet) -> Result<Family> {
    let scan = Scan::new(h, &VertexSet::new(), s)?;
    Ok(scan
        .subsets()
        .filter(|&t| scan.is_transversal(t))
        .map(|t| scan.to_set(t))
        .collect())
}

/// All minimal transversals, as the transversals whose every vertex has a
/// private edge.
pub fn enumerate_mtr(h: &Hypergraph) -> Result<Family> {
    enumerate_btr(h, &VertexSet::new(), &h.vertices())
}

/// `B`-blocked transversals of `h` inside `s`: transversals of `h` that are
/// minimal transversals of `h \ h(B)`.
pub fn enumerate_btr(h: &Hypergraph, b: &VertexSet, s: &VertexSet) -> Result<Family> {
    let scan = Scan::new(h, b, s)?;
    Ok(scan
        .subsets()
        .filter(|&t| scan.is_transversal(t) && scan.all_private(t))
        .map(|t| scan.to_set(t))
        .collect())
}

/// The inclusion-minimal members of a family.
pub fn minimal_elements(family: &Family) -> Family {
    family
        .iter()
        .filter(|t| !family.iter().any(|u| u != *t && u.is_subset(t)))
        .cloned()
        .collect()
}

/// Members of `family` containing `x`.
pub fn containing(family: &Family, x: VertexId) -> Family {
    family.iter().filter(|t| t.contains(&x)).cloned().collect()
}

/// Parameters for the random instance generators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    /// Number of vertices.
    pub n: usize,
    /// Target number of edges; duplicates are merged so fewer may result.
    pub m: usize,
    pub seed: u64,
    /// Roughly the fraction of vertices an edge picks up, in `(0, 1]`.
    pub density: f64,
}

impl GeneratorConfig {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        GeneratorConfig {
            n,
            m,
            seed,
            density: 0.3,
        }
    }

    pub fn with_density(self, density: f64) -> Self {
        GeneratorConfig { density, ..self }
    }
}

fn comparable(a: &[u32], b: &[u32]) -> bool {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().all(|v| big.contains(v))
}

/// Random β-acyclic hypergraph built backwards along a random vertex
/// order, returned with that order.
///
/// Vertices are introduced from last to first. Each new vertex joins a random
/// inclusion chain of the partial edges built so far, and may open a new
/// edge, so the traces at its position always form a chain.
pub fn gen_beta_acyclic_with_ordering(cfg: &GeneratorConfig) -> (Hypergraph, EliminationOrdering) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<u32> = (0..cfg.n as u32).collect();
    order.shuffle(&mut rng);
    if cfg.m == 0 {
        return (
            Hypergraph::default(),
            EliminationOrdering::new(Vec::new()).expect("empty"),
        );
    }
    let density = cfg.density.clamp(f64::MIN_POSITIVE, 1.0);
    let mut partial: Vec<Vec<u32>> = Vec::new();
    for pos in (0..cfg.n).rev() {
        let v = order[pos];
        let mut candidates: Vec<usize> = (0..partial.len()).collect();
        candidates.shuffle(&mut rng);
        let mut chain: Vec<usize> = Vec::new();
        for k in candidates {
            if rng.random_bool(density)
                && chain.iter().all(|&c| comparable(&partial[c], &partial[k]))
            {
                chain.push(k);
            }
        }
        let open_slots = cfg.m - partial.len();
        let open_new = open_slots > 0
            && (chain.is_empty()
                || rng.random_bool((open_slots as f64 / (pos + 1) as f64).min(1.0)));
        if chain.is_empty() && !open_new {
            chain.push(rng.random_range(0..partial.len()));
        }
        for &k in &chain {
            partial[k].push(v);
        }
        if open_new {
            partial.push(vec![v]);
        }
    }
    let used: VertexSet = partial.iter().flatten().map(|&v| VertexId(v)).collect();
    let ordering = EliminationOrdering::new(
        order
            .into_iter()
            .map(VertexId)
            .filter(|v| used.contains(v))
            .collect(),
    )
    .expect("a permutation");
    (
        Hypergraph::new(partial.into_iter().map(Edge::new)),
        ordering,
    )
}

/// Random β-acyclic hypergraph; see [`gen_beta_acyclic_with_ordering`].
pub fn gen_beta_acyclic(cfg: &GeneratorConfig) -> Hypergraph {
    gen_beta_acyclic_with_ordering(cfg).0
}

/// Random hypergraph with `m` non-empty edges drawn independently, each
/// vertex kept with probability `density`. Not necessarily β-acyclic.
pub fn gen_random_hypergraph(cfg: &GeneratorConfig) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if cfg.n == 0 {
        return Hypergraph::default();
    }
    let density = cfg.density.clamp(0.0, 1.0);
    Hypergraph::new((0..cfg.m).map(|_| {
        let mut e: Vec<u32> = (0..cfg.n as u32)
            .filter(|_| rng.random_bool(density))
            .collect();
        if e.is_empty() {
            e.push(rng.random_range(0..cfg.n as u32));
        }
        Edge::new(e)
    }))
}

/// Rejection sampling: draws sparse random hypergraphs until one is
/// β-acyclic, giving up after `attempts` draws.
pub fn gen_beta_acyclic_rejection(cfg: &GeneratorConfig, attempts: usize) -> Option<Hypergraph> {
    (0..attempts as u64)
        .map(|k| {
            gen_random_hypergraph(&GeneratorConfig {
                seed: cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k),
                ..*cfg
            })
        })
        .find(|h| find_elimination_ordering(h).is_ok())
}

/// Uniform random recursive tree: vertex `v > 0` attaches to a random
/// earlier vertex.
pub fn gen_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        let p = rng.random_range(0..v);
        g.add_edge(p, v).expect("distinct endpoints");
    }
    g
}

/// Interval graph of `n` random intervals with integer endpoints.
pub fn gen_interval_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = (2 * n).max(1) as u32;
    let intervals: Vec<(u32, u32)> = (0..n)
        .map(|_| {
            let start = rng.random_range(0..span);
            let len = rng.random_range(0..=(span / 3).max(1));
            (start, start + len)
        })
        .collect();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (intervals[u], intervals[v]);
            if a.0 <= b.1 && b.0 <= a.1 {
                g.add_edge(u, v).expect("distinct endpoints");
            }
        }
    }
    g
}
