//! Oracle-level identities on blocked transversals, shared by the property
//! tests and the acceptance target.
#![allow(dead_code)]

use mintrans::oracle::{enumerate_btr, gen_beta_acyclic, gen_random_hypergraph, GeneratorConfig};
use mintrans::{cross_union, Family, Hypergraph, VertexId, VertexSet};
use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A hypergraph together with a scope `S`, a block `B` and a pivot `x ∈ S`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub h: Hypergraph,
    pub s: VertexSet,
    pub b: VertexSet,
    pub x: VertexId,
}

/// Draws an instance with `|V(H)| ≤ 8` and `|B| ≤ 2`. Even seeds give
/// β-acyclic hypergraphs, odd seeds arbitrary ones.
pub fn random_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=8usize);
    let m = rng.random_range(1..=8usize);
    let density = rng.random_range(0.15..0.6);
    let cfg = GeneratorConfig::new(n, m, rng.random()).with_density(density);
    let mut h = if seed.is_multiple_of(2) {
        gen_beta_acyclic(&cfg)
    } else {
        gen_random_hypergraph(&cfg)
    };
    if h.vertices().is_empty() {
        h = Hypergraph::from_sets([vec![0u32]]);
    }
    let vs: Vec<VertexId> = h.vertices().into_iter().collect();
    let mut s: VertexSet = vs
        .iter()
        .copied()
        .filter(|_| rng.random_bool(0.7))
        .collect();
    let x = *vs.choose(&mut rng).unwrap();
    s.insert(x);
    let k = rng.random_range(0..=2usize);
    let b: VertexSet = vs.sample(&mut rng, k).copied().collect();
    Instance { h, s, b, x }
}

fn btr(h: &Hypergraph, b: &VertexSet, s: &VertexSet) -> Family {
    enumerate_btr(h, b, s).expect("instance within oracle bounds")
}

fn without(s: &VertexSet, x: VertexId) -> VertexSet {
    let mut s = s.clone();
    s.remove(&x);
    s
}

fn with(s: &VertexSet, x: VertexId) -> VertexSet {
    let mut s = s.clone();
    s.insert(x);
    s
}

fn singleton(x: VertexId) -> Family {
    std::iter::once(std::iter::once(x).collect()).collect()
}

fn containing(f: &Family, x: VertexId) -> Family {
    f.iter().filter(|t| t.contains(&x)).cloned().collect()
}

/// `H_1 = H \ H(x)` and `H_2 = H \ (H(B) ∩ H(x))`.
fn split(inst: &Instance) -> (Hypergraph, Hypergraph) {
    let hx = inst.h.edges_containing(inst.x);
    let h1 = inst.h.minus(&hx);
    let h2 = inst
        .h
        .minus(&inst.h.hitting_edges(&inst.b).intersection(&hx));
    (h1, h2)
}

fn ensure(ok: bool, what: &str, inst: &Instance) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{what} fails on {inst:?}"))
    }
}

/// Blocked transversals factor over the components of `H[S]`.
pub fn check_components(inst: &Instance) -> Result<(), String> {
    let Instance { h, s, b, .. } = inst;
    let parts: Vec<Family> = h
        .induce(s)
        .connected_components()
        .classes()
        .iter()
        .map(|c| btr(&h.filter(|e| c.contains_edge(&e.restrict(s))), b, s))
        .collect();
    ensure(
        btr(h, b, s) == cross_union(&parts),
        "component product",
        inst,
    )
}

/// Removing `x` from a blocked transversal containing it leaves a blocked
/// transversal of `H \ H(x)`.
pub fn check_inclusion(inst: &Instance) -> Result<(), String> {
    let (h1, _) = split(inst);
    let lhs = containing(&btr(&inst.h, &inst.b, &inst.s), inst.x);
    let rhs = cross_union(&[
        singleton(inst.x),
        btr(&h1, &inst.b, &without(&inst.s, inst.x)),
    ]);
    ensure(lhs.is_subset(&rhs), "inclusion", inst)
}

/// The extensions that fail are exactly the `(B ∪ {x})`-blocked transversals
/// of `H_2`.
pub fn check_difference(inst: &Instance) -> Result<(), String> {
    let (h1, h2) = split(inst);
    let s_x = without(&inst.s, inst.x);
    let with_x: Family = containing(&btr(&inst.h, &inst.b, &inst.s), inst.x);
    let extended = cross_union(&[singleton(inst.x), btr(&h1, &inst.b, &s_x)]);
    let lhs: Family = extended.difference(&with_x).cloned().collect();
    let rhs = cross_union(&[singleton(inst.x), btr(&h2, &with(&inst.b, inst.x), &s_x)]);
    ensure(lhs == rhs, "set difference", inst)
}

/// Blocked transversals split by whether they contain `x`.
pub fn check_disjoint_union(inst: &Instance) -> Result<(), String> {
    let all = btr(&inst.h, &inst.b, &inst.s);
    let with_x = containing(&all, inst.x);
    let without_x = btr(&inst.h, &inst.b, &without(&inst.s, inst.x));
    let disjoint = with_x.is_disjoint(&without_x);
    let union: Family = with_x.union(&without_x).cloned().collect();
    ensure(disjoint && union == all, "disjoint union", inst)
}

/// The counting identity driving the dynamic program.
pub fn check_count_identity(inst: &Instance) -> Result<(), String> {
    let (h1, h2) = split(inst);
    let s_x = without(&inst.s, inst.x);
    let lhs = btr(&inst.h, &inst.b, &inst.s).len() as i64;
    let rhs = btr(&inst.h, &inst.b, &s_x).len() as i64 + btr(&h1, &inst.b, &s_x).len() as i64
        - btr(&h2, &with(&inst.b, inst.x), &s_x).len() as i64;
    ensure(lhs == rhs, "count identity", inst)
}

/// Only the part of `B` inside the hypergraph matters.
pub fn check_block_restriction(inst: &Instance) -> Result<(), String> {
    let (h1, _) = split(inst);
    let ok = [&inst.h, &h1].into_iter().all(|g| {
        let inside: VertexSet = inst.b.intersection(&g.vertices()).copied().collect();
        btr(g, &inst.b, &inst.s) == btr(g, &inside, &inst.s)
    });
    ensure(ok, "block restriction", inst)
}

/// Blocked vertices never occur in a blocked transversal.
pub fn check_scope_minus_block(inst: &Instance) -> Result<(), String> {
    let s_b: VertexSet = inst.s.difference(&inst.b).copied().collect();
    ensure(
        btr(&inst.h, &inst.b, &inst.s) == btr(&inst.h, &inst.b, &s_b),
        "scope minus block",
        inst,
    )
}

/// Vertices outside the hypergraph can be dropped from the scope.
pub fn check_scope_outside(inst: &Instance) -> Result<(), String> {
    let (h1, _) = split(inst);
    ensure(
        btr(&h1, &inst.b, &inst.s) == btr(&h1, &inst.b, &without(&inst.s, inst.x)),
        "scope outside",
        inst,
    )
}

pub type Check = fn(&Instance) -> Result<(), String>;

pub const IDENTITIES: [(&str, Check); 8] = [
    ("component product", check_components),
    ("inclusion", check_inclusion),
    ("set difference", check_difference),
    ("disjoint union", check_disjoint_union),
    ("count identity", check_count_identity),
    ("block restriction", check_block_restriction),
    ("scope minus block", check_scope_minus_block),
    ("scope outside", check_scope_outside),
];
