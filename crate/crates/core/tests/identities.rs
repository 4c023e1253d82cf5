mod common;

use std::cmp::Ordering;

use common::{random_instance, IDENTITIES};
use mintrans::oracle::{gen_beta_acyclic, gen_beta_acyclic_with_ordering, GeneratorConfig};
use mintrans::{
    build_hex, cross_union, find_elimination_ordering, lex_compare, verify_ordering, Engine,
    EngineOptions, Family, Hypergraph, LexEdgeOrder, VertexId, VertexSet,
};
use proptest::prelude::*;

fn vertex_set(max: u32) -> impl Strategy<Value = VertexSet> {
    prop::collection::btree_set((0..max).prop_map(VertexId), 0..max as usize)
}

fn hypergraph(max_vertex: u32, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    prop::collection::vec(prop::collection::vec(0..max_vertex, 0..5), 0..max_edges)
        .prop_map(Hypergraph::from_sets)
}

fn family(max_vertex: u32) -> impl Strategy<Value = Family> {
    prop::collection::btree_set(vertex_set(max_vertex), 0..4)
}

fn beta_instance() -> impl Strategy<Value = Hypergraph> {
    (1usize..=9, 1usize..=9, any::<u64>(), 0.1f64..0.7).prop_map(|(n, m, seed, d)| {
        gen_beta_acyclic(&GeneratorConfig::new(n, m, seed).with_density(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn blocked_transversal_identities(seed in any::<u64>()) {
        let inst = random_instance(seed);
        for (_, check) in IDENTITIES {
            if let Err(msg) = check(&inst) {
                return Err(TestCaseError::fail(msg));
            }
        }
    }

    #[test]
    fn induce_stays_inside_scope(h in hypergraph(8, 8), s in vertex_set(8)) {
        let induced = h.induce(&s);
        prop_assert!(induced.vertices().is_subset(&s));
        for e in induced.edges() {
            prop_assert!(h.edges().iter().any(|g| &g.restrict(&s) == e));
        }
        let parts = induced.connected_components();
        let classes = parts.classes();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                prop_assert!(a.vertices().is_disjoint(&b.vertices()));
            }
        }
        prop_assert_eq!(classes.iter().map(Hypergraph::len).sum::<usize>(), induced.len());
    }

    #[test]
    fn hitting_edges_distribute_over_union(h in hypergraph(8, 8), a in vertex_set(8), b in vertex_set(8)) {
        let ab: VertexSet = a.union(&b).copied().collect();
        prop_assert_eq!(h.hitting_edges(&ab), h.hitting_edges(&a).union(&h.hitting_edges(&b)));
    }

    #[test]
    fn cross_union_is_associative_and_commutative(a in family(6), b in family(6), c in family(6)) {
        let ab = cross_union(&[a.clone(), b.clone()]);
        prop_assert_eq!(&ab, &cross_union(&[b.clone(), a.clone()]));
        let bc = cross_union(&[b.clone(), c.clone()]);
        prop_assert_eq!(cross_union(&[ab, c.clone()]), cross_union(&[a.clone(), bc]));
        // the empty product {∅} is neutral
        prop_assert_eq!(cross_union(&[cross_union(&[]), a.clone()]), a);
    }

    #[test]
    fn cross_union_of_disjoint_singletons_multiplies(sizes in prop::collection::vec(1usize..4, 0..5)) {
        let mut next = 0u32;
        let families: Vec<Family> = sizes
            .iter()
            .map(|&k| {
                (0..k)
                    .map(|_| {
                        next += 1;
                        std::iter::once(VertexId(next)).collect::<VertexSet>()
                    })
                    .collect()
            })
            .collect();
        prop_assert_eq!(cross_union(&families).len(), sizes.iter().product::<usize>());
    }

    #[test]
    fn found_orderings_verify(h in beta_instance()) {
        let ord = find_elimination_ordering(&h).unwrap();
        prop_assert!(verify_ordering(&h, &ord));
        prop_assert_eq!(ord.len(), h.vertices().len());
    }

    #[test]
    fn construction_orderings_verify(n in 1usize..=12, m in 1usize..=12, seed in any::<u64>()) {
        let (h, ord) = gen_beta_acyclic_with_ordering(&GeneratorConfig::new(n, m, seed));
        prop_assert!(verify_ordering(&h, &ord));
        prop_assert!(verify_ordering(&h, &find_elimination_ordering(&h).unwrap()));
    }

    #[test]
    fn lex_order_is_total(h in beta_instance()) {
        let ord = find_elimination_ordering(&h).unwrap();
        let edges = h.edges();
        for e in edges {
            for f in edges {
                let ef = lex_compare(e, f, &ord);
                prop_assert_eq!(ef, lex_compare(f, e, &ord).reverse());
                prop_assert_eq!(ef == Ordering::Equal, e == f);
                for g in edges {
                    if ef != Ordering::Greater && lex_compare(f, g, &ord) != Ordering::Greater {
                        prop_assert_ne!(lex_compare(e, g, &ord), Ordering::Greater);
                    }
                }
            }
        }
        let sorted = LexEdgeOrder::new(&h, &ord);
        for w in sorted.edges().windows(2) {
            prop_assert_eq!(lex_compare(&w[0], &w[1], &ord), Ordering::Less);
        }
    }

    #[test]
    fn walk_hypergraphs_keep_late_vertices_in_anchor(h in beta_instance()) {
        let ord = find_elimination_ordering(&h).unwrap();
        for e in h.edges() {
            for &x in ord.order() {
                let hex = build_hex(&h, &ord, e, x);
                prop_assert!(hex.edges.contains_edge(e));
                prop_assert!(hex.suffix_within_anchor(&ord));
                // sub-hypergraphs of β-acyclic hypergraphs stay β-acyclic
                prop_assert!(find_elimination_ordering(&hex.edges).is_ok());
            }
        }
    }

    #[test]
    fn walk_hypergraphs_nest(h in beta_instance()) {
        let ord = find_elimination_ordering(&h).unwrap();
        let sorted = LexEdgeOrder::new(&h, &ord);
        let edges = sorted.edges();
        let order = ord.order();
        let hexes: Vec<Vec<Hypergraph>> = edges
            .iter()
            .map(|e| order.iter().map(|&x| build_hex(&h, &ord, e, x).edges).collect())
            .collect();
        for je in 0..edges.len() {
            for jf in je..edges.len() {
                for ix in 0..order.len() {
                    let below: VertexSet = order[..=ix].iter().copied().collect();
                    for iy in ix..order.len() {
                        let a = &hexes[je][ix];
                        let b = &hexes[jf][iy];
                        let shared = a.vertices().intersection(&b.vertices()).any(|v| below.contains(v));
                        if shared {
                            prop_assert!(a.is_subset(b), "e={} x={} f={} y={}", je, ix, jf, iy);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn engine_walk_hypergraphs_match_definition(h in beta_instance()) {
        let ord = find_elimination_ordering(&h).unwrap();
        let mut eng = Engine::new(&h, &ord, EngineOptions::default()).unwrap();
        for j in 0..eng.num_edges() {
            for i in 0..eng.num_vertices() {
                let want = build_hex(&h, &ord, &eng.edge(j), eng.vertex(i)).edges;
                prop_assert_eq!(eng.hex(i, j).unwrap(), want);
            }
        }
    }
}

#[test]
fn whole_hypergraph_is_the_top_walk_hypergraph() {
    for seed in 0..100u64 {
        let h = gen_beta_acyclic(&GeneratorConfig::new(9, 9, seed).with_density(0.5));
        for comp in h.connected_components().into_classes() {
            let ord = find_elimination_ordering(&comp).unwrap();
            let last_edge = LexEdgeOrder::new(&comp, &ord)
                .edges()
                .last()
                .unwrap()
                .clone();
            let last_vertex = *ord.order().last().unwrap();
            assert_eq!(
                build_hex(&comp, &ord, &last_edge, last_vertex).edges,
                comp,
                "seed {seed}"
            );
        }
    }
}
