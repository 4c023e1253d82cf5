use mintrans::domination::{
    closed_neighborhood_hypergraph, count_minimal_dominating_sets,
    count_minimal_dominating_sets_with, Graph,
};
use mintrans::oracle::{enumerate_mtr, gen_interval_graph, gen_tree};
use mintrans::{BigCount, Counter, EngineOptions, Error, FillMode};
use proptest::prelude::*;

/// Minimal dominating sets counted straight from the graph, one closed
/// neighbourhood per vertex (twins give repeated neighbourhoods).
fn brute_force_mds(g: &Graph) -> usize {
    let n = g.num_vertices();
    let nbhd: Vec<u32> = (0..n)
        .map(|v| {
            g.closed_neighborhood(v)
                .iter()
                .fold(0u32, |acc, w| acc | 1 << w.index())
        })
        .collect();
    (0u32..1 << n)
        .filter(|&d| {
            nbhd.iter().all(|&nv| nv & d != 0)
                && (0..n)
                    .filter(|&v| d >> v & 1 == 1)
                    .all(|v| nbhd.iter().any(|&nw| nw & d == 1 << v))
        })
        .count()
}

fn oracle(g: &Graph) -> BigCount {
    BigCount::from(
        enumerate_mtr(&closed_neighborhood_hypergraph(g).hypergraph)
            .unwrap()
            .len(),
    )
}

fn check(g: &Graph) -> Result<(), TestCaseError> {
    let got = count_minimal_dominating_sets(g);
    prop_assert!(got.is_ok(), "rejected {:?}", g);
    let got = got.unwrap();
    prop_assert_eq!(&got, &oracle(g));
    prop_assert_eq!(got, BigCount::from(brute_force_mds(g)));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trees_match_oracle(n in 1usize..=12, seed in any::<u64>()) {
        check(&gen_tree(n, seed))?;
    }

    #[test]
    fn interval_graphs_match_oracle(n in 1usize..=12, seed in any::<u64>()) {
        check(&gen_interval_graph(n, seed))?;
    }

    #[test]
    fn eager_and_checked_agree(n in 1usize..=12, seed in any::<u64>()) {
        let g = gen_interval_graph(n, seed);
        let counter = Counter::new(EngineOptions { mode: FillMode::Eager, check_invariants: true, record_trace: false });
        let r = count_minimal_dominating_sets_with(&g, &counter).unwrap();
        prop_assert_eq!(r.count, oracle(&g));
    }
}

#[test]
fn twins_share_one_edge() {
    // K_3 plus a pendant vertex on 0: 1 and 2 are closed twins
    let mut g = Graph::new(4);
    for (u, v) in [(0, 1), (1, 2), (0, 2), (0, 3)] {
        g.add_edge(u, v).unwrap();
    }
    let nh = closed_neighborhood_hypergraph(&g);
    assert_eq!(nh.hypergraph.len(), 3);
    let k = (0..nh.hypergraph.len())
        .find(|&k| nh.twins(k).len() == 2)
        .unwrap();
    assert_eq!(nh.twins(k), &[1, 2]);
    assert_eq!(
        count_minimal_dominating_sets(&g).unwrap(),
        BigCount::from(brute_force_mds(&g))
    );
}

#[test]
fn cycles_beyond_triangles_are_rejected() {
    // C_6 is not chordal, so N[C_6] has no elimination ordering
    let mut g = Graph::new(6);
    for v in 0..6 {
        g.add_edge(v, (v + 1) % 6).unwrap();
    }
    assert_eq!(
        count_minimal_dominating_sets(&g),
        Err(Error::NotBetaAcyclic)
    );
}

#[test]
fn paths_match_brute_force_and_grow_past_machine_words() {
    let path = |n: usize| {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    };
    let small = [1u32, 2, 2, 4, 4, 7, 9, 13, 18, 25, 36, 49];
    for (n, &want) in (1..).zip(&small) {
        assert_eq!(
            count_minimal_dominating_sets(&path(n)).unwrap(),
            BigCount::from(want),
            "P_{n}"
        );
        assert_eq!(brute_force_mds(&path(n)), want as usize);
    }
    let big = count_minimal_dominating_sets(&path(400)).unwrap();
    assert!(big > BigCount::from(u64::MAX));
}
