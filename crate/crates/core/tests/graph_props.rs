mod common;

use euler_census::graph::RANDOM_EVEN_ATTEMPTS;
use euler_census::{parse_graph, random_even_graph, validate, Graph, GraphError};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..12).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &b)| b).map(|(e, _)| *e);
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn handshake(g in arb_graph()) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph()) {
        let back = parse_graph(&g.to_edge_list()).unwrap();
        prop_assert_eq!(&back, &g);
    }

    #[test]
    fn odd_vertices_come_in_pairs(g in arb_graph()) {
        prop_assert_eq!(validate(&g).odd_vertices.len() % 2, 0);
    }
}

#[test]
fn random_even_graphs_are_valid() {
    for n in [6, 10, 20] {
        for seed in 0..1000 {
            let g = random_even_graph(n, 0.5, seed).unwrap();
            let r = validate(&g);
            assert!(r.all_ok(), "n={n} seed={seed}: {r:?}");
            assert_eq!(g.vertex_count(), n);
        }
    }
}

#[test]
fn random_even_graph_is_reproducible() {
    let a = random_even_graph(20, 0.5, 7).unwrap();
    let b = random_even_graph(20, 0.5, 7).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, random_even_graph(20, 0.5, 8).unwrap());
}

#[test]
fn sparse_generator_gives_up() {
    let err = random_even_graph(40, 1e-9, 3).unwrap_err();
    assert_eq!(err, GraphError::RetriesExhausted { attempts: RANDOM_EVEN_ATTEMPTS });
}

#[test]
fn fixture_validation() {
    for name in common::EVEN_FIXTURES {
        assert!(validate(&common::fixture(name)).all_ok(), "{name}");
    }
    let k4 = validate(&common::fixture("k4"));
    assert!(!k4.all_degrees_even && k4.is_connected);
    assert_eq!(k4.odd_vertices, vec![1, 2, 3, 4]);
    let two = validate(&common::fixture("two_triangles"));
    assert!(two.all_degrees_even && !two.is_connected);
    assert_eq!(two.component_count, 2);
}

#[test]
fn malformed_input_reports_line() {
    let err = parse_graph("3 3\n1 2\n2 x\n1 3\n").unwrap_err();
    assert!(matches!(err, GraphError::Malformed { line: 3, .. }), "{err:?}");
    assert!(parse_graph("3 2\n1 2\n1 2\n").is_err());
    assert!(parse_graph("3 1\n2 2\n").is_err());
    assert!(parse_graph("3 1\n1 4\n").is_err());
}
