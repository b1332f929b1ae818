#![allow(dead_code)]

use std::path::PathBuf;

use euler_census::{parse_graph, random_even_graph, Graph};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> Graph {
    let path = fixture_dir().join(format!("{name}.txt"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_graph(&text).unwrap()
}

/// Connected even-degree fixtures.
pub const EVEN_FIXTURES: [&str; 9] = ["k3", "c4", "k5", "bowtie", "octahedron", "k7", "k44", "c9", "k9"];

/// Even fixtures plus random even graphs at a few sizes.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = EVEN_FIXTURES.iter().map(|s| (s.to_string(), fixture(s))).collect();
    for n in [6, 10, 20, 40] {
        for seed in 0..5 {
            out.push((format!("random-{n}-{seed}"), random_even_graph(n, 0.5, seed).unwrap()));
        }
    }
    out
}

/// Random connected simple graph on `n` vertices from a tiny LCG, for tests
/// that must not depend on the library's generator.
pub fn lcg_connected_graph(n: usize, state: &mut u64) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if (*state >> 33) % 2 == 0 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

pub fn lcg_next(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 33
}

/// `ln(count)` of known circuit counts of small graphs (cyclic classes,
/// reversal distinct).
pub fn known_count(name: &str) -> Option<u64> {
    match name {
        "k3" | "c4" | "c9" => Some(2),
        "bowtie" => Some(4),
        "k5" => Some(264),
        "k7" => Some(129_976_320),
        _ => None,
    }
}

/// Circuit classes by plain enumeration: closed trails from vertex 0 using
/// every edge, divided by the `d_0/2` rotations of each class that start
/// at vertex 0.
pub fn naive_circuit_count(g: &Graph) -> u64 {
    fn walk(g: &Graph, at: usize, used: &mut Vec<bool>, left: usize) -> u64 {
        if left == 0 {
            return u64::from(at == 0);
        }
        let mut total = 0;
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if used[i] || (u != at && v != at) {
                continue;
            }
            used[i] = true;
            total += walk(g, if u == at { v } else { u }, used, left - 1);
            used[i] = false;
        }
        total
    }
    let mut used = vec![false; g.edge_count()];
    walk(g, 0, &mut used, g.edge_count()) / (g.degree(0) as u64 / 2)
}

/// Random rational arc weights `p/q` with `p ∈ 0..6`, `q ∈ 1..5`, zero
/// diagonal.
pub fn rational_weights(n: usize, state: &mut u64) -> euler_census::Matrix<num_rational::BigRational> {
    use num_bigint::BigInt;
    euler_census::Matrix::from_fn(n, n, |j, k| {
        let p = lcg_next(state) % 6;
        let q = lcg_next(state) % 4 + 1;
        if j == k {
            num_rational::BigRational::from_integer(BigInt::from(0))
        } else {
            num_rational::BigRational::new(BigInt::from(p), BigInt::from(q))
        }
    })
}

/// Random `n × n` matrix rescaled to the given max-column-sum norm.
pub fn contraction(n: usize, norm: f64, state: &mut u64) -> euler_census::Matrix<f64> {
    let raw = euler_census::Matrix::from_fn(n, n, |_, _| (lcg_next(state) % 2001) as f64 / 1000.0 - 1.0);
    let one = (0..n).map(|c| (0..n).map(|r| raw[(r, c)].abs()).sum::<f64>()).fold(0.0, f64::max);
    raw.scale(norm / one)
}
