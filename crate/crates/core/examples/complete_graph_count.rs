//! Exact circuit count of K_n next to the asymptotic formula.
//!
//! cargo run --release --example complete_graph_count -- 7

use euler_census::asymptotic::ln_ec_estimate;
use euler_census::enumeration::{count_eulerian_circuits, CountOptions};
use euler_census::spectral::ln_bigint;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let g = euler_census::complete_graph(n).expect("n >= 1");
    let formula = match ln_ec_estimate(&g) {
        Ok(e) => e.ln_ec,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let r = count_eulerian_circuits(&g, &CountOptions::default()).expect("count");
    let ln_exact = ln_bigint(&r.count);
    println!("K{n}: {} circuits, {} search nodes, {:?}", r.count, r.nodes_explored, r.elapsed);
    println!("ln exact {ln_exact:.6}, ln formula {formula:.6}, delta {:.6}", (ln_exact - formula).exp() - 1.0);
}
