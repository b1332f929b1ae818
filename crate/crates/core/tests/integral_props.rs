mod common;

use std::f64::consts::PI;

use euler_census::integral::{
    build_model, mc_estimate_int, mc_estimate_int_with, s_integrand, McConfig, Perturbations,
};
use euler_census::Matrix;

fn uniform(state: &mut u64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * (common::lcg_next(state) as f64 / (1u64 << 31) as f64)
}

#[test]
fn r_quadratic_matches_matrix_products() {
    let mut state = 3;
    for name in ["k5", "bowtie", "octahedron", "k7"] {
        let g = common::fixture(name);
        let m = build_model(&g, 0.05).unwrap();
        let n = g.vertex_count();
        for _ in 0..25 {
            let xi: Vec<f64> = (0..n).map(|_| uniform(&mut state, -0.5, 0.5)).collect();
            let lam = Matrix::diagonal(&m.q.mul_vec(&xi));
            let want = lam.matmul(&m.w).matmul(&lam).matmul(&m.w).trace();
            let got = m.r_quadratic(&xi);
            assert!((got - want).abs() <= 1e-10 * want.abs().max(1e-300), "{name}: {got} vs {want}");
        }
    }
}

#[test]
fn exponent_matches_term_by_term_evaluation() {
    let g = common::fixture("bowtie");
    let m = build_model(&g, 0.05).unwrap();
    let n = g.vertex_count();
    let mut state = 8;
    for _ in 0..100 {
        let xi: Vec<f64> = (0..n).map(|_| uniform(&mut state, -m.box_radius, m.box_radius)).collect();
        // ξᵀQ̂ξ = Σ_edges Δ² + (Σ ξ)²
        let total: f64 = xi.iter().sum();
        let gauss = g.edges().iter().map(|&(u, v)| (xi[u] - xi[v]).powi(2)).sum::<f64>() + total * total;
        let quartic: f64 = g.edges().iter().map(|&(u, v)| (xi[u] - xi[v]).powi(4)).sum::<f64>() / 12.0;
        let phase: f64 = xi.iter().zip(&m.beta).map(|(x, b)| x * b).sum();
        let z = m.integrand_log_int(&xi);
        let want_re = -0.5 * gauss - quartic + 0.5 * m.r_quadratic(&xi);
        assert!((z.re - want_re).abs() <= 1e-12 * want_re.abs().max(1.0));
        assert!((z.im - phase).abs() <= 1e-12 * phase.abs().max(1.0));
        assert!(z.re <= -0.5 * gauss * (1.0 - 4.0 / n as f64));
    }
}

#[test]
fn s_integrand_is_translation_invariant_mod_pi() {
    let mut state = 21;
    for name in ["k3", "c4", "bowtie", "k5"] {
        let g = common::fixture(name);
        let n = g.vertex_count();
        for _ in 0..100 {
            let xi: Vec<f64> = (0..n).map(|_| uniform(&mut state, -PI / 2.0, PI / 2.0)).collect();
            let t = uniform(&mut state, -PI, PI);
            let shifted: Vec<f64> = xi
                .iter()
                .map(|x| (x + t + PI / 2.0).rem_euclid(PI) - PI / 2.0)
                .collect();
            let a = s_integrand(&g, &xi);
            let b = s_integrand(&g, &shifted);
            assert!((a - b).norm() <= 1e-8 * a.norm().max(1.0), "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn s_integrand_at_origin_is_tree_count() {
    for name in ["k3", "c4", "bowtie", "k5", "octahedron"] {
        let g = common::fixture(name);
        let t = euler_census::spectral::spanning_tree_count_exact(&g).to_string().parse::<f64>().unwrap();
        let v = s_integrand(&g, &vec![0.0; g.vertex_count()]);
        assert!((v.re - t).abs() <= 1e-9 * t && v.im.abs() <= 1e-9 * t, "{name}");
    }
}

#[test]
fn monte_carlo_independent_of_worker_count() {
    let m = build_model(&common::fixture("octahedron"), 0.05).unwrap();
    let base = mc_estimate_int_with(&m, &McConfig { workers: Some(1), ..McConfig::new(50_000, 9) }).unwrap();
    for w in [2, 3, 5] {
        let r = mc_estimate_int_with(&m, &McConfig { workers: Some(w), ..McConfig::new(50_000, 9) }).unwrap();
        assert_eq!(r.value, base.value);
        assert_eq!(r.std_error, base.std_error);
    }
}

#[test]
fn standard_error_scales_with_root_samples() {
    let m = build_model(&common::fixture("k5"), 0.05).unwrap();
    for seed in 0..10 {
        let a = mc_estimate_int(&m, 20_000, seed).unwrap();
        let b = mc_estimate_int(&m, 40_000, seed).unwrap();
        let ratio = b.std_error / a.std_error;
        assert!((ratio * 2f64.sqrt() - 1.0).abs() <= 0.2, "seed {seed}: {ratio}");
    }
}

#[test]
fn oscillatory_term_vanishes_for_regular_graphs() {
    let m = build_model(&common::fixture("k5"), 0.05).unwrap();
    let on = mc_estimate_int(&m, 5_000, 2).unwrap();
    let cfg = McConfig {
        terms: Perturbations { oscillatory: false, ..Perturbations::ALL },
        ..McConfig::new(5_000, 2)
    };
    let off = mc_estimate_int_with(&m, &cfg).unwrap();
    assert!((on.value - off.value).norm() <= 1e-12 * off.value.norm());
    assert!(on.value.im.abs() <= 1e-12 * on.value.re);
}
