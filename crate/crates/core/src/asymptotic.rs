//! The closed-form estimate of the circuit count for even-degree graphs with
//! large algebraic connectivity, and the correction constants that make up
//! its `e^{K_ec}` factor.
//!
//! Counts overflow `f64` for modest `n`, so everything is kept in natural-log
//! space.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{validate, Graph, ValidationReport};
use crate::spectral::{self, laplacian, Cholesky, SpectralError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticError {
    #[error("graph violates the formula's preconditions: {0:?}")]
    Precondition(ValidationReport),
    #[error("complete-graph formula needs n >= 3, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `ln EC(G)` from the asymptotic formula, with its factors.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticEstimate {
    pub ln_ec: f64,
    pub k_ec: f64,
    /// Log of `2^{|E|-(n-1)/2} π^{-(n-1)/2} √t(G) Π (d_j/2 - 1)!`.
    pub ln_prefactor: f64,
    pub components: BTreeMap<String, f64>,
}

/// `K_ec = -¼ Σ_{edges} (1/(d_j+1) - 1/(d_k+1))²`.
pub fn k_ec(g: &Graph) -> f64 {
    let d = g.degrees();
    let s: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let x = 1.0 / (d[u] as f64 + 1.0) - 1.0 / (d[v] as f64 + 1.0);
            x * x
        })
        .sum();
    if s == 0.0 {
        0.0
    } else {
        -0.25 * s
    }
}

/// `ln k!` by direct summation.
pub fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

pub fn ln_ec_estimate(g: &Graph) -> Result<AsymptoticEstimate, AsymptoticError> {
    let report = validate(g);
    if !report.all_ok() {
        return Err(AsymptoticError::Precondition(report));
    }
    if g.vertex_count() < 3 {
        return Err(AsymptoticError::TooSmall(g.vertex_count()));
    }
    let n = g.vertex_count() as f64;
    let m = g.edge_count() as f64;
    let ln_t = spectral::ln_spanning_trees(g)?;

    let k = k_ec(g);
    let mut components = BTreeMap::new();
    components.insert("power_of_two".to_string(), (m - (n - 1.0) / 2.0) * LN_2);
    components.insert("power_of_pi".to_string(), -((n - 1.0) / 2.0) * PI.ln());
    components.insert("sqrt_spanning_trees".to_string(), 0.5 * ln_t);
    components.insert(
        "degree_factorials".to_string(),
        g.degrees().iter().map(|&d| ln_factorial(d as u64 / 2 - 1)).sum(),
    );
    let ln_prefactor = components.values().sum();
    components.insert("k_ec".to_string(), k);
    Ok(AsymptoticEstimate { ln_ec: k + ln_prefactor, k_ec: k, ln_prefactor, components })
}

/// The complete-graph specialization for `K_n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CompleteGraphEstimate {
    /// `-inf` when `vanishes`.
    pub ln_ec: f64,
    /// Even `n`: every degree is odd and there are no circuits.
    pub vanishes: bool,
}

pub fn ln_ec_complete(n: usize) -> Result<CompleteGraphEstimate, AsymptoticError> {
    if n < 3 {
        return Err(AsymptoticError::TooSmall(n));
    }
    if n % 2 == 0 {
        return Ok(CompleteGraphEstimate { ln_ec: f64::NEG_INFINITY, vanishes: true });
    }
    let nf = n as f64;
    let ln_ec = (nf - 1.0).powi(2) / 2.0 * LN_2 - (nf - 1.0) / 2.0 * PI.ln()
        + (nf - 2.0) / 2.0 * nf.ln()
        + nf * ln_factorial(((n - 1) / 2 - 1) as u64);
    Ok(CompleteGraphEstimate { ln_ec, vanishes: false })
}

/// Correction constants whose product accounts for the `e^{K_ec}` factor.
#[derive(Clone, Debug, Serialize)]
pub struct CorrectionConstants {
    /// `α_j = (Q̂⁻¹)_jj`.
    pub alpha: Vec<f64>,
    /// `β = Q α`.
    pub beta: Vec<f64>,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    /// `R_kk = tr(Λ(e_k) Q̂⁻¹ Λ(e_k) Q̂⁻¹)` with `Λ(x) = diag(Q x)`.
    pub r_diag: Vec<f64>,
}

impl CorrectionConstants {
    /// `ln(C₁C₂) + ½ Σ_edges (1/(d_j+1) − 1/(d_k+1))²`, which vanishes
    /// as `n` grows.
    pub fn c12_residual(&self, g: &Graph) -> f64 {
        (self.c1 * self.c2).ln() - 2.0 * k_ec(g)
    }
}

pub fn correction_constants(g: &Graph) -> Result<CorrectionConstants, AsymptoticError> {
    let lap = laplacian(g);
    let q = lap.q_f64();
    let w = Cholesky::factor(&lap.q_hat_f64())?.inverse();
    let n = g.vertex_count();
    let d: Vec<f64> = lap.degrees.iter().map(|&x| x as f64).collect();

    let alpha: Vec<f64> = (0..n).map(|j| w[(j, j)]).collect();
    let beta = q.mul_vec(&alpha);

    let mut s1 = 0.0;
    for k in 0..n {
        for j in k + 1..n {
            s1 += beta[k] * w[(j, k)] * beta[j];
        }
    }
    let c1 = (-s1).exp();
    let c2 = (-(0..n).map(|k| beta[k] * beta[k] / (2.0 * (d[k] + 1.0))).sum::<f64>()).exp();

    // Λ(e_k) = diag(column k of Q); only the support of that column matters.
    let r_diag: Vec<f64> = (0..n)
        .map(|k| {
            let support: Vec<usize> = (0..n).filter(|&j| q[(j, k)] != 0.0).collect();
            let mut r = 0.0;
            for &j in &support {
                for &l in &support {
                    r += q[(j, k)] * w[(j, l)] * q[(l, k)] * w[(l, j)];
                }
            }
            r
        })
        .collect();
    let c3 = (0..n).map(|k| r_diag[k] / (2.0 * (d[k] + 1.0))).sum::<f64>().exp();
    let c4 = (-0.25
        * g.edges()
            .iter()
            .map(|&(u, v)| {
                let x = 1.0 / (d[u] + 1.0) + 1.0 / (d[v] + 1.0);
                x * x
            })
            .sum::<f64>())
    .exp();

    Ok(CorrectionConstants { alpha, beta, c1, c2, c3, c4, r_diag })
}

/// Renders `exp(ln_value)` as a decimal mantissa and exponent without
/// overflowing, e.g. `2.640000e2`.
pub fn scientific_from_ln(ln_value: f64) -> String {
    if ln_value == f64::NEG_INFINITY {
        return "0".to_string();
    }
    if !ln_value.is_finite() {
        return format!("{ln_value}");
    }
    let log10 = ln_value / std::f64::consts::LN_10;
    let mut exponent = log10.floor();
    let mut mantissa = 10f64.powf(log10 - exponent);
    if mantissa >= 9.9999995 {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    format!("{mantissa:.6}e{exponent}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};

    fn bowtie() -> Graph {
        Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn k_ec_examples() {
        assert_eq!(k_ec(&complete_graph(7).unwrap()), 0.0);
        assert_eq!(k_ec(&cycle_graph(6).unwrap()), 0.0);
        // four edges join a degree-2 and the degree-4 vertex
        let expect = -0.25 * 4.0 * (1.0f64 / 3.0 - 1.0 / 5.0).powi(2);
        assert!((k_ec(&bowtie()) - expect).abs() < 1e-15);
        assert!((k_ec(&bowtie()) + 4.0 / 225.0).abs() < 1e-15);
    }

    #[test]
    fn triangle_and_square_estimates() {
        let k3 = ln_ec_estimate(&complete_graph(3).unwrap()).unwrap();
        let want = (4.0 * 3f64.sqrt() / PI).ln();
        assert!((k3.ln_ec - want).abs() < 1e-12, "{}", k3.ln_ec);

        let c4 = ln_ec_estimate(&cycle_graph(4).unwrap()).unwrap();
        let want = (2f64.powf(2.5) * 2.0 / PI.powf(1.5)).ln();
        assert!((c4.ln_ec - want).abs() < 1e-12, "{}", c4.ln_ec);
        assert!((c4.ln_ec - 0.708_9).abs() < 1e-4);
        assert_eq!(c4.ln_ec, c4.k_ec + c4.ln_prefactor);
    }

    #[test]
    fn estimate_rejects_odd_degrees() {
        assert!(matches!(
            ln_ec_estimate(&complete_graph(4).unwrap()),
            Err(AsymptoticError::Precondition(_))
        ));
    }

    #[test]
    fn complete_graph_formula() {
        let k3 = ln_ec_complete(3).unwrap();
        assert!((k3.ln_ec - (4.0 * 3f64.sqrt() / PI).ln()).abs() < 1e-12);
        let k5 = ln_ec_complete(5).unwrap();
        let want = (256.0 / (PI * PI) * 5f64.powf(1.5)).ln();
        assert!((k5.ln_ec - want).abs() < 1e-12);
        assert!((k5.ln_ec - 5.670).abs() < 1e-3);
        let k4 = ln_ec_complete(4).unwrap();
        assert!(k4.vanishes && k4.ln_ec == f64::NEG_INFINITY);
        assert!(ln_ec_complete(1).is_err());
    }

    #[test]
    fn vertex_transitive_constants() {
        let c = correction_constants(&complete_graph(5).unwrap()).unwrap();
        assert!(c.beta.iter().all(|b| b.abs() < 1e-9));
        assert!((c.c1 - 1.0).abs() < 1e-9 && (c.c2 - 1.0).abs() < 1e-9);

        let k3 = correction_constants(&complete_graph(3).unwrap()).unwrap();
        assert!((k3.c4 - (-1.0f64 / 3.0).exp()).abs() < 1e-14);
    }

    #[test]
    fn bowtie_residual_is_small() {
        let g = bowtie();
        let c = correction_constants(&g).unwrap();
        for v in [c.c1, c.c2, c.c3, c.c4] {
            assert!(v > 0.0 && v.is_finite());
        }
        assert!(c.c12_residual(&g).abs() < 1.0 / 5.0, "{}", c.c12_residual(&g));
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(scientific_from_ln(264f64.ln()), "2.640000e2");
        assert_eq!(scientific_from_ln(0.0), "1.000000e0");
        assert_eq!(scientific_from_ln(f64::NEG_INFINITY), "0");
        assert!(scientific_from_ln(5000.0).ends_with("e2171"));
    }
}
