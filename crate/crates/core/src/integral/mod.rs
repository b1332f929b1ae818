//! The integral route to the circuit count.
//!
//! `EC(G) = Π (d_j/2 − 1)! · 2^{|E|−n+1} π^{−n} S`, where `S` is an
//! n-dimensional integral over `[−π/2, π/2]^n` of a trigonometric polynomial
//! built from directed spanning trees. Two estimators live here:
//!
//! * [`quadrature_s`] evaluates `S` exactly (up to rounding) on small graphs;
//! * [`mc_estimate_int`] samples the Gaussian-type integral `Int` that
//!   approximates the dominant part of `S` for larger graphs.

mod model;
mod montecarlo;
mod quadrature;
mod sum;

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::asymptotic::ln_factorial;
use crate::graph::{Graph, ValidationReport};
use crate::spectral::SpectralError;

pub use model::{build_model, in_v0, pi_distance, IntegralModel, DEFAULT_EPSILON};
pub use montecarlo::{
    mc_estimate_int, mc_estimate_int_with, mc_gaussian_normalization, BoxPolicy, McConfig, Perturbations,
    MC_CHUNK, MIN_SAMPLES,
};
pub use quadrature::{quadrature_s, quadrature_s_at, s_integrand, QuadratureGrid, MAX_QUADRATURE_VERTICES};
pub use sum::{ComplexSum, NeumaierSum};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegralError {
    #[error("graph violates the integral preconditions: {0:?}")]
    Precondition(ValidationReport),
    #[error("epsilon must lie in (0, 0.1], got {0}")]
    BadEpsilon(f64),
    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { min: u64, got: u64 },
    #[error("every sample fell outside the integration box")]
    AllRejected,
    #[error("tensor quadrature supports n <= {max}, got {got}")]
    TooManyVertices { max: usize, got: usize },
    #[error("quadrature did not converge: relative change {change:e} at {points} points per axis")]
    NoConvergence { points: usize, change: f64 },
    #[error("grid needs at least 2 points per axis, got {0}")]
    BadGrid(usize),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

/// Estimate of `S` (quadrature) or `Int` (Monte Carlo).
#[derive(Clone, Debug, Serialize)]
pub struct IntegralResult {
    pub value: Complex64,
    /// `sqrt(se_re² + se_im²)`; zero for quadrature.
    pub std_error: f64,
    /// Grid points or Monte Carlo draws.
    pub samples: u64,
    /// Draws that landed inside the integration box.
    pub accepted: u64,
    /// `ln EC(G)` implied by the value through the prefactor chain.
    pub ln_ec_implied: f64,
    pub method: Method,
    /// Points per axis of the finest grid (quadrature only).
    pub grid_points: Option<usize>,
    pub elapsed_ms: u128,
}

impl IntegralResult {
    pub fn relative_std_error(&self) -> f64 {
        self.std_error / self.value.norm()
    }
}

/// `ln( Π (d_j/2 − 1)! · 2^{|E|−n+1} π^{−n} )`, the factor turning `S`
/// into `EC(G)`.
pub fn ln_s_prefactor(g: &Graph) -> f64 {
    let n = g.vertex_count() as f64;
    let m = g.edge_count() as f64;
    let facts: f64 = g.degrees().iter().map(|&d| ln_factorial((d / 2).saturating_sub(1) as u64)).sum();
    facts + (m - n + 1.0) * LN_2 - n * PI.ln()
}

/// `ln( 2^{−1/2} π^{1/2} n^{−1} det Q̂ )`, the factor turning `Int` into
/// the dominant part `S₀` of `S`.
pub fn ln_int_prefactor(n: usize, ln_det_q_hat: f64) -> f64 {
    -0.5 * LN_2 + 0.5 * PI.ln() - (n as f64).ln() + ln_det_q_hat
}

/// How an integral-route count compares with an exact count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConventionVerdict {
    Agrees,
    /// Integral gives twice the exact count: circuits counted with reversal
    /// identified on one side only.
    DoubleOfExact,
    HalfOfExact,
    Mismatch,
}

/// Classifies `exp(ln_integral − ln_exact)` against 1, 2 and 1/2 with the
/// given relative tolerance.
pub fn convention_probe(ln_integral: f64, ln_exact: f64, tolerance: f64) -> ConventionVerdict {
    let ratio = (ln_integral - ln_exact).exp();
    if (ratio - 1.0).abs() <= tolerance {
        ConventionVerdict::Agrees
    } else if (ratio / 2.0 - 1.0).abs() <= tolerance {
        ConventionVerdict::DoubleOfExact
    } else if (2.0 * ratio - 1.0).abs() <= tolerance {
        ConventionVerdict::HalfOfExact
    } else {
        ConventionVerdict::Mismatch
    }
}

/// One-line JSON run report.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub method: Method,
    pub n: usize,
    pub edges: usize,
    pub epsilon: Option<f64>,
    pub samples: u64,
    pub value_re: f64,
    pub value_im: f64,
    pub std_error: f64,
    pub ln_ec_implied: f64,
    pub elapsed_ms: u128,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(g: &Graph, result: &IntegralResult, epsilon: Option<f64>, seed: Option<u64>) -> Self {
        RunReport {
            method: result.method,
            n: g.vertex_count(),
            edges: g.edge_count(),
            epsilon,
            samples: result.samples,
            value_re: result.value.re,
            value_im: result.value.im,
            std_error: result.std_error,
            ln_ec_implied: result.ln_ec_implied,
            elapsed_ms: result.elapsed_ms,
            seed,
        }
    }
}

fn check_preconditions(g: &Graph) -> Result<(), IntegralError> {
    let report = crate::graph::validate(g);
    if !report.all_ok() || g.vertex_count() < 3 {
        return Err(IntegralError::Precondition(report));
    }
    Ok(())
}
