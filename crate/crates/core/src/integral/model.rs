use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_preconditions, IntegralError};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::spectral::{laplacian, Cholesky};

pub const DEFAULT_EPSILON: f64 = 0.05;

/// Everything the Gaussian-type integral needs about one graph.
#[derive(Clone, Debug)]
pub struct IntegralModel {
    pub graph: Graph,
    pub epsilon: f64,
    pub q: Matrix<f64>,
    pub q_hat: Matrix<f64>,
    /// `W = Q̂⁻¹`.
    pub w: Matrix<f64>,
    /// `α_j = W_jj`.
    pub alpha: Vec<f64>,
    /// `β = Q α`.
    pub beta: Vec<f64>,
    pub chol: Cholesky,
    pub ln_det_q_hat: f64,
    /// Half-width `n^{−1/2+ε}` of the integration cube.
    pub box_radius: f64,
    /// `√((d_k+1)/2)`, the scaling between `ξ` and `θ` coordinates.
    pub theta_scale: Vec<f64>,
}

pub fn build_model(g: &Graph, epsilon: f64) -> Result<IntegralModel, IntegralError> {
    check_preconditions(g)?;
    if !(epsilon > 0.0 && epsilon <= 0.1) {
        return Err(IntegralError::BadEpsilon(epsilon));
    }
    let lap = laplacian(g);
    let q = lap.q_f64();
    let q_hat = lap.q_hat_f64();
    let chol = Cholesky::factor(&q_hat)?;
    let w = chol.inverse();
    let n = g.vertex_count();
    let alpha: Vec<f64> = (0..n).map(|j| w[(j, j)]).collect();
    let beta = q.mul_vec(&alpha);
    let box_radius = (n as f64).powf(-0.5 + epsilon);
    debug_assert!(box_radius > 0.0 && box_radius < PI / 2.0);
    let theta_scale = lap.degrees.iter().map(|&d| ((d as f64 + 1.0) / 2.0).sqrt()).collect();
    Ok(IntegralModel {
        graph: g.clone(),
        epsilon,
        ln_det_q_hat: chol.ln_det(),
        q,
        q_hat,
        w,
        alpha,
        beta,
        chol,
        box_radius,
        theta_scale,
    })
}

impl IntegralModel {
    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `R(ξ) = tr(Λ W Λ W)` with `Λ = diag(Q ξ)`.
    pub fn r_quadratic(&self, xi: &[f64]) -> f64 {
        let lam = self.q.mul_vec(xi);
        let n = self.n();
        let mut r = 0.0;
        for j in 0..n {
            if lam[j] == 0.0 {
                continue;
            }
            for k in 0..n {
                r += lam[j] * self.w[(j, k)] * lam[k] * self.w[(k, j)];
            }
        }
        r
    }

    /// `−(1/12) Σ_edges (ξ_j − ξ_k)⁴`.
    pub fn quartic(&self, xi: &[f64]) -> f64 {
        -self
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| (xi[u] - xi[v]).powi(4))
            .sum::<f64>()
            / 12.0
    }

    /// `ξᵀ β`.
    pub fn phase(&self, xi: &[f64]) -> f64 {
        xi.iter().zip(&self.beta).map(|(x, b)| x * b).sum()
    }

    /// Exponent of the integrand of `Int`:
    /// `i ξᵀβ − ½ ξᵀQ̂ξ − (1/12) Σ Δ⁴ + R(ξ)/2`.
    pub fn integrand_log_int(&self, xi: &[f64]) -> Complex64 {
        let re = -0.5 * self.q_hat.quadratic_form(xi) + self.quartic(xi) + 0.5 * self.r_quadratic(xi);
        Complex64::new(re, self.phase(xi))
    }

    pub fn in_box(&self, xi: &[f64]) -> bool {
        xi.iter().all(|x| x.abs() <= self.box_radius)
    }
}

/// `|x|_π = min_l |x + π l|`.
pub fn pi_distance(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    r.min(PI - r)
}

/// Membership in the dominant region: inside `[−π/2, π/2]^n` with every
/// pairwise `|ξ_j − ξ_k|_π` at most `radius`.
pub fn in_v0(xi: &[f64], radius: f64) -> bool {
    if xi.iter().any(|x| x.abs() > PI / 2.0) {
        return false;
    }
    xi.iter().enumerate().all(|(j, a)| xi[j + 1..].iter().all(|b| pi_distance(a - b) <= radius))
}
