//! Laplacian spectra, exact matrix-tree counts and Tutte's directed-tree
//! minors.

mod dense;
mod exact;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::matrix::Matrix;

pub use dense::{
    condition_number_1, eigenvalues_symmetric, hs_norm, inf_norm, jacobi_eigen, logdet_expansion, norms,
    one_norm, Cholesky, EigenDecomposition, LogDetExpansion, Lu, Norms, JACOBI_MAX_SWEEPS, JACOBI_TOLERANCE,
};
pub use exact::{bareiss_determinant, integer_determinant, ln_bigint, rational_determinant};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col}), gap {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },
    #[error("log-determinant expansion needs ‖X‖₁ < 1, got {0}")]
    NotContractive(f64),
    #[error("expansion order must be at least 2, got {0}")]
    ExpansionOrder(usize),
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { min: usize, n: usize },
    #[error("root {root} out of range 1..={n}")]
    RootOutOfRange { root: usize, n: usize },
    #[error("weight matrix must be square with a zero diagonal")]
    BadWeights,
}

/// Laplacian `Q`, its rank-one completion `Q̂ = Q + J` and the degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianBundle {
    pub q: Matrix<i64>,
    pub q_hat: Matrix<i64>,
    pub degrees: Vec<i64>,
}

impl LaplacianBundle {
    pub fn q_f64(&self) -> Matrix<f64> {
        self.q.map(|&v| v as f64)
    }

    pub fn q_hat_f64(&self) -> Matrix<f64> {
        self.q_hat.map(|&v| v as f64)
    }
}

pub fn laplacian(g: &Graph) -> LaplacianBundle {
    let n = g.vertex_count();
    let mut q = Matrix::filled(n, n, 0i64);
    for &(u, v) in g.edges() {
        q[(u, v)] = -1;
        q[(v, u)] = -1;
    }
    let degrees: Vec<i64> = g.degrees().into_iter().map(|d| d as i64).collect();
    for (i, &d) in degrees.iter().enumerate() {
        q[(i, i)] = d;
    }
    let q_hat = q.map(|&v| v + 1);
    LaplacianBundle { q, q_hat, degrees }
}

/// Tolerance used when flagging γ-mixing.
pub const MIXING_SLACK: f64 = 1e-9;

/// Second-smallest Laplacian eigenvalue.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64, SpectralError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(SpectralError::TooFewVertices { min: 2, n });
    }
    Ok(eigenvalues_symmetric(&laplacian(g).q_f64())?[1])
}

/// `λ₂ ≥ γ n`, with `1e-9 · n` of slack.
pub fn is_gamma_mixing(g: &Graph, gamma: f64) -> Result<bool, SpectralError> {
    let n = g.vertex_count() as f64;
    Ok(algebraic_connectivity(g)? >= gamma * n - MIXING_SLACK * n)
}

/// Kirchhoff count `det M₁₁`; zero for disconnected graphs.
pub fn spanning_tree_count_exact(g: &Graph) -> BigInt {
    let n = g.vertex_count();
    if n == 0 {
        return BigInt::zero();
    }
    integer_determinant(&laplacian(g).q.minor(0, 0))
}

/// `det(Q + J)`, which equals `n² t(G)`.
pub fn det_qhat_exact(g: &Graph) -> BigInt {
    integer_determinant(&laplacian(g).q_hat)
}

/// Tutte's matrix for arc weights `w[j][k]` (arc `j → k`): `-w_jk` off the
/// diagonal and the out-weight sum on it.
pub fn tutte_matrix(weights: &Matrix<BigRational>) -> Result<Matrix<BigRational>, SpectralError> {
    let n = weights.rows();
    if !weights.is_square() || (0..n).any(|i| !weights[(i, i)].is_zero()) {
        return Err(SpectralError::BadWeights);
    }
    Ok(Matrix::from_fn(n, n, |j, k| {
        if j == k {
            (0..n).filter(|&r| r != j).map(|r| weights[(j, r)].clone()).sum()
        } else {
            -weights[(j, k)].clone()
        }
    }))
}

/// Principal minor of Tutte's matrix with the 1-based `root` row and column
/// removed: the weighted count of spanning trees directed toward `root`.
pub fn tutte_minor(weights: &Matrix<BigRational>, root: usize) -> Result<BigRational, SpectralError> {
    let n = weights.rows();
    if root == 0 || root > n {
        return Err(SpectralError::RootOutOfRange { root, n });
    }
    let a = tutte_matrix(weights)?;
    Ok(rational_determinant(&a.minor(root - 1, root - 1)))
}

/// Spectrum and tree count of a graph's Laplacian.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<f64>,
    pub lambda2: f64,
    pub lambda_max: f64,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub t_exact: BigInt,
    /// `ln t(G)` from `Σ_{i≥2} ln λ_i − ln n`.
    pub log_t: f64,
    pub gamma_observed: f64,
}

/// Eigenvalues below this (relative to `λ_max`) count as zero when taking
/// the spectral log tree count.
const ZERO_EIGEN: f64 = 1e-9;

pub fn spectral_summary(g: &Graph) -> Result<SpectralSummary, SpectralError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(SpectralError::TooFewVertices { min: 1, n });
    }
    let eigenvalues = eigenvalues_symmetric(&laplacian(g).q_f64())?;
    let lambda_max = *eigenvalues.last().unwrap();
    let lambda2 = eigenvalues.get(1).copied().unwrap_or(0.0);
    let cutoff = ZERO_EIGEN * lambda_max.max(1.0);
    let log_t = if eigenvalues[1..].iter().any(|&l| l <= cutoff) {
        f64::NEG_INFINITY
    } else {
        eigenvalues[1..].iter().map(|l| l.ln()).sum::<f64>() - (n as f64).ln()
    };
    Ok(SpectralSummary {
        lambda2,
        lambda_max,
        t_exact: spanning_tree_count_exact(g),
        log_t,
        gamma_observed: lambda2 / n as f64,
        eigenvalues,
    })
}

/// `ln t(G)`: exact for `n <= 64`, spectral beyond.
pub fn ln_spanning_trees(g: &Graph) -> Result<f64, SpectralError> {
    if g.vertex_count() <= EXACT_TREE_LIMIT {
        let t = spanning_tree_count_exact(g);
        Ok(if t.is_positive() { ln_bigint(&t) } else { f64::NEG_INFINITY })
    } else {
        Ok(spectral_summary(g)?.log_t)
    }
}

pub const EXACT_TREE_LIMIT: usize = 64;
