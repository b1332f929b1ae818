//! Tensor-grid quadrature of `S`.
//!
//! The integrand `Π_edges cos Δ_jk · Σ_T Π_{(j,k)∈T} (1 + i tan Δ_jk)` equals
//! `Σ_T Π_{T} e^{iΔ} Π_{not T} cos Δ`, a trigonometric polynomial that is
//! π-periodic in every coordinate (each vertex has even degree). A
//! rectangle rule over one full period is therefore exact once the grid
//! resolves the polynomial's degree, whatever the offset of the grid.
//!
//! The tree sum is evaluated as a determinant: with `B_jk = −tan Δ_jk` on
//! edges and `B_jj = Σ_l tan Δ_jl`, summing Tutte's minors over every root
//! gives `det(Q̂ + iB)/n`, and each root contributes equally to `S`, so the
//! single-root sum integrates like `det(Q̂ + iB)/n²`.
//!
//! On a centred grid `Δ_jk` can hit exactly `±π/2`, where `tan` is
//! singular. Each axis is therefore shifted by its own fraction
//! `(j+1)/(2n+3)` of a cell, which keeps every difference of grid
//! coordinates away from `±π/2` for any number of points.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::sum::ComplexSum;
use super::{check_preconditions, ln_s_prefactor, IntegralError, IntegralResult, Method};
use crate::graph::Graph;
use crate::spectral::laplacian;

pub const MAX_QUADRATURE_VERTICES: usize = 4;
/// Stop refining once successive grids differ by less than this, relatively.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-3;
pub const MAX_DOUBLINGS: usize = 4;

/// Value of the `S` integrand at `ξ`, as the root-averaged tree sum times
/// `Π cos Δ`.
pub fn s_integrand(g: &Graph, xi: &[f64]) -> Complex64 {
    let n = g.vertex_count();
    let q_hat = laplacian(g).q_hat_f64();
    let mut mat: Vec<Complex64> = q_hat.as_slice().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut cos_prod = 1.0;
    for &(u, v) in g.edges() {
        let (s, c) = (xi[u] - xi[v]).sin_cos();
        cos_prod *= c;
        let t = s / c;
        mat[u * n + v].im -= t;
        mat[v * n + u].im += t;
        mat[u * n + u].im += t;
        mat[v * n + v].im -= t;
    }
    cos_prod * complex_det(&mut mat, n) / (n * n) as f64
}

/// Determinant by Gaussian elimination with partial pivoting; destroys `a`.
fn complex_det(a: &mut [Complex64], n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let mut p = k;
        for i in k + 1..n {
            if a[i * n + k].norm_sqr() > a[p * n + k].norm_sqr() {
                p = i;
            }
        }
        if a[p * n + k].norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let delta = f * a[k * n + j];
                a[i * n + j] -= delta;
            }
        }
    }
    det
}

/// Coordinates of a staggered periodic grid over `[−π/2, π/2]^n`.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub points_per_axis: usize,
    /// `axes[j][a]` is coordinate `a` on axis `j`.
    pub axes: Vec<Vec<f64>>,
    pub cell_width: f64,
}

impl QuadratureGrid {
    pub fn new(n: usize, points_per_axis: usize) -> Self {
        let h = PI / points_per_axis as f64;
        let axes = (0..n)
            .map(|j| {
                let shift = (j + 1) as f64 / (2 * n + 3) as f64;
                (0..points_per_axis).map(|a| -PI / 2.0 + (a as f64 + shift) * h).collect()
            })
            .collect();
        QuadratureGrid { points_per_axis, axes, cell_width: h }
    }
}

/// Rectangle-rule value of `S` on a single grid.
pub fn quadrature_s_at(g: &Graph, points_per_axis: usize) -> Result<Complex64, IntegralError> {
    check_preconditions(g)?;
    let n = g.vertex_count();
    if n > MAX_QUADRATURE_VERTICES {
        return Err(IntegralError::TooManyVertices { max: MAX_QUADRATURE_VERTICES, got: n });
    }
    if points_per_axis < 2 {
        return Err(IntegralError::BadGrid(points_per_axis));
    }
    let grid = QuadratureGrid::new(n, points_per_axis);
    let q_hat: Vec<Complex64> =
        laplacian(g).q_hat_f64().as_slice().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let edges = g.edges();
    let g_pts = points_per_axis;

    // one task per index on the first axis; partial sums merged in order
    let parts: Vec<ComplexSum> = (0..g_pts)
        .into_par_iter()
        .map(|a0| {
            let mut acc = ComplexSum::default();
            let mut idx = vec![0usize; n];
            idx[0] = a0;
            let mut xi = vec![0.0; n];
            let mut mat = q_hat.clone();
            let inner = g_pts.pow(n as u32 - 1);
            for _ in 0..inner {
                for j in 0..n {
                    xi[j] = grid.axes[j][idx[j]];
                }
                mat.copy_from_slice(&q_hat);
                let mut cos_prod = 1.0;
                for &(u, v) in edges {
                    let (s, c) = (xi[u] - xi[v]).sin_cos();
                    cos_prod *= c;
                    let t = s / c;
                    mat[u * n + v].im -= t;
                    mat[v * n + u].im += t;
                    mat[u * n + u].im += t;
                    mat[v * n + v].im -= t;
                }
                acc.add(cos_prod * complex_det(&mut mat, n));
                for j in 1..n {
                    idx[j] += 1;
                    if idx[j] < g_pts {
                        break;
                    }
                    idx[j] = 0;
                }
            }
            acc
        })
        .collect();
    let mut total = ComplexSum::default();
    for p in &parts {
        total.merge(p);
    }
    let volume = grid.cell_width.powi(n as i32);
    Ok(total.total() * volume / (n * n) as f64)
}

/// Quadrature of `S` refined by doubling.
///
/// Compares the grids with `points_per_axis / 2` and `points_per_axis`
/// points per axis; while they differ by more than `1e-3` relatively the
/// grid doubles, at most four times.
pub fn quadrature_s(g: &Graph, points_per_axis: usize) -> Result<IntegralResult, IntegralError> {
    check_preconditions(g)?;
    if points_per_axis < 4 {
        return Err(IntegralError::BadGrid(points_per_axis));
    }
    let start = Instant::now();
    let n = g.vertex_count();
    let mut coarse_pts = points_per_axis / 2;
    let mut coarse = quadrature_s_at(g, coarse_pts)?;
    let mut evaluated = (coarse_pts as u64).pow(n as u32);
    for _ in 0..=MAX_DOUBLINGS {
        let fine_pts = coarse_pts * 2;
        let fine = quadrature_s_at(g, fine_pts)?;
        evaluated += (fine_pts as u64).pow(n as u32);
        let change = (fine - coarse).norm() / fine.norm();
        if change < CONVERGENCE_TOLERANCE {
            return Ok(IntegralResult {
                value: fine,
                std_error: 0.0,
                samples: evaluated,
                accepted: evaluated,
                ln_ec_implied: ln_s_prefactor(g) + fine.re.ln(),
                method: Method::Quadrature,
                grid_points: Some(fine_pts),
                elapsed_ms: start.elapsed().as_millis(),
            });
        }
        if fine_pts >= points_per_axis << MAX_DOUBLINGS {
            return Err(IntegralError::NoConvergence { points: fine_pts, change });
        }
        coarse = fine;
        coarse_pts = fine_pts;
    }
    unreachable!("loop exits by return")
}
