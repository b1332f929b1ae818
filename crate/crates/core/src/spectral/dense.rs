//! Floating-point dense kernels: cyclic Jacobi, Cholesky, LU and the matrix
//! norms used to bound the integrals.

use super::SpectralError;
use crate::matrix::Matrix;

pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix<f64>,
    pub sweeps: usize,
}

fn check_symmetric(a: &Matrix<f64>) -> Result<(), SpectralError> {
    if !a.is_square() {
        return Err(SpectralError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let n = a.rows();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (a[(i, j)] - a[(j, i)]).abs();
            if gap > SYMMETRY_TOLERANCE * scale {
                return Err(SpectralError::NotSymmetric { row: i, col: j, gap });
            }
        }
    }
    Ok(())
}

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps stop once every off-diagonal magnitude is at most
/// `1e-12 * ‖A‖_F`.
pub fn jacobi_eigen(a: &Matrix<f64>) -> Result<EigenDecomposition, SpectralError> {
    check_symmetric(a)?;
    let n = a.rows();
    let mut m = a.clone();
    // symmetrize exactly so rotations see one value per pair
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    let mut v = Matrix::identity(n);
    let threshold = JACOBI_TOLERANCE * a.frobenius_norm();

    let off_max = |m: &Matrix<f64>| {
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max(m[(i, j)].abs());
            }
        }
        worst
    };

    let mut sweeps = 0;
    loop {
        let off = off_max(&m);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(SpectralError::NoConvergence { sweeps, residual: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                if t == 0.0 {
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors, sweeps })
}

/// Sorted spectrum of a symmetric matrix.
pub fn eigenvalues_symmetric(a: &Matrix<f64>) -> Result<Vec<f64>, SpectralError> {
    jacobi_eigen(a).map(|e| e.values)
}

/// Lower-triangular `L` with `A = L Lᵀ`.
#[derive(Clone, Debug)]
pub struct Cholesky {
    l: Matrix<f64>,
}

impl Cholesky {
    pub fn factor(a: &Matrix<f64>) -> Result<Self, SpectralError> {
        if !a.is_square() {
            return Err(SpectralError::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        let n = a.rows();
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > 0.0) {
                return Err(SpectralError::NotPositiveDefinite { pivot: j, value: d });
            }
            let djj = d.sqrt();
            l[(j, j)] = djj;
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(Cholesky { l })
    }

    pub fn lower(&self) -> &Matrix<f64> {
        &self.l
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    /// `ln det A = 2 Σ ln L_ii`.
    pub fn ln_det(&self) -> f64 {
        (0..self.dim()).map(|i| self.l[(i, i)].ln()).sum::<f64>() * 2.0
    }

    /// Solves `L y = b`.
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[(i, k)] * y[k];
            }
            y[i] = s / self.l[(i, i)];
        }
        y
    }

    /// Solves `Lᵀ x = y`.
    pub fn solve_upper(&self, y: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut x = y.to_vec();
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self.l[(k, i)] * x[k];
            }
            x[i] = s / self.l[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.solve_upper(&self.solve_lower(b))
    }

    pub fn inverse(&self) -> Matrix<f64> {
        let n = self.dim();
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        // symmetric by construction; remove rounding asymmetry
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (inv[(i, j)] + inv[(j, i)]);
                inv[(i, j)] = avg;
                inv[(j, i)] = avg;
            }
        }
        inv
    }
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: Matrix<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn factor(a: &Matrix<f64>) -> Result<Self, SpectralError> {
        if !a.is_square() {
            return Err(SpectralError::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let pivot = (k..n).max_by(|&i, &j| lu[(i, k)].abs().total_cmp(&lu[(j, k)].abs())).unwrap();
            if lu[(pivot, k)] == 0.0 {
                return Err(SpectralError::Singular);
            }
            if pivot != k {
                lu.swap_rows(pivot, k);
                perm.swap(pivot, k);
                sign = -sign;
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / lu[(k, k)];
                lu[(i, k)] = f;
                for j in k + 1..n {
                    lu[(i, j)] -= f * lu[(k, j)];
                }
            }
        }
        Ok(Lu { lu, perm, sign })
    }

    pub fn determinant(&self) -> f64 {
        (0..self.lu.rows()).map(|i| self.lu[(i, i)]).product::<f64>() * self.sign
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                x[i] -= self.lu[(i, k)] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                x[i] -= self.lu[(i, k)] * x[k];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> Matrix<f64> {
        let n = self.lu.rows();
        let mut inv = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = self.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}

/// Maximum absolute column sum.
pub fn one_norm(a: &Matrix<f64>) -> f64 {
    (0..a.cols()).map(|j| (0..a.rows()).map(|i| a[(i, j)].abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Maximum absolute row sum.
pub fn inf_norm(a: &Matrix<f64>) -> f64 {
    (0..a.rows()).map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Hilbert-Schmidt (Frobenius) norm.
pub fn hs_norm(a: &Matrix<f64>) -> f64 {
    a.frobenius_norm()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Norms {
    pub one: f64,
    pub inf: f64,
    /// Largest |eigenvalue|; only reported for symmetric input.
    pub two_bound: Option<f64>,
    pub hs: f64,
}

pub fn norms(a: &Matrix<f64>) -> Norms {
    let two_bound = eigenvalues_symmetric(a)
        .ok()
        .map(|ev| ev.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    Norms { one: one_norm(a), inf: inf_norm(a), two_bound, hs: hs_norm(a) }
}

/// `‖A‖₁ ‖A⁻¹‖₁`.
pub fn condition_number_1(a: &Matrix<f64>) -> Result<f64, SpectralError> {
    let inv = Lu::factor(a)?.inverse();
    Ok(one_norm(a) * one_norm(&inv))
}

/// Truncated log-determinant series for `det(I + X)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDetExpansion {
    /// `Σ_{r<m} (-1)^{r+1} tr(X^r) / r`.
    pub approx: f64,
    /// `(n/m) ‖X‖₁^m / (1 - ‖X‖₁)`.
    pub error_bound: f64,
}

pub fn logdet_expansion(x: &Matrix<f64>, m: usize) -> Result<LogDetExpansion, SpectralError> {
    if !x.is_square() {
        return Err(SpectralError::NotSquare { rows: x.rows(), cols: x.cols() });
    }
    if m < 2 {
        return Err(SpectralError::ExpansionOrder(m));
    }
    let norm = one_norm(x);
    if norm >= 1.0 {
        return Err(SpectralError::NotContractive(norm));
    }
    let n = x.rows();
    let mut power = x.clone();
    let mut approx = 0.0;
    for r in 1..m {
        let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
        approx += sign * power.trace() / r as f64;
        if r + 1 < m {
            power = power.matmul(x);
        }
    }
    let error_bound = (n as f64 / m as f64) * norm.powi(m as i32) / (1.0 - norm);
    Ok(LogDetExpansion { approx, error_bound })
}
