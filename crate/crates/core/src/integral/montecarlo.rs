use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::sum::ComplexSum;
use super::{ln_int_prefactor, ln_s_prefactor, IntegralError, IntegralModel, IntegralResult, Method};
use crate::matrix::Matrix;
use crate::rng;
use crate::spectral::eigenvalues_symmetric;

pub const MIN_SAMPLES: u64 = 1_000;
/// Samples per reduction chunk. Chunk boundaries depend only on the sample
/// index, which keeps the reduction order fixed for any worker count.
pub const MC_CHUNK: u64 = 4_096;

/// Which terms of the exponent beyond `−½ ξᵀQ̂ξ` are switched on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Perturbations {
    pub oscillatory: bool,
    pub quartic: bool,
    pub quadratic: bool,
}

impl Perturbations {
    pub const ALL: Perturbations = Perturbations { oscillatory: true, quartic: true, quadratic: true };
    pub const NONE: Perturbations = Perturbations { oscillatory: false, quartic: false, quadratic: false };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxPolicy {
    /// The cube `|ξ_j| ≤ n^{−1/2+ε}`.
    Cube,
    /// All of `ℝⁿ`.
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub terms: Perturbations,
    pub region: BoxPolicy,
    pub workers: Option<usize>,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig { samples, seed, terms: Perturbations::ALL, region: BoxPolicy::Cube, workers: None }
    }
}

/// Importance-sampling estimate of `Int` with the default configuration.
pub fn mc_estimate_int(m: &IntegralModel, n_samples: u64, seed: u64) -> Result<IntegralResult, IntegralError> {
    mc_estimate_int_with(m, &McConfig::new(n_samples, seed))
}

fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, IntegralError> {
    match workers {
        Some(w) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| IntegralError::Pool(e.to_string()))?
            .install(f)),
        None => Ok(f()),
    }
}

/// Sums `weight(i, rng_i)` over sample indices in fixed chunks, merging the
/// chunk sums in index order.
fn chunked_sum<F>(samples: u64, workers: Option<usize>, weight: F) -> Result<(ComplexSum, u64), IntegralError>
where
    F: Fn(u64) -> Option<Complex64> + Sync,
{
    let chunks = samples.div_ceil(MC_CHUNK);
    let parts: Vec<(ComplexSum, u64)> = in_pool(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = ComplexSum::default();
                let mut accepted = 0;
                for i in c * MC_CHUNK..((c + 1) * MC_CHUNK).min(samples) {
                    match weight(i) {
                        Some(z) => {
                            accepted += 1;
                            acc.add(z);
                        }
                        None => acc.add(Complex64::new(0.0, 0.0)),
                    }
                }
                (acc, accepted)
            })
            .collect()
    })?;
    let mut total = ComplexSum::default();
    let mut accepted = 0;
    for (part, a) in &parts {
        total.merge(part);
        accepted += a;
    }
    Ok((total, accepted))
}

/// Importance sampling of `Int` with proposal density `∝ exp(−½ ξᵀQ̂ξ)`.
///
/// Sample `i` draws `z ~ N(0, I)` from substream `i` of the seed and sets
/// `ξ = L⁻ᵀ z` with `Q̂ = L Lᵀ`. Its weight is the remaining factor of the
/// integrand, zero outside the region. `Int ≈ Z · mean(weight)` with
/// `Z = (2π)^{n/2} / √det Q̂`.
pub fn mc_estimate_int_with(m: &IntegralModel, cfg: &McConfig) -> Result<IntegralResult, IntegralError> {
    if cfg.samples < MIN_SAMPLES {
        return Err(IntegralError::TooFewSamples { min: MIN_SAMPLES, got: cfg.samples });
    }
    let start = Instant::now();
    let n = m.n();
    let terms = cfg.terms;
    let region = cfg.region;

    let (sum, accepted) = chunked_sum(cfg.samples, cfg.workers, |i| {
        let mut rng = rng::substream(cfg.seed, i);
        let z: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let xi = m.chol.solve_upper(&z);
        if region == BoxPolicy::Cube && !m.in_box(&xi) {
            return None;
        }
        let mut re = 0.0;
        if terms.quartic {
            re += m.quartic(&xi);
        }
        if terms.quadratic {
            re += 0.5 * m.r_quadratic(&xi);
        }
        let im = if terms.oscillatory { m.phase(&xi) } else { 0.0 };
        Some(Complex64::new(re, im).exp())
    })?;
    if accepted == 0 {
        return Err(IntegralError::AllRejected);
    }

    let ln_z = 0.5 * n as f64 * (2.0 * PI).ln() - 0.5 * m.ln_det_q_hat;
    let z = ln_z.exp();
    let value = sum.mean() * z;
    let (sd_re, sd_im) = sum.std_dev();
    let root_n = (cfg.samples as f64).sqrt();
    let std_error = z * (sd_re * sd_re + sd_im * sd_im).sqrt() / root_n;

    let ln_ec_implied = ln_s_prefactor(&m.graph) + ln_int_prefactor(n, m.ln_det_q_hat) + value.re.ln();
    Ok(IntegralResult {
        value,
        std_error,
        samples: cfg.samples,
        accepted,
        ln_ec_implied,
        method: Method::MonteCarlo,
        grid_points: None,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Estimates `∫ exp(−½ ξᵀQ̂ξ) dξ` over `ℝⁿ` in the scaled coordinates
/// `θ_k = √((d_k+1)/2) ξ_k`, where the exponent is `−θᵀAθ` with
/// `A_jk = Q̂_jk / √((d_j+1)(d_k+1))`.
///
/// The proposal is isotropic, `θ ~ N(0, I / (2 a))` with `a = λ_min(A)`, so
/// weights `exp(−θᵀ(A − aI)θ)` stay bounded. The Jacobian
/// `Π 1/√((d_k+1)/2)` converts back to `ξ`. This shares no sampling path
/// with [`mc_estimate_int_with`], so it checks the normalization `Z`
/// independently.
pub fn mc_gaussian_normalization(
    m: &IntegralModel,
    samples: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<IntegralResult, IntegralError> {
    if samples < MIN_SAMPLES {
        return Err(IntegralError::TooFewSamples { min: MIN_SAMPLES, got: samples });
    }
    let start = Instant::now();
    let n = m.n();
    let s = &m.theta_scale;
    let a = Matrix::from_fn(n, n, |j, k| m.q_hat[(j, k)] / (2.0 * s[j] * s[k]));
    let a_min = eigenvalues_symmetric(&a)?[0];
    let shifted = a.sub(&Matrix::identity(n).scale(a_min));
    let sigma = (0.5 / a_min).sqrt();
    let ln_q_norm = 0.5 * n as f64 * (2.0 * PI * sigma * sigma).ln();

    let (sum, accepted) = chunked_sum(samples, workers, |i| {
        let mut rng = rng::substream(seed, i);
        let theta: Vec<f64> = (0..n).map(|_| sigma * rng.sample::<f64, _>(StandardNormal)).collect();
        Some(Complex64::new((ln_q_norm - shifted.quadratic_form(&theta)).exp(), 0.0))
    })?;

    let jacobian: f64 = s.iter().map(|v| 1.0 / v).product();
    let value = sum.mean() * jacobian;
    let (sd, _) = sum.std_dev();
    let std_error = jacobian * sd / (samples as f64).sqrt();
    Ok(IntegralResult {
        value,
        std_error,
        samples,
        accepted,
        ln_ec_implied: f64::NAN,
        method: Method::MonteCarlo,
        grid_points: None,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
