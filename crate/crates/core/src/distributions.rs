//! Primitive distributions: factorized Gaussian sampling, log-density and
//! score, and the measure-valued derivative (MVD) triplets that decompose
//! the derivative of a Gaussian density into a scaled difference of two
//! proper distributions.
//!
//! A derivative of a density w.r.t. one scalar parameter `w` can be written
//! as `d p/d w = c (p+ - p-)`, where `p+`/`p-` are distributions and `c` a
//! positive constant. For a diagonal Gaussian the mean derivative uses a
//! Weibull(2, sqrt(2)) positive part mirrored around the mean, and the
//! standard-deviation derivative uses a double-sided Maxwell positive part
//! with a Gaussian negative part. Positive and negative samples share their
//! underlying draws (common random numbers), which lowers the variance of
//! paired estimates without touching their expectation.

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DistributionError {
    #[error("mean and scale must have equal length (got {mean_len} and {scale_len})")]
    LengthMismatch { mean_len: usize, scale_len: usize },
    #[error("scale[{index}] = {value} is not strictly positive")]
    NonPositiveScale { index: usize, value: f64 },
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// Parameters of a factorized (diagonal-covariance) Gaussian: a mean and a
/// per-coordinate standard deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagGaussianParams {
    mean: Vec<f64>,
    scale: Vec<f64>,
}

impl DiagGaussianParams {
    pub fn new(mean: Vec<f64>, scale: Vec<f64>) -> Result<Self, DistributionError> {
        if mean.len() != scale.len() {
            return Err(DistributionError::LengthMismatch {
                mean_len: mean.len(),
                scale_len: scale.len(),
            });
        }
        for (i, &s) in scale.iter().enumerate() {
            if !(s > 0.0) {
                return Err(DistributionError::NonPositiveScale { index: i, value: s });
            }
        }
        Ok(Self { mean, scale })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn scale(&self) -> &[f64] {
        &self.scale
    }
}

/// Draw one sample `mean + scale .* z` with `z` standard normal.
pub fn gaussian_sample<R: Rng + ?Sized>(params: &DiagGaussianParams, rng: &mut R) -> Vec<f64> {
    params
        .mean
        .iter()
        .zip(&params.scale)
        .map(|(&m, &s)| {
            let z: f64 = rng.sample(StandardNormal);
            m + s * z
        })
        .collect()
}

const LN_2PI: f64 = 1.8378770664093453;

/// Exact log-density of the factorized Gaussian.
pub fn gaussian_logpdf(x: &[f64], params: &DiagGaussianParams) -> f64 {
    assert_eq!(x.len(), params.dim(), "dimension mismatch");
    x.iter()
        .zip(&params.mean)
        .zip(&params.scale)
        .map(|((&xi, &m), &s)| {
            let z = (xi - m) / s;
            -0.5 * LN_2PI - s.ln() - 0.5 * z * z
        })
        .sum()
}

/// Gradient of [`gaussian_logpdf`] with respect to (mean, scale),
/// concatenated as a `2n` vector: mean block first, then scale block.
pub fn gaussian_score(x: &[f64], params: &DiagGaussianParams) -> Vec<f64> {
    assert_eq!(x.len(), params.dim(), "dimension mismatch");
    let n = params.dim();
    let mut out = vec![0.0; 2 * n];
    for i in 0..n {
        let d = x[i] - params.mean[i];
        let s = params.scale[i];
        out[i] = d / (s * s);
        out[n + i] = (d * d - s * s) / (s * s * s);
    }
    out
}

/// Inverse-CDF map from a uniform draw to a Weibull(shape k, scale lambda)
/// sample: `lambda * (-ln u)^(1/k)`.
pub fn weibull_from_uniform(shape: f64, scale: f64, u: f64) -> f64 {
    debug_assert!(shape > 0.0 && scale > 0.0);
    debug_assert!(u > 0.0 && u <= 1.0);
    scale * (-u.ln()).powf(1.0 / shape)
}

/// Weibull(shape, scale) sample by inverse CDF; no rejection, one uniform
/// consumed per call.
pub fn weibull_sample<R: Rng + ?Sized>(shape: f64, scale: f64, rng: &mut R) -> f64 {
    assert!(shape > 0.0 && scale > 0.0, "weibull parameters must be positive");
    // 1 - gen::<f64>() lies in (0, 1]; keeps ln finite.
    let u = 1.0 - rng.gen::<f64>();
    weibull_from_uniform(shape, scale, u)
}

/// Double-sided Maxwell sample: density x^2 exp(-x^2/2) / sqrt(2 pi) on the
/// whole real line. Drawn as a random sign times the magnitude of a
/// three-dimensional standard normal; exact and branch-free.
pub fn double_maxwell_sample<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let z1: f64 = rng.sample(StandardNormal);
    let z2: f64 = rng.sample(StandardNormal);
    let z3: f64 = rng.sample(StandardNormal);
    let magnitude = (z1 * z1 + z2 * z2 + z3 * z3).sqrt();
    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    sign * magnitude
}

/// Couple a double-sided Maxwell draw `m` into an exact standard normal by
/// multiplying with an independent Uniform[0,1]. Used as the negative part
/// of the scale triplet so both parts move together.
pub fn maxwell_to_gaussian_couple<R: Rng + ?Sized>(m: f64, rng: &mut R) -> f64 {
    m * rng.gen::<f64>()
}

/// Which distributional parameter a triplet differentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TripletParam {
    Mean,
    Scale,
}

/// MVD decomposition of the derivative of a diagonal Gaussian with respect
/// to one scalar parameter: a positive sampler, a negative sampler, and the
/// normalizing constant.
///
/// [`MvdTriplet::sample_pair`] draws a coupled pair: the positive and
/// negative samples share the Weibull/Maxwell draw and the base-Gaussian
/// draws of the untouched coordinates. [`MvdTriplet::sample_positive`] and
/// [`MvdTriplet::sample_negative`] draw independently.
#[derive(Debug, Clone)]
pub struct MvdTriplet {
    constant: f64,
    parameter_index: usize,
    which: TripletParam,
    params: DiagGaussianParams,
}

impl MvdTriplet {
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Index of the differentiated parameter within its block (coordinate k).
    pub fn parameter_index(&self) -> usize {
        self.parameter_index
    }

    fn base_sample_except_k<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let k = self.parameter_index;
        self.params
            .mean
            .iter()
            .zip(&self.params.scale)
            .enumerate()
            .map(|(i, (&m, &s))| {
                if i == k {
                    0.0
                } else {
                    let z: f64 = rng.sample(StandardNormal);
                    m + s * z
                }
            })
            .collect()
    }

    fn k_values<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let k = self.parameter_index;
        let (m, s) = (self.params.mean[k], self.params.scale[k]);
        match self.which {
            TripletParam::Mean => {
                let w = weibull_sample(2.0, std::f64::consts::SQRT_2, rng);
                (m + s * w, m - s * w)
            }
            TripletParam::Scale => {
                let mx = double_maxwell_sample(rng);
                let eps = maxwell_to_gaussian_couple(mx, rng);
                (m + s * mx, m + s * eps)
            }
        }
    }

    /// One coupled (positive, negative) pair sharing all underlying draws.
    pub fn sample_pair<R: Rng + ?Sized>(&self, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
        let base = self.base_sample_except_k(rng);
        let (pos_k, neg_k) = self.k_values(rng);
        let mut pos = base.clone();
        let mut neg = base;
        pos[self.parameter_index] = pos_k;
        neg[self.parameter_index] = neg_k;
        (pos, neg)
    }

    /// Independent draw from the positive component.
    pub fn sample_positive<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut x = self.base_sample_except_k(rng);
        x[self.parameter_index] = self.k_values(rng).0;
        x
    }

    /// Independent draw from the negative component.
    pub fn sample_negative<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut x = self.base_sample_except_k(rng);
        x[self.parameter_index] = self.k_values(rng).1;
        x
    }
}

/// MVD triplet for the mean parameter of coordinate `k`.
///
/// Constant `1/(sigma_k sqrt(2 pi))`; the positive part replaces coordinate
/// `k` by `mu_k + sigma_k W` with `W ~ Weibull(2, sqrt(2))`, the negative
/// part mirrors it to `mu_k - sigma_k W`.
pub fn mvd_triplet_mean(
    params: &DiagGaussianParams,
    k: usize,
) -> Result<MvdTriplet, DistributionError> {
    if k >= params.dim() {
        return Err(DistributionError::IndexOutOfRange {
            index: k,
            dim: params.dim(),
        });
    }
    Ok(MvdTriplet {
        constant: 1.0 / (params.scale[k] * (2.0 * std::f64::consts::PI).sqrt()),
        parameter_index: k,
        which: TripletParam::Mean,
        params: params.clone(),
    })
}

/// MVD triplet for the standard-deviation parameter of coordinate `k`.
///
/// Constant `1/sigma_k`; the positive part replaces coordinate `k` by
/// `mu_k + sigma_k M` with `M` double-sided Maxwell, the negative part uses
/// the coupled Gaussian `mu_k + sigma_k (M U)`.
pub fn mvd_triplet_scale(
    params: &DiagGaussianParams,
    k: usize,
) -> Result<MvdTriplet, DistributionError> {
    if k >= params.dim() {
        return Err(DistributionError::IndexOutOfRange {
            index: k,
            dim: params.dim(),
        });
    }
    Ok(MvdTriplet {
        constant: 1.0 / params.scale[k],
        parameter_index: k,
        which: TripletParam::Scale,
        params: params.clone(),
    })
}

/// Sample from a symmetric Dirichlet with the given concentration: `n`
/// Gamma(concentration, 1) draws normalized to the simplex.
pub fn dirichlet_symmetric_sample<R: Rng + ?Sized>(
    n: usize,
    concentration: f64,
    rng: &mut R,
) -> Vec<f64> {
    assert!(n >= 1, "need at least one dimension");
    assert!(concentration > 0.0, "concentration must be positive");
    if n == 1 {
        return vec![1.0];
    }
    let gamma = rand_distr::Gamma::new(concentration, 1.0).expect("valid gamma");
    let mut draws: Vec<f64> = (0..n).map(|_| rng.sample(gamma)).collect();
    let total: f64 = draws.iter().sum();
    if total <= 0.0 {
        // all-zero draws are possible only by extreme underflow
        return vec![1.0 / n as f64; n];
    }
    for d in &mut draws {
        *d /= total;
    }
    draws
}
