//! Minkowski-norm validation and partition-of-unity norms.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Float;

use super::chart::ChartSpec;
use super::linalg::symmetric_eigenvalues;
use super::{check_len, DiffGeoError};

const WEIGHT_SUM_TOL: f64 = 1e-9;

type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A candidate norm: a scalar function on a `dim`-dimensional vector space.
/// Whether it actually satisfies the norm axioms is the job of
/// [`minkowski_check`].
#[derive(Clone)]
pub struct MinkowskiNorm {
    dim: usize,
    f: ScalarFn,
}

impl core::fmt::Debug for MinkowskiNorm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MinkowskiNorm")
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

impl MinkowskiNorm {
    pub fn from_fn<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        MinkowskiNorm {
            dim,
            f: Arc::new(f),
        }
    }

    /// The Euclidean norm `|v|`.
    pub fn euclidean(dim: usize) -> Self {
        MinkowskiNorm::from_fn(dim, |v| Float::sqrt(v.iter().map(|x| x * x).sum::<f64>()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, v: &[f64]) -> Result<f64, DiffGeoError> {
        check_len(self.dim, v.len())?;
        Ok((self.f)(v))
    }
}

/// Tolerances for [`minkowski_check`].
#[derive(Debug, Clone, Copy)]
pub struct NormCheckConfig {
    /// Relative bound on `|F(λv) − λF(v)|`, scaled by `1 + λF(v)`.
    pub homogeneity_tol: f64,
    /// Central-difference step for the Hessian of `F²/2`.
    pub hessian_step: f64,
}

impl Default for NormCheckConfig {
    fn default() -> Self {
        NormCheckConfig {
            homogeneity_tol: 1e-9,
            hessian_step: 1e-4,
        }
    }
}

/// Outcome of [`minkowski_check`], one flag and worst margin per axiom.
#[derive(Debug, Clone, PartialEq)]
pub struct NormCheckReport {
    pub non_negative: bool,
    /// Smallest value of `F` seen over the samples.
    pub min_value: f64,
    pub homogeneous: bool,
    /// Largest `|F(λv) − λF(v)| / (1 + λF(v))` over all pairs.
    pub worst_homogeneity: f64,
    pub positive_definite: bool,
    /// Smallest eigenvalue of the fundamental form over the samples.
    pub min_eigenvalue: f64,
}

impl NormCheckReport {
    pub fn passed(&self) -> bool {
        self.non_negative && self.homogeneous && self.positive_definite
    }
}

/// Checks the norm axioms on a sample: non-negativity, positive
/// 1-homogeneity within `homogeneity_tol`, and positive definiteness of the
/// fundamental form.
///
/// The fundamental form is the Hessian of `F²/2` by central differences;
/// the literal Hessian of `F` itself is singular along the ray through the
/// sample even for the Euclidean norm, so `F²/2` is the reading under test.
pub fn minkowski_check(
    norm: &MinkowskiNorm,
    samples: &[Vec<f64>],
    scales: &[f64],
    config: &NormCheckConfig,
) -> Result<NormCheckReport, DiffGeoError> {
    let dim = norm.dim();
    let mut min_value = f64::INFINITY;
    let mut worst_homogeneity = 0.0f64;
    let mut min_eigenvalue = f64::INFINITY;
    let h = config.hessian_step;

    for sample in samples {
        check_len(dim, sample.len())?;
        if sample.iter().all(|&x| x == 0.0) {
            return Err(DiffGeoError::ZeroSample);
        }
        let value = norm.eval(sample)?;
        min_value = min_value.min(value);

        for &scale in scales {
            let scaled: Vec<f64> = sample.iter().map(|x| x * scale).collect();
            let left = norm.eval(&scaled)?;
            let right = scale * value;
            let deviation = Float::abs(left - right) / (1.0 + right);
            worst_homogeneity = worst_homogeneity.max(deviation);
        }

        // Hessian of Q = F²/2 at the sample.
        let q = |v: &[f64]| -> Result<f64, DiffGeoError> {
            let f = norm.eval(v)?;
            Ok(0.5 * f * f)
        };
        let center = q(sample)?;
        let mut hessian = alloc::vec![alloc::vec![0.0; dim]; dim];
        let mut shifted = sample.clone();
        for i in 0..dim {
            shifted[i] = sample[i] + h;
            let plus = q(&shifted)?;
            shifted[i] = sample[i] - h;
            let minus = q(&shifted)?;
            shifted[i] = sample[i];
            hessian[i][i] = (plus - 2.0 * center + minus) / (h * h);
        }
        for i in 0..dim {
            for j in i + 1..dim {
                shifted[i] = sample[i] + h;
                shifted[j] = sample[j] + h;
                let pp = q(&shifted)?;
                shifted[j] = sample[j] - h;
                let pm = q(&shifted)?;
                shifted[i] = sample[i] - h;
                let mm = q(&shifted)?;
                shifted[j] = sample[j] + h;
                let mp = q(&shifted)?;
                shifted[i] = sample[i];
                shifted[j] = sample[j];
                let entry = (pp - pm - mp + mm) / (4.0 * h * h);
                hessian[i][j] = entry;
                hessian[j][i] = entry;
            }
        }
        let eigenvalues = symmetric_eigenvalues(&hessian)?;
        min_eigenvalue = min_eigenvalue.min(eigenvalues[0]);
    }

    Ok(NormCheckReport {
        non_negative: min_value >= 0.0,
        min_value,
        homogeneous: worst_homogeneity <= config.homogeneity_tol,
        worst_homogeneity,
        positive_definite: min_eigenvalue > 0.0,
        min_eigenvalue,
    })
}

/// A base-point-dependent weight for [`build_partition_norm`].
pub type WeightFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A weight that ignores the base point.
pub fn constant_weight(value: f64) -> WeightFn {
    Arc::new(move |_| value)
}

/// Combines per-manifold norms into one on the flattened chart:
/// `F(v) = Σ_i h_i(base) · F_i(v restricted to manifold i's block)`.
///
/// Weights must be non-negative and sum to 1 (within 1e-9) at the base
/// point and at every validation point. The result is a candidate norm;
/// validate it with [`minkowski_check`] rather than assuming the axioms.
pub fn build_partition_norm(
    chart: &ChartSpec,
    norms: &[MinkowskiNorm],
    weights: &[WeightFn],
    base: &[f64],
    validation_points: &[Vec<f64>],
) -> Result<MinkowskiNorm, DiffGeoError> {
    let s = chart.manifold_count();
    let d = chart.tangent_dimension();
    check_len(s, norms.len())?;
    check_len(s, weights.len())?;
    check_len(d, base.len())?;
    for (i, norm) in norms.iter().enumerate() {
        check_len(chart.dims()[i] as usize, norm.dim())?;
    }

    for point in core::iter::once(base).chain(validation_points.iter().map(Vec::as_slice)) {
        check_len(d, point.len())?;
        let mut sum = 0.0;
        for (index, weight) in weights.iter().enumerate() {
            let value = weight(point);
            if value < 0.0 {
                return Err(DiffGeoError::NegativeWeight { index, value });
            }
            sum += value;
        }
        if Float::abs(sum - 1.0) > WEIGHT_SUM_TOL {
            return Err(DiffGeoError::WeightSum { sum });
        }
    }

    let coefficients: Vec<f64> = weights.iter().map(|w| w(base)).collect();
    let blocks: Vec<Vec<usize>> = (0..s)
        .map(|i| chart.block_indices(i))
        .collect::<Result<_, _>>()?;
    let norms: Vec<MinkowskiNorm> = norms.to_vec();

    Ok(MinkowskiNorm::from_fn(d, move |v| {
        let mut total = 0.0;
        for ((coefficient, block), norm) in coefficients.iter().zip(&blocks).zip(&norms) {
            let restricted: Vec<f64> = block.iter().map(|&i| v[i]).collect();
            total += coefficient * (norm.f)(&restricted);
        }
        total
    }))
}
