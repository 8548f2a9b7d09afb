//! Chart shapes and the flattened coordinate indexing.

use alloc::vec::Vec;

use super::{check_len, DiffGeoError};

/// The shape of a chart where `s` manifolds of dimensions `dims[0] <= ... <=
/// dims[s-1]` meet along a shared `shat`-dimensional piece.
///
/// Coordinates flatten as: shared coordinates `0..shat` first, then each
/// manifold's tail `shat..dims[i]` in manifold order. The flat space has
/// dimension `D = shat + sum(dims[i] - shat)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartSpec {
    dims: Vec<u32>,
    shat: u32,
}

impl ChartSpec {
    pub fn new(dims: Vec<u32>, shat: u32) -> Result<Self, DiffGeoError> {
        if dims.is_empty() {
            return Err(DiffGeoError::EmptyDims);
        }
        if dims.windows(2).any(|w| w[0] > w[1]) {
            return Err(DiffGeoError::UnsortedDims);
        }
        let min_dim = dims[0];
        if shat < 1 || shat > min_dim {
            return Err(DiffGeoError::SharedDimOutOfRange { shat, min_dim });
        }
        Ok(ChartSpec { dims, shat })
    }

    /// A single manifold of dimension `n`; every operation reduces to the
    /// classical one-manifold case. The shared dimension is 1 so that flat
    /// indices coincide with the manifold's own coordinates and collapsing a
    /// one-row coordinate matrix returns the row unchanged.
    pub fn single(n: u32) -> Result<Self, DiffGeoError> {
        ChartSpec::new(alloc::vec![n], 1)
    }

    pub fn manifold_count(&self) -> usize {
        self.dims.len()
    }

    pub fn shared_dim(&self) -> u32 {
        self.shat
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Dimension of the flattened tangent space.
    pub fn tangent_dimension(&self) -> usize {
        let shared = self.shat as usize;
        shared
            + self
                .dims
                .iter()
                .map(|&n| n as usize - shared)
                .sum::<usize>()
    }

    /// Dimension of the space of (r, s)-tensors: `D^(r+s)`.
    pub fn tensor_space_dimension(&self, r: u32, s_count: u32) -> Result<u128, DiffGeoError> {
        let d = self.tangent_dimension() as u128;
        let mut out: u128 = 1;
        for _ in 0..(r + s_count) {
            out = out.checked_mul(d).ok_or(DiffGeoError::Overflow)?;
        }
        Ok(out)
    }

    /// Flat index of coordinate `coordinate` (0-based) of manifold
    /// `manifold`. Shared coordinates map to the same index for every
    /// manifold.
    pub fn flat_index(&self, manifold: usize, coordinate: u32) -> Result<usize, DiffGeoError> {
        let n = *self
            .dims
            .get(manifold)
            .ok_or(DiffGeoError::IndexOutOfRange {
                manifold,
                coordinate,
            })?;
        if coordinate >= n {
            return Err(DiffGeoError::IndexOutOfRange {
                manifold,
                coordinate,
            });
        }
        if coordinate < self.shat {
            return Ok(coordinate as usize);
        }
        let shared = self.shat as usize;
        let tail_offset: usize = self.dims[..manifold]
            .iter()
            .map(|&d| d as usize - shared)
            .sum();
        Ok(shared + tail_offset + (coordinate as usize - shared))
    }

    /// Flat indices of all coordinates of one manifold: the shared block
    /// followed by its tail.
    pub fn block_indices(&self, manifold: usize) -> Result<Vec<usize>, DiffGeoError> {
        let n = *self
            .dims
            .get(manifold)
            .ok_or(DiffGeoError::IndexOutOfRange {
                manifold,
                coordinate: 0,
            })?;
        (0..n).map(|c| self.flat_index(manifold, c)).collect()
    }
}

/// A tangent vector as coefficients over the flattened basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    chart: ChartSpec,
    coeffs: Vec<f64>,
}

impl TangentVector {
    pub fn new(chart: ChartSpec, coeffs: Vec<f64>) -> Result<Self, DiffGeoError> {
        check_len(chart.tangent_dimension(), coeffs.len())?;
        Ok(TangentVector { chart, coeffs })
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// Entrywise product sum of two equally shaped matrices.
pub fn matrix_inner(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64, DiffGeoError> {
    if a.len() != b.len() {
        return Err(DiffGeoError::ShapeMismatch);
    }
    let mut total = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        if ra.len() != rb.len() {
            return Err(DiffGeoError::ShapeMismatch);
        }
        for (x, y) in ra.iter().zip(rb) {
            total += x * y;
        }
    }
    Ok(total)
}

/// Collapses an `s x max(dims)` coordinate matrix to flat coefficients.
///
/// Row `i` holds the components seen from manifold `i`; entries at or beyond
/// `dims[i]` must be zero. A shared column `l < shat` collapses to
/// `sum_i vmat[i][l] / shat`; tail entries pass through unchanged.
pub fn vector_from_matrix(
    chart: &ChartSpec,
    vmat: &[Vec<f64>],
) -> Result<TangentVector, DiffGeoError> {
    let s = chart.manifold_count();
    check_len(s, vmat.len())?;
    let width = *chart.dims().last().expect("chart is non-empty") as usize;
    let shared = chart.shared_dim() as usize;
    let mut coeffs = alloc::vec![0.0; chart.tangent_dimension()];
    for (i, row) in vmat.iter().enumerate() {
        check_len(width, row.len())?;
        let n = chart.dims()[i] as usize;
        for (j, &value) in row.iter().enumerate() {
            if j >= n {
                if value != 0.0 {
                    return Err(DiffGeoError::EntryOutsideChart {
                        manifold: i,
                        coordinate: j,
                    });
                }
                continue;
            }
            let flat = chart.flat_index(i, j as u32)?;
            if j < shared {
                coeffs[flat] += value / chart.shared_dim() as f64;
            } else {
                coeffs[flat] = value;
            }
        }
    }
    TangentVector::new(chart.clone(), coeffs)
}
