//! Chart-level differential geometry over a flattened coordinate space.
//!
//! A point where several manifolds meet carries one coordinate system per
//! manifold, with the first `shat` coordinates identified across all of
//! them. Flattening that identification gives a single space of dimension
//! `D = shat + sum(n_i - shat)`; everything here (forms, tensors,
//! connections, metrics, norms) works over that flat space.
//!
//! Coefficient functions come in two flavours: exact multivariate
//! polynomials with rational coefficients for the algebraic identities, and
//! black-box `f64` functions with central finite differences for metrics
//! and norms supplied at runtime.

mod chart;
mod form;
mod linalg;
mod metric;
mod norm;
mod poly;
mod tensor;

pub use chart::{matrix_inner, vector_from_matrix, ChartSpec, TangentVector};
pub use form::{
    check_d_identity, d_identity_residual, exterior_derivative, pair_one_form, pair_two_form,
    wedge, DifferentialForm, VectorField,
};
pub use linalg::Coeffs3;
pub use metric::{
    christoffel_from_metric, levi_civita, metric_compatibility_residual, MetricField,
};
pub use norm::{
    build_partition_norm, constant_weight, minkowski_check, MinkowskiNorm, NormCheckConfig,
    NormCheckReport, WeightFn,
};
pub use poly::{ratio, Poly};
pub use tensor::{covariant_derivative, torsion, ConnectionCoefficients, PolyTensor, TensorField};

use alloc::string::String;

/// Errors from chart construction and the geometric operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiffGeoError {
    #[error("a chart needs at least one manifold dimension")]
    EmptyDims,
    #[error("manifold dimensions must be listed in non-decreasing order")]
    UnsortedDims,
    #[error("shared dimension {shat} must satisfy 1 <= {shat} <= {min_dim}")]
    SharedDimOutOfRange { shat: u32, min_dim: u32 },
    #[error("coordinate {coordinate} is out of range for manifold {manifold}")]
    IndexOutOfRange { manifold: usize, coordinate: u32 },
    #[error("flat index {index} is out of range for dimension {dim}")]
    FlatIndexOutOfRange { index: usize, dim: usize },
    #[error("matrix shapes do not match")]
    ShapeMismatch,
    #[error("nonzero entry at ({manifold}, {coordinate}) lies outside the chart")]
    EntryOutsideChart { manifold: usize, coordinate: usize },
    #[error("expected {expected} entries, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands belong to different charts")]
    ChartMismatch,
    #[error("form degrees do not match")]
    DegreeMismatch,
    #[error("expected a form of degree {expected}")]
    WrongDegree { expected: u32 },
    #[error("tensor ranks do not match")]
    RankMismatch,
    #[error("tensor of rank {rank} over dimension {dim} is too large")]
    TensorTooLarge { rank: u32, dim: usize },
    #[error("dimension power overflows")]
    Overflow,
    #[error("metric not invertible")]
    NotInvertible,
    #[error("matrix is not symmetric at the evaluated point")]
    NotSymmetric,
    #[error("field value is not finite: {0}")]
    NonFinite(String),
    #[error("weights do not sum to 1 (sum {sum})")]
    WeightSum { sum: f64 },
    #[error("weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },
    #[error("norm samples must be nonzero vectors")]
    ZeroSample,
}

/// Length check for user-supplied points and vectors.
pub(crate) fn check_len(expected: usize, got: usize) -> Result<(), DiffGeoError> {
    if expected == got {
        Ok(())
    } else {
        Err(DiffGeoError::ArityMismatch { expected, got })
    }
}
