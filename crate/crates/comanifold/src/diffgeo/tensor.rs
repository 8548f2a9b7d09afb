//! Tensor fields and connections over a chart's flat coordinates.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::chart::ChartSpec;
use super::form::VectorField;
use super::linalg::Coeffs3;
use super::poly::Poly;
use super::{check_len, DiffGeoError};

type GammaFn = Arc<dyn Fn(&[f64]) -> Result<Coeffs3, DiffGeoError> + Send + Sync>;
type FieldFn = Arc<dyn Fn(&[f64]) -> Result<Vec<f64>, DiffGeoError> + Send + Sync>;

/// An (r, s)-tensor field with polynomial components.
///
/// Components are stored flat in row-major order: the `r` upper indices
/// first, then the `s` lower ones, each running over `0..D`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyTensor {
    chart: ChartSpec,
    contravariant: u32,
    covariant: u32,
    components: Vec<Poly>,
}

impl PolyTensor {
    pub fn zeros(
        chart: ChartSpec,
        contravariant: u32,
        covariant: u32,
    ) -> Result<Self, DiffGeoError> {
        let d = chart.tangent_dimension();
        let size = chart.tensor_space_dimension(contravariant, covariant)?;
        let size: usize = size.try_into().map_err(|_| DiffGeoError::TensorTooLarge {
            rank: contravariant + covariant,
            dim: d,
        })?;
        Ok(PolyTensor {
            chart,
            contravariant,
            covariant,
            components: alloc::vec![Poly::zero(d); size],
        })
    }

    pub fn from_components(
        chart: ChartSpec,
        contravariant: u32,
        covariant: u32,
        components: Vec<Poly>,
    ) -> Result<Self, DiffGeoError> {
        let mut tensor = PolyTensor::zeros(chart, contravariant, covariant)?;
        check_len(tensor.components.len(), components.len())?;
        let d = tensor.chart.tangent_dimension();
        for c in &components {
            check_len(d, c.arity())?;
        }
        tensor.components = components;
        Ok(tensor)
    }

    /// A scalar field as a (0,0)-tensor.
    pub fn scalar(chart: ChartSpec, f: Poly) -> Result<Self, DiffGeoError> {
        check_len(chart.tangent_dimension(), f.arity())?;
        PolyTensor::from_components(chart, 0, 0, alloc::vec![f])
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn rank(&self) -> (u32, u32) {
        (self.contravariant, self.covariant)
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    fn flat_of(&self, indices: &[usize]) -> Result<usize, DiffGeoError> {
        let d = self.chart.tangent_dimension();
        check_len(
            (self.contravariant + self.covariant) as usize,
            indices.len(),
        )?;
        let mut flat = 0usize;
        for &i in indices {
            if i >= d {
                return Err(DiffGeoError::FlatIndexOutOfRange { index: i, dim: d });
            }
            flat = flat * d + i;
        }
        Ok(flat)
    }

    /// Component at (upper..., lower...) indices.
    pub fn component(&self, indices: &[usize]) -> Result<&Poly, DiffGeoError> {
        Ok(&self.components[self.flat_of(indices)?])
    }

    pub fn set_component(&mut self, indices: &[usize], value: Poly) -> Result<(), DiffGeoError> {
        check_len(self.chart.tangent_dimension(), value.arity())?;
        let flat = self.flat_of(indices)?;
        self.components[flat] = value;
        Ok(())
    }

    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, DiffGeoError> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }
}

/// Connection coefficients as an evaluable field `point -> Γ^c_{ab}`, with
/// `c` the output index, `a` the index being transported, and `b` the
/// direction of differentiation.
#[derive(Clone)]
pub struct ConnectionCoefficients {
    chart: ChartSpec,
    gamma: GammaFn,
}

impl core::fmt::Debug for ConnectionCoefficients {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ConnectionCoefficients")
            .field("chart", &self.chart)
            .finish_non_exhaustive()
    }
}

impl ConnectionCoefficients {
    pub fn from_fn<F>(chart: ChartSpec, gamma: F) -> Self
    where
        F: Fn(&[f64]) -> Result<Coeffs3, DiffGeoError> + Send + Sync + 'static,
    {
        ConnectionCoefficients {
            chart,
            gamma: Arc::new(gamma),
        }
    }

    pub fn zero(chart: ChartSpec) -> Self {
        let d = chart.tangent_dimension();
        ConnectionCoefficients::from_fn(chart, move |_| Ok(Coeffs3::zeros(d)))
    }

    pub fn constant(chart: ChartSpec, coeffs: Coeffs3) -> Result<Self, DiffGeoError> {
        check_len(chart.tangent_dimension(), coeffs.dim())?;
        Ok(ConnectionCoefficients::from_fn(chart, move |_| {
            Ok(coeffs.clone())
        }))
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<Coeffs3, DiffGeoError> {
        check_len(self.chart.tangent_dimension(), point.len())?;
        let coeffs = (self.gamma)(point)?;
        check_len(self.chart.tangent_dimension(), coeffs.dim())?;
        if !coeffs.is_finite() {
            return Err(DiffGeoError::NonFinite(alloc::format!(
                "connection coefficients at {point:?}"
            )));
        }
        Ok(coeffs)
    }
}

/// Torsion `T^c_{ab} = Γ^c_{ab} − Γ^c_{ba}` at a point.
pub fn torsion(gamma: &ConnectionCoefficients, point: &[f64]) -> Result<Coeffs3, DiffGeoError> {
    let g = gamma.evaluate(point)?;
    let d = g.dim();
    let mut t = Coeffs3::zeros(d);
    for c in 0..d {
        for a in 0..d {
            for b in 0..d {
                t.set(c, a, b, g.get(c, a, b) - g.get(c, b, a));
            }
        }
    }
    Ok(t)
}

/// An evaluable tensor field (the output of a covariant derivative).
#[derive(Clone)]
pub struct TensorField {
    chart: ChartSpec,
    contravariant: u32,
    covariant: u32,
    eval: FieldFn,
}

impl core::fmt::Debug for TensorField {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("TensorField")
            .field("chart", &self.chart)
            .field("rank", &(self.contravariant, self.covariant))
            .finish_non_exhaustive()
    }
}

impl TensorField {
    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn rank(&self) -> (u32, u32) {
        (self.contravariant, self.covariant)
    }

    /// Flat row-major components at a point, upper indices first.
    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, DiffGeoError> {
        check_len(self.chart.tangent_dimension(), point.len())?;
        (self.eval)(point)
    }
}

/// Covariant derivative of a polynomial tensor along a vector field.
///
/// Componentwise, with all indices flat:
/// `(∇_X τ)^A_B = Σ_b X^b (∂_b τ^A_B + Σ_k Γ^{a_k}_{e b} τ^{A[k:=e]}_B
///                                   − Σ_k Γ^{e}_{b_k b} τ^A_{B[k:=e]})`.
pub fn covariant_derivative(
    gamma: &ConnectionCoefficients,
    tau: &PolyTensor,
    x: &VectorField,
) -> Result<TensorField, DiffGeoError> {
    if gamma.chart() != tau.chart() || gamma.chart() != x.chart() {
        return Err(DiffGeoError::ChartMismatch);
    }
    let chart = tau.chart().clone();
    let d = chart.tangent_dimension();
    let (r, s) = tau.rank();
    let rank = (r + s) as usize;
    let size = tau.components().len();

    // Exact partials of every component, prepared once.
    let partials: Vec<Vec<Poly>> = (0..d)
        .map(|b| tau.components().iter().map(|c| c.partial(b)).collect())
        .collect();
    let tau = tau.clone();
    let x = x.clone();
    let gamma = gamma.clone();

    let eval = move |point: &[f64]| -> Result<Vec<f64>, DiffGeoError> {
        let g = gamma.evaluate(point)?;
        let xv = x.eval(point)?;
        let tv = tau.eval(point)?;
        let mut dv: Vec<Vec<f64>> = Vec::with_capacity(d);
        for b in 0..d {
            dv.push(
                partials[b]
                    .iter()
                    .map(|p| p.eval_f64(point))
                    .collect::<Result<_, _>>()?,
            );
        }
        let mut out = alloc::vec![0.0; size];
        let mut digits = alloc::vec![0usize; rank];
        for (q, slot) in out.iter_mut().enumerate() {
            // Decode q into its multi-index.
            let mut rest = q;
            for k in (0..rank).rev() {
                digits[k] = rest % d;
                rest /= d;
            }
            // Positional weight of each index slot in the flat layout.
            let weight = |k: usize| d.pow((rank - 1 - k) as u32);
            let mut total = 0.0;
            for b in 0..d {
                if xv[b] == 0.0 {
                    continue;
                }
                let mut term = dv[b][q];
                for k in 0..r as usize {
                    let a_k = digits[k];
                    let base = q - a_k * weight(k);
                    for e in 0..d {
                        term += g.get(a_k, e, b) * tv[base + e * weight(k)];
                    }
                }
                for k in 0..s as usize {
                    let slot_k = r as usize + k;
                    let b_k = digits[slot_k];
                    let base = q - b_k * weight(slot_k);
                    for e in 0..d {
                        term -= g.get(e, b_k, b) * tv[base + e * weight(slot_k)];
                    }
                }
                total += xv[b] * term;
            }
            *slot = total;
        }
        Ok(out)
    };

    Ok(TensorField {
        chart,
        contravariant: r,
        covariant: s,
        eval: Arc::new(eval),
    })
}
