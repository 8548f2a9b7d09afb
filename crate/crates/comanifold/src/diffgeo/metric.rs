//! Metric fields and the Levi-Civita coefficients they induce.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Float;

use super::chart::ChartSpec;
use super::linalg::{invert, Coeffs3};
use super::poly::Poly;
use super::tensor::ConnectionCoefficients;
use super::{check_len, DiffGeoError};

const PIVOT_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-9;
const DEFAULT_FD_STEP: f64 = 1e-5;

type MatrixFn = Arc<dyn Fn(&[f64]) -> Result<Vec<Vec<f64>>, DiffGeoError> + Send + Sync>;
type PartialsFn = Arc<dyn Fn(&[f64]) -> Result<Vec<Vec<Vec<f64>>>, DiffGeoError> + Send + Sync>;

/// A symmetric matrix field `point -> g_ab` over a chart, with partials
/// either supplied analytically or taken by central differences.
#[derive(Clone)]
pub struct MetricField {
    chart: ChartSpec,
    g: MatrixFn,
    partials: Option<PartialsFn>,
    fd_step: f64,
}

impl core::fmt::Debug for MetricField {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MetricField")
            .field("chart", &self.chart)
            .field("analytic_partials", &self.partials.is_some())
            .field("fd_step", &self.fd_step)
            .finish_non_exhaustive()
    }
}

impl MetricField {
    pub fn from_fn<F>(chart: ChartSpec, g: F) -> Self
    where
        F: Fn(&[f64]) -> Result<Vec<Vec<f64>>, DiffGeoError> + Send + Sync + 'static,
    {
        MetricField {
            chart,
            g: Arc::new(g),
            partials: None,
            fd_step: DEFAULT_FD_STEP,
        }
    }

    /// Attaches analytic partials `point -> dg[c][a][b] = ∂_c g_ab`.
    pub fn with_partials<F>(mut self, partials: F) -> Self
    where
        F: Fn(&[f64]) -> Result<Vec<Vec<Vec<f64>>>, DiffGeoError> + Send + Sync + 'static,
    {
        self.partials = Some(Arc::new(partials));
        self
    }

    /// Step for central-difference partials when no analytic ones exist.
    pub fn with_fd_step(mut self, step: f64) -> Self {
        self.fd_step = step;
        self
    }

    /// A metric given as a symmetric grid of polynomials; partials are
    /// exact derivatives evaluated at the point.
    pub fn from_polynomials(
        chart: ChartSpec,
        entries: Vec<Vec<Poly>>,
    ) -> Result<Self, DiffGeoError> {
        let d = chart.tangent_dimension();
        check_len(d, entries.len())?;
        for row in &entries {
            check_len(d, row.len())?;
            for p in row {
                check_len(d, p.arity())?;
            }
        }
        for a in 0..d {
            for b in a + 1..d {
                if entries[a][b] != entries[b][a] {
                    return Err(DiffGeoError::NotSymmetric);
                }
            }
        }
        let grid = entries.clone();
        let value = move |point: &[f64]| -> Result<Vec<Vec<f64>>, DiffGeoError> {
            grid.iter()
                .map(|row| row.iter().map(|p| p.eval_f64(point)).collect())
                .collect()
        };
        let mut derivatives: Vec<Vec<Vec<Poly>>> = Vec::with_capacity(d);
        for c in 0..d {
            derivatives.push(
                entries
                    .iter()
                    .map(|row| row.iter().map(|p| p.partial(c)).collect())
                    .collect(),
            );
        }
        let partials = move |point: &[f64]| -> Result<Vec<Vec<Vec<f64>>>, DiffGeoError> {
            derivatives
                .iter()
                .map(|grid| {
                    grid.iter()
                        .map(|row| row.iter().map(|p| p.eval_f64(point)).collect())
                        .collect()
                })
                .collect()
        };
        Ok(MetricField::from_fn(chart, value).with_partials(partials))
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn has_analytic_partials(&self) -> bool {
        self.partials.is_some()
    }

    /// The matrix at a point, validated square, finite and symmetric.
    pub fn evaluate(&self, point: &[f64]) -> Result<Vec<Vec<f64>>, DiffGeoError> {
        let d = self.chart.tangent_dimension();
        check_len(d, point.len())?;
        let m = (self.g)(point)?;
        check_len(d, m.len())?;
        for row in &m {
            check_len(d, row.len())?;
            if row.iter().any(|x| !x.is_finite()) {
                return Err(DiffGeoError::NonFinite(alloc::format!(
                    "metric at {point:?}"
                )));
            }
        }
        for a in 0..d {
            for b in a + 1..d {
                let scale = 1.0 + Float::abs(m[a][b]);
                if Float::abs(m[a][b] - m[b][a]) > SYMMETRY_TOL * scale {
                    return Err(DiffGeoError::NotSymmetric);
                }
            }
        }
        Ok(m)
    }

    /// `dg[c][a][b] = ∂_c g_ab`, analytic when available.
    pub fn partials_at(&self, point: &[f64]) -> Result<Vec<Vec<Vec<f64>>>, DiffGeoError> {
        let d = self.chart.tangent_dimension();
        check_len(d, point.len())?;
        if let Some(partials) = &self.partials {
            let dg = partials(point)?;
            check_len(d, dg.len())?;
            for grid in &dg {
                check_len(d, grid.len())?;
                for row in grid {
                    check_len(d, row.len())?;
                }
            }
            return Ok(dg);
        }
        let h = self.fd_step;
        let mut dg = Vec::with_capacity(d);
        let mut shifted = point.to_vec();
        for c in 0..d {
            shifted[c] = point[c] + h;
            let plus = self.evaluate(&shifted)?;
            shifted[c] = point[c] - h;
            let minus = self.evaluate(&shifted)?;
            shifted[c] = point[c];
            let grid: Vec<Vec<f64>> = plus
                .iter()
                .zip(&minus)
                .map(|(rp, rm)| {
                    rp.iter()
                        .zip(rm)
                        .map(|(p, m)| (p - m) / (2.0 * h))
                        .collect()
                })
                .collect();
            dg.push(grid);
        }
        Ok(dg)
    }
}

/// Levi-Civita coefficients of a metric at a point:
/// `Γ^c_ab = ½ Σ_e g^{ce} (∂_a g_be + ∂_b g_ae − ∂_e g_ab)`.
pub fn christoffel_from_metric(
    metric: &MetricField,
    point: &[f64],
) -> Result<Coeffs3, DiffGeoError> {
    let d = metric.chart().tangent_dimension();
    let g = metric.evaluate(point)?;
    let inverse = invert(&g, PIVOT_TOL)?;
    let dg = metric.partials_at(point)?;
    let mut gamma = Coeffs3::zeros(d);
    for c in 0..d {
        for a in 0..d {
            for b in 0..=a {
                let mut total = 0.0;
                for e in 0..d {
                    total += inverse[c][e] * (dg[a][b][e] + dg[b][a][e] - dg[e][a][b]);
                }
                let value = 0.5 * total;
                gamma.set(c, a, b, value);
                gamma.set(c, b, a, value);
            }
        }
    }
    Ok(gamma)
}

/// The induced connection as an evaluable field.
pub fn levi_civita(metric: &MetricField) -> ConnectionCoefficients {
    let metric = metric.clone();
    ConnectionCoefficients::from_fn(metric.chart().clone(), move |point| {
        christoffel_from_metric(&metric, point)
    })
}

/// Largest deviation of `∂_c g_ab = Σ_e (g_eb Γ^e_ac + g_ae Γ^e_bc)` at a
/// point; zero exactly when the connection is metric-compatible there.
pub fn metric_compatibility_residual(
    metric: &MetricField,
    gamma: &ConnectionCoefficients,
    point: &[f64],
) -> Result<f64, DiffGeoError> {
    if metric.chart() != gamma.chart() {
        return Err(DiffGeoError::ChartMismatch);
    }
    let d = metric.chart().tangent_dimension();
    let g = metric.evaluate(point)?;
    let dg = metric.partials_at(point)?;
    let coeffs = gamma.evaluate(point)?;
    let mut worst = 0.0f64;
    for c in 0..d {
        for a in 0..d {
            for b in 0..d {
                let mut transported = 0.0;
                for e in 0..d {
                    transported += g[e][b] * coeffs.get(e, a, c) + g[a][e] * coeffs.get(e, b, c);
                }
                worst = worst.max(Float::abs(dg[c][a][b] - transported));
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffgeo::poly::ratio;
    use crate::diffgeo::tensor::torsion;

    /// diag(1, x0^2) on a 2-dimensional chart.
    fn polar_like_metric() -> MetricField {
        let chart = ChartSpec::single(2).unwrap();
        let x0 = Poly::coordinate(2, 0);
        MetricField::from_polynomials(
            chart,
            alloc::vec![
                alloc::vec![Poly::from_int(2, 1), Poly::zero(2)],
                alloc::vec![Poly::zero(2), x0.mul(&x0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn constant_metric_has_zero_coefficients() {
        let chart = ChartSpec::single(3).unwrap();
        let metric = MetricField::from_fn(chart, |_| {
            Ok(alloc::vec![
                alloc::vec![2.0, 0.0, 0.0],
                alloc::vec![0.0, 1.0, 0.0],
                alloc::vec![0.0, 0.0, 5.0],
            ])
        });
        let gamma = christoffel_from_metric(&metric, &[0.3, -0.7, 1.1]).unwrap();
        assert!(gamma.max_abs() < 1e-9);
    }

    #[test]
    fn polar_like_metric_matches_hand_values() {
        let metric = polar_like_metric();
        let gamma = christoffel_from_metric(&metric, &[2.0, 0.4]).unwrap();
        // Hand evaluation at x0 = 2: Γ^1_{01} = Γ^1_{10} = 1/x0 = 1/2 and
        // Γ^0_{11} = −x0 = −2; everything else 0.
        assert!((gamma.get(1, 0, 1) - 0.5).abs() < 1e-10);
        assert!((gamma.get(1, 1, 0) - 0.5).abs() < 1e-10);
        assert!((gamma.get(0, 1, 1) + 2.0).abs() < 1e-10);
        let named = [(1, 0, 1), (1, 1, 0), (0, 1, 1)];
        for c in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    if !named.contains(&(c, a, b)) {
                        assert!(gamma.get(c, a, b).abs() < 1e-10, "({c},{a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn finite_difference_partials_agree_with_analytic() {
        let analytic = polar_like_metric();
        let chart = ChartSpec::single(2).unwrap();
        let numeric = MetricField::from_fn(chart, |p| {
            Ok(alloc::vec![
                alloc::vec![1.0, 0.0],
                alloc::vec![0.0, p[0] * p[0]],
            ])
        });
        let point = [2.0, 0.4];
        let ga = christoffel_from_metric(&analytic, &point).unwrap();
        let gn = christoffel_from_metric(&numeric, &point).unwrap();
        assert!(ga.max_abs_diff(&gn) < 1e-8);
    }

    #[test]
    fn compatibility_residual_vanishes_for_the_induced_connection() {
        let metric = polar_like_metric();
        let connection = levi_civita(&metric);
        let point = [1.7, -0.3];
        let residual = metric_compatibility_residual(&metric, &connection, &point).unwrap();
        assert!(residual < 1e-9, "residual {residual}");

        // The zero connection is not compatible with a varying metric.
        let zero = ConnectionCoefficients::zero(metric.chart().clone());
        let bad = metric_compatibility_residual(&metric, &zero, &point).unwrap();
        assert!((bad - 2.0 * 1.7).abs() < 1e-9, "max |∂g| is 2*x0");
    }

    #[test]
    fn induced_connection_is_torsion_free() {
        let metric = polar_like_metric();
        let connection = levi_civita(&metric);
        let t = torsion(&connection, &[2.0, 0.4]).unwrap();
        assert_eq!(t.max_abs(), 0.0);
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let chart = ChartSpec::single(2).unwrap();
        let metric = MetricField::from_fn(chart, |_| {
            Ok(alloc::vec![alloc::vec![1.0, 1.0], alloc::vec![1.0, 1.0],])
        });
        assert_eq!(
            christoffel_from_metric(&metric, &[0.0, 0.0]),
            Err(DiffGeoError::NotInvertible)
        );
    }

    #[test]
    fn asymmetric_values_are_rejected() {
        let chart = ChartSpec::single(2).unwrap();
        let metric = MetricField::from_fn(chart, |_| {
            Ok(alloc::vec![alloc::vec![1.0, 0.5], alloc::vec![-0.5, 1.0],])
        });
        assert_eq!(
            metric.evaluate(&[0.0, 0.0]),
            Err(DiffGeoError::NotSymmetric)
        );
        let bad_grid = MetricField::from_polynomials(
            ChartSpec::single(2).unwrap(),
            alloc::vec![
                alloc::vec![Poly::from_int(2, 1), Poly::coordinate(2, 0)],
                alloc::vec![Poly::zero(2), Poly::from_int(2, 1)],
            ],
        );
        assert!(bad_grid.is_err());
    }

    #[test]
    fn warped_product_metric_stays_compatible() {
        // diag(1, exp-like warp, 1) approximated by a polynomial warp
        // (1 + x0 + x0^2/2)^2; compatibility must still hold.
        let chart = ChartSpec::single(3).unwrap();
        let x0 = Poly::coordinate(3, 0);
        let warp = Poly::from_int(3, 1)
            .add(&x0)
            .add(&x0.mul(&x0).scale(&ratio(1, 2)));
        let metric = MetricField::from_polynomials(
            chart,
            alloc::vec![
                alloc::vec![Poly::from_int(3, 1), Poly::zero(3), Poly::zero(3)],
                alloc::vec![Poly::zero(3), warp.mul(&warp), Poly::zero(3)],
                alloc::vec![Poly::zero(3), Poly::zero(3), Poly::from_int(3, 1)],
            ],
        )
        .unwrap();
        let connection = levi_civita(&metric);
        for point in [[0.5, 1.0, -1.0], [0.0, 0.0, 0.0], [1.25, -2.0, 3.0]] {
            let residual = metric_compatibility_residual(&metric, &connection, &point).unwrap();
            assert!(residual < 1e-8, "residual {residual} at {point:?}");
        }
    }
}
