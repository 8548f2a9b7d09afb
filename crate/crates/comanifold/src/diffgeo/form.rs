//! Exterior calculus with exact polynomial coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Float;

use super::chart::ChartSpec;
use super::poly::Poly;
use super::{check_len, DiffGeoError};

/// A differential form of fixed degree over a chart's flat coordinates.
///
/// Terms map strictly increasing tuples of flat indices to nonzero
/// polynomial coefficients; antisymmetry lives in the sign normalization at
/// insertion. A form whose degree would exceed the chart dimension is
/// identically zero and is stored at the capped degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialForm {
    chart: ChartSpec,
    degree: u32,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl DifferentialForm {
    pub fn zero(chart: ChartSpec, degree: u32) -> Self {
        let capped = degree.min(chart.tangent_dimension() as u32);
        DifferentialForm {
            chart,
            degree: capped,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form: a plain scalar polynomial.
    pub fn from_poly(chart: ChartSpec, f: Poly) -> Result<Self, DiffGeoError> {
        check_len(chart.tangent_dimension(), f.arity())?;
        let mut form = DifferentialForm::zero(chart, 0);
        form.insert(Vec::new(), f);
        Ok(form)
    }

    /// Builds a form from (indices, coefficient) terms. Indices need not be
    /// sorted; sign normalization applies. Duplicate indices in one tuple
    /// make that term vanish.
    pub fn from_terms<I>(chart: ChartSpec, degree: u32, terms: I) -> Result<Self, DiffGeoError>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        let d = chart.tangent_dimension();
        if degree as usize > d {
            return Err(DiffGeoError::WrongDegree { expected: d as u32 });
        }
        let mut form = DifferentialForm::zero(chart, degree);
        for (indices, coefficient) in terms {
            check_len(degree as usize, indices.len())?;
            check_len(d, coefficient.arity())?;
            for &i in &indices {
                if i >= d {
                    return Err(DiffGeoError::FlatIndexOutOfRange { index: i, dim: d });
                }
            }
            form.insert(indices, coefficient);
        }
        Ok(form)
    }

    /// Adds `sign(sort) * coefficient` to the normalized term, dropping
    /// duplicates and zeros.
    fn insert(&mut self, mut indices: Vec<usize>, coefficient: Poly) {
        if coefficient.is_zero() {
            return;
        }
        // Insertion sort, counting swaps for the parity sign.
        let mut swaps = 0usize;
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let signed = if swaps.is_multiple_of(2) {
            coefficient
        } else {
            coefficient.neg()
        };
        match self.terms.entry(indices) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(signed);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&signed);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in index order; tuples are strictly increasing.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Poly {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.chart.tangent_dimension()))
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm, DiffGeoError> {
        if self.chart != other.chart {
            return Err(DiffGeoError::ChartMismatch);
        }
        if self.degree != other.degree {
            return Err(DiffGeoError::DegreeMismatch);
        }
        let mut out = self.clone();
        for (indices, coefficient) in &other.terms {
            out.insert(indices.clone(), coefficient.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> DifferentialForm {
        let mut out = DifferentialForm::zero(self.chart.clone(), self.degree);
        for (indices, coefficient) in &self.terms {
            out.insert(indices.clone(), coefficient.neg());
        }
        out
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm, DiffGeoError> {
        self.add(&other.neg())
    }

    /// The set of flat indices appearing in term tuples or coefficient
    /// variables; a form of one manifold's block stays inside that block
    /// under the exterior derivative.
    pub fn support(&self) -> Vec<usize> {
        let d = self.chart.tangent_dimension();
        let mut used = alloc::vec![false; d];
        for (indices, coefficient) in &self.terms {
            for &i in indices {
                used[i] = true;
            }
            for (exponents, _) in coefficient.terms() {
                for (i, &e) in exponents.iter().enumerate() {
                    if e > 0 {
                        used[i] = true;
                    }
                }
            }
        }
        (0..d).filter(|&i| used[i]).collect()
    }
}

/// Exterior derivative: each term `f dx_I` contributes `∂f/∂x_a dx_a∧dx_I`.
pub fn exterior_derivative(form: &DifferentialForm) -> DifferentialForm {
    let d = form.chart().tangent_dimension();
    let mut out = DifferentialForm::zero(form.chart().clone(), form.degree() + 1);
    for (indices, coefficient) in form.terms() {
        for a in 0..d {
            let da = coefficient.partial(a);
            if da.is_zero() || indices.contains(&a) {
                continue;
            }
            let mut extended = Vec::with_capacity(indices.len() + 1);
            extended.push(a);
            extended.extend_from_slice(indices);
            out.insert(extended, da);
        }
    }
    out
}

/// Wedge product; degrees add (capped at the chart dimension, where the
/// result is zero anyway).
pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm, DiffGeoError> {
    if a.chart() != b.chart() {
        return Err(DiffGeoError::ChartMismatch);
    }
    let mut out = DifferentialForm::zero(a.chart().clone(), a.degree() + b.degree());
    for (ia, ca) in a.terms() {
        for (ib, cb) in b.terms() {
            let mut indices = Vec::with_capacity(ia.len() + ib.len());
            indices.extend_from_slice(ia);
            indices.extend_from_slice(ib);
            out.insert(indices, ca.mul(cb));
        }
    }
    Ok(out)
}

/// A vector field with polynomial components over a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    chart: ChartSpec,
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(chart: ChartSpec, components: Vec<Poly>) -> Result<Self, DiffGeoError> {
        let d = chart.tangent_dimension();
        check_len(d, components.len())?;
        for c in &components {
            check_len(d, c.arity())?;
        }
        Ok(VectorField { chart, components })
    }

    /// The coordinate field `∂/∂x_i`.
    pub fn coordinate(chart: ChartSpec, i: usize) -> Result<Self, DiffGeoError> {
        let d = chart.tangent_dimension();
        if i >= d {
            return Err(DiffGeoError::FlatIndexOutOfRange { index: i, dim: d });
        }
        let mut components = alloc::vec![Poly::zero(d); d];
        components[i] = Poly::from_int(d, 1);
        VectorField::new(chart, components)
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// Directional derivative of a scalar: `X(f) = Σ X^a ∂_a f`.
    pub fn apply(&self, f: &Poly) -> Result<Poly, DiffGeoError> {
        let d = self.chart.tangent_dimension();
        check_len(d, f.arity())?;
        let mut out = Poly::zero(d);
        for (a, x) in self.components.iter().enumerate() {
            out = out.add(&x.mul(&f.partial(a)));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, DiffGeoError> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }
}

/// Lie bracket `[X,Y]^c = X(Y^c) − Y(X^c)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, DiffGeoError> {
    if x.chart() != y.chart() {
        return Err(DiffGeoError::ChartMismatch);
    }
    let components: Vec<Poly> = x
        .components()
        .iter()
        .zip(y.components())
        .enumerate()
        .map(|(c, _)| {
            Ok(x.apply(&y.components()[c])?
                .sub(&y.apply(&x.components()[c])?))
        })
        .collect::<Result<_, DiffGeoError>>()?;
    VectorField::new(x.chart().clone(), components)
}

/// `ω(X)` for a 1-form: the scalar `Σ ω_a X^a`.
pub fn pair_one_form(omega: &DifferentialForm, x: &VectorField) -> Poly {
    let d = omega.chart().tangent_dimension();
    let mut out = Poly::zero(d);
    for (indices, coefficient) in omega.terms() {
        out = out.add(&coefficient.mul(&x.components()[indices[0]]));
    }
    out
}

/// `β(X,Y)` for a 2-form: `Σ_{a<b} β_ab (X^a Y^b − X^b Y^a)`.
pub fn pair_two_form(beta: &DifferentialForm, x: &VectorField, y: &VectorField) -> Poly {
    let d = beta.chart().tangent_dimension();
    let mut out = Poly::zero(d);
    for (indices, coefficient) in beta.terms() {
        let (a, b) = (indices[0], indices[1]);
        let skew = x.components()[a]
            .mul(&y.components()[b])
            .sub(&x.components()[b].mul(&y.components()[a]));
        out = out.add(&coefficient.mul(&skew));
    }
    out
}

/// Exact residual polynomial of the degree-1 structure identity:
/// `dω(X,Y) − (X(ω(Y)) − Y(ω(X)) − ω([X,Y]))`. Identically zero for
/// polynomial inputs.
pub fn d_identity_residual(
    omega: &DifferentialForm,
    x: &VectorField,
    y: &VectorField,
) -> Result<Poly, DiffGeoError> {
    if omega.chart() != x.chart() || omega.chart() != y.chart() {
        return Err(DiffGeoError::ChartMismatch);
    }
    if omega.degree() != 1 {
        return Err(DiffGeoError::WrongDegree { expected: 1 });
    }
    let lhs = pair_two_form(&exterior_derivative(omega), x, y);
    let bracket = lie_bracket(x, y)?;
    let rhs = x
        .apply(&pair_one_form(omega, y))?
        .sub(&y.apply(&pair_one_form(omega, x))?)
        .sub(&pair_one_form(omega, &bracket));
    Ok(lhs.sub(&rhs))
}

/// Numeric check of the same identity: evaluates both sides in `f64` at
/// each point and returns the largest absolute difference.
pub fn check_d_identity(
    omega: &DifferentialForm,
    x: &VectorField,
    y: &VectorField,
    points: &[Vec<f64>],
) -> Result<f64, DiffGeoError> {
    if omega.chart() != x.chart() || omega.chart() != y.chart() {
        return Err(DiffGeoError::ChartMismatch);
    }
    if omega.degree() != 1 {
        return Err(DiffGeoError::WrongDegree { expected: 1 });
    }
    let lhs = pair_two_form(&exterior_derivative(omega), x, y);
    let bracket = lie_bracket(x, y)?;
    let x_of_wy = x.apply(&pair_one_form(omega, y))?;
    let y_of_wx = y.apply(&pair_one_form(omega, x))?;
    let w_bracket = pair_one_form(omega, &bracket);
    let mut worst = 0.0f64;
    for point in points {
        let left = lhs.eval_f64(point)?;
        let right =
            x_of_wy.eval_f64(point)? - y_of_wx.eval_f64(point)? - w_bracket.eval_f64(point)?;
        worst = worst.max(Float::abs(left - right));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffgeo::poly::ratio;

    fn chart4() -> ChartSpec {
        ChartSpec::new(alloc::vec![2, 3], 1).unwrap()
    }

    fn x(i: usize) -> Poly {
        Poly::coordinate(4, i)
    }

    #[test]
    fn derivative_of_a_coordinate_is_its_differential() {
        let f = DifferentialForm::from_poly(chart4(), x(0)).unwrap();
        let df = exterior_derivative(&f);
        assert_eq!(df.degree(), 1);
        assert_eq!(df.coefficient(&[0]), Poly::from_int(4, 1));
        assert!(df.coefficient(&[1]).is_zero());

        let constant = DifferentialForm::from_poly(chart4(), Poly::from_int(4, 9)).unwrap();
        assert!(exterior_derivative(&constant).is_zero());
    }

    #[test]
    fn derivative_of_x0_dx1() {
        let omega = DifferentialForm::from_terms(chart4(), 1, [(alloc::vec![1], x(0))]).unwrap();
        let domega = exterior_derivative(&omega);
        assert_eq!(domega.degree(), 2);
        assert_eq!(domega.coefficient(&[0, 1]), Poly::from_int(4, 1));
        assert_eq!(domega.terms().count(), 1);
    }

    #[test]
    fn insertion_normalizes_signs_and_duplicates() {
        // dx1∧dx0 = −dx0∧dx1.
        let form = DifferentialForm::from_terms(chart4(), 2, [(alloc::vec![1, 0], x(2))]).unwrap();
        assert_eq!(form.coefficient(&[0, 1]), x(2).neg());
        // A repeated index vanishes.
        let zero = DifferentialForm::from_terms(chart4(), 2, [(alloc::vec![1, 1], x(2))]).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn d_squared_is_zero_on_a_sample_form() {
        let omega = DifferentialForm::from_terms(
            chart4(),
            1,
            [
                (alloc::vec![0], x(1).mul(&x(2))),
                (alloc::vec![3], x(0).mul(&x(0)).mul(&x(3))),
            ],
        )
        .unwrap();
        assert!(exterior_derivative(&exterior_derivative(&omega)).is_zero());
    }

    #[test]
    fn top_degree_derivative_is_empty() {
        let top =
            DifferentialForm::from_terms(chart4(), 4, [(alloc::vec![0, 1, 2, 3], x(0))]).unwrap();
        let d = exterior_derivative(&top);
        assert!(d.is_zero());
        assert_eq!(d.degree(), 4);
    }

    #[test]
    fn wedge_anticommutes_on_one_forms() {
        let a = DifferentialForm::from_terms(chart4(), 1, [(alloc::vec![0], x(1))]).unwrap();
        let b = DifferentialForm::from_terms(chart4(), 1, [(alloc::vec![2], x(3))]).unwrap();
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        assert_eq!(ab, ba.neg());
        assert_eq!(ab.coefficient(&[0, 2]), x(1).mul(&x(3)));
    }

    #[test]
    fn leibniz_rule_for_a_zero_form_times_one_form() {
        // d(fα) = df∧α + f dα exactly.
        let f = DifferentialForm::from_poly(chart4(), x(0).mul(&x(1))).unwrap();
        let alpha =
            DifferentialForm::from_terms(chart4(), 1, [(alloc::vec![2], x(3).mul(&x(3)))]).unwrap();
        let product = wedge(&f, &alpha).unwrap();
        let lhs = exterior_derivative(&product);
        let rhs = wedge(&exterior_derivative(&f), &alpha)
            .unwrap()
            .add(&wedge(&f, &exterior_derivative(&alpha)).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn support_stays_in_a_manifold_block() {
        let chart = chart4();
        // Block of manifold 0 is {0, 1}; a form built there keeps its
        // derivative there.
        let f = Poly::from_terms(4, [(alloc::vec![2, 1, 0, 0], ratio(1, 2))]).unwrap();
        let omega = DifferentialForm::from_terms(chart.clone(), 1, [(alloc::vec![1], f)]).unwrap();
        let block = chart.block_indices(0).unwrap();
        for i in exterior_derivative(&omega).support() {
            assert!(block.contains(&i));
        }
    }

    #[test]
    fn structure_identity_vanishes_exactly() {
        let chart = chart4();
        let omega = DifferentialForm::from_terms(
            chart.clone(),
            1,
            [
                (alloc::vec![0], x(1).mul(&x(1)).mul(&x(2))),
                (alloc::vec![2], x(0).mul(&x(3))),
            ],
        )
        .unwrap();
        let xf = VectorField::new(
            chart.clone(),
            alloc::vec![x(1), x(0).mul(&x(2)), Poly::zero(4), x(3).mul(&x(3))],
        )
        .unwrap();
        let yf = VectorField::new(
            chart.clone(),
            alloc::vec![Poly::from_int(4, 2), x(3), x(0).mul(&x(1)), x(2)],
        )
        .unwrap();
        let residual = d_identity_residual(&omega, &xf, &yf).unwrap();
        assert!(residual.is_zero());

        let points = alloc::vec![
            alloc::vec![0.5, -1.0, 2.0, 0.25],
            alloc::vec![1.0, 1.0, 1.0, 1.0],
            alloc::vec![-2.0, 3.0, 0.0, 5.0],
        ];
        let worst = check_d_identity(&omega, &xf, &yf, &points).unwrap();
        assert!(worst <= 1e-9, "numeric residual {worst}");
    }

    #[test]
    fn coordinate_fields_commute() {
        let chart = chart4();
        let dx0 = VectorField::coordinate(chart.clone(), 0).unwrap();
        let dx1 = VectorField::coordinate(chart.clone(), 1).unwrap();
        let bracket = lie_bracket(&dx0, &dx1).unwrap();
        assert!(bracket.components().iter().all(Poly::is_zero));

        let omega =
            DifferentialForm::from_terms(chart, 1, [(alloc::vec![0], x(0).mul(&x(1)))]).unwrap();
        let residual = d_identity_residual(&omega, &dx0, &dx1).unwrap();
        assert!(residual.is_zero());
    }
}
