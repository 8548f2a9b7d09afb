//! Truncated counting series and the graph-indexed product formula.
//!
//! An [`EnuSeries`] is a multivariate power series with exact integer
//! coefficients, truncated at a maximum total degree. Series combine per
//! dimension: a labelled graph with distinct positive labels `n_1 < ... <
//! n_m` and one series per label yields the product over the labels, scaled
//! by `pi0!` where `pi0` is the orbit count of [`automorphism_orbits`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::classify::{automorphism_orbits, ClassifyError};
use crate::graph::{Adjacency, LabelledGraph};

/// Errors from series arithmetic and the product formula.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series have different variable lists")]
    VariableMismatch,
    #[error("exponent vector has {got} entries, expected {expected}")]
    ExponentArity { expected: usize, got: usize },
    #[error("variable list has {got} names, expected {expected}")]
    VariableArity { expected: usize, got: usize },
    #[error("vertex `{0}` is labelled 0; counting series need positive labels")]
    ZeroLabelled(String),
    #[error("no series supplied for dimension {0}")]
    MissingSeries(u32),
    #[error("variable `{0}` appears in series for two different dimensions")]
    VariableCollision(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// A truncated multivariate power series with integer coefficients.
///
/// Terms of total degree above `truncation` are not representable; all
/// arithmetic drops them. Coefficients are exact and unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnuSeries {
    variables: Vec<String>,
    truncation: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl EnuSeries {
    pub fn zero<S: Into<String>>(variables: impl IntoIterator<Item = S>, truncation: u32) -> Self {
        EnuSeries {
            variables: variables.into_iter().map(Into::into).collect(),
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        truncation: u32,
        value: impl Into<BigInt>,
    ) -> Self {
        let mut series = Self::zero(variables, truncation);
        series.insert(alloc::vec![0; series.variables.len()], value.into());
        series
    }

    pub fn from_terms<S, I, C>(
        variables: impl IntoIterator<Item = S>,
        truncation: u32,
        terms: I,
    ) -> Result<Self, SeriesError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut series = Self::zero(variables, truncation);
        let arity = series.variables.len();
        for (exponents, coefficient) in terms {
            if exponents.len() != arity {
                return Err(SeriesError::ExponentArity {
                    expected: arity,
                    got: exponents.len(),
                });
            }
            series.insert(exponents, coefficient.into());
        }
        Ok(series)
    }

    /// Adds into a term, dropping zeros and anything beyond the truncation.
    fn insert(&mut self, exponents: Vec<u32>, coefficient: BigInt) {
        if coefficient.is_zero() || exponents.iter().sum::<u32>() > self.truncation {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Terms in exponent-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same series over renamed variables.
    pub fn with_variables<S: Into<String>>(
        &self,
        variables: impl IntoIterator<Item = S>,
    ) -> Result<Self, SeriesError> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.len() != self.variables.len() {
            return Err(SeriesError::VariableArity {
                expected: self.variables.len(),
                got: variables.len(),
            });
        }
        Ok(EnuSeries {
            variables,
            truncation: self.truncation,
            terms: self.terms.clone(),
        })
    }

    /// Reinterprets the series over a variable superset.
    fn embedded(&self, variables: &[String]) -> Result<Self, SeriesError> {
        let positions: Vec<usize> = self
            .variables
            .iter()
            .map(|v| {
                variables
                    .iter()
                    .position(|w| w == v)
                    .ok_or(SeriesError::VariableMismatch)
            })
            .collect::<Result<_, _>>()?;
        let mut out = EnuSeries::zero(variables.to_vec(), self.truncation);
        for (exponents, coefficient) in &self.terms {
            let mut wide = alloc::vec![0u32; variables.len()];
            for (slot, &e) in positions.iter().zip(exponents) {
                wide[*slot] = e;
            }
            out.insert(wide, coefficient.clone());
        }
        Ok(out)
    }
}

impl core::fmt::Display for EnuSeries {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        ordered.sort_by_key(|(exponents, _)| (exponents.iter().sum::<u32>(), (*exponents).clone()));
        for (i, (exponents, coefficient)) in ordered.into_iter().enumerate() {
            let mut monomial = String::new();
            for (v, &e) in self.variables.iter().zip(exponents.iter()) {
                if e == 0 {
                    continue;
                }
                if !monomial.is_empty() {
                    monomial.push('*');
                }
                monomial.push_str(v);
                if e > 1 {
                    monomial.push_str(&alloc::format!("^{e}"));
                }
            }
            let magnitude = coefficient.abs();
            if i == 0 {
                if coefficient.is_negative() {
                    f.write_str("-")?;
                }
            } else if coefficient.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&monomial)?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}

fn require_same_variables(a: &EnuSeries, b: &EnuSeries) -> Result<(), SeriesError> {
    if a.variables == b.variables {
        Ok(())
    } else {
        Err(SeriesError::VariableMismatch)
    }
}

/// Termwise sum; the truncation is the finer of the two.
pub fn add(a: &EnuSeries, b: &EnuSeries) -> Result<EnuSeries, SeriesError> {
    require_same_variables(a, b)?;
    let mut out = EnuSeries::zero(a.variables.clone(), a.truncation.min(b.truncation));
    for (exponents, coefficient) in a.terms.iter().chain(b.terms.iter()) {
        out.insert(exponents.clone(), coefficient.clone());
    }
    Ok(out)
}

/// Cauchy product; terms beyond the finer truncation are dropped.
pub fn mul(a: &EnuSeries, b: &EnuSeries) -> Result<EnuSeries, SeriesError> {
    require_same_variables(a, b)?;
    let mut out = EnuSeries::zero(a.variables.clone(), a.truncation.min(b.truncation));
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let exponents: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.insert(exponents, ca * cb);
        }
    }
    Ok(out)
}

/// Scalar multiple.
pub fn scale(a: &EnuSeries, k: &BigInt) -> EnuSeries {
    let mut out = EnuSeries::zero(a.variables.clone(), a.truncation);
    for (exponents, coefficient) in &a.terms {
        out.insert(exponents.clone(), coefficient * k);
    }
    out
}

/// Counting series of closed surfaces by genus, truncated at `max_genus`:
/// one surface of genus 0, two of every higher genus (one orientable, one
/// non-orientable), in the variable `x`.
pub fn surface_enufunction(max_genus: u32) -> EnuSeries {
    let mut series = EnuSeries::constant(["x"], max_genus, 1);
    for p in 1..=max_genus {
        series.insert(alloc::vec![p], BigInt::from(2));
    }
    series
}

fn factorial(n: usize) -> BigInt {
    let mut out = BigInt::one();
    for k in 2..=n {
        out *= BigInt::from(k);
    }
    out
}

/// The special graph shapes whose counting factor the product formula also
/// states literally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialForm {
    /// Complete graph on `order` vertices: literal factor 1.
    CompleteGraph { order: usize },
    /// Complete multipartite with uniformly labelled partite sets and
    /// `distinct_labels` distinct labels: literal factor `distinct_labels!`.
    CompleteMultipartite { distinct_labels: usize },
}

/// Literal-clause value reported when it disagrees with the orbit-derived
/// factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralFactor {
    pub form: SpecialForm,
    pub factor: BigInt,
    pub series: EnuSeries,
}

/// Result of the graph-indexed product formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnuFunction {
    /// Orbit count of the label classes.
    pub pi0: usize,
    /// `pi0!`, the factor applied to the product.
    pub factor: BigInt,
    /// `pi0! * product of the per-dimension series over distinct labels`.
    pub series: EnuSeries,
    /// Present when the graph matches a special shape whose literally stated
    /// factor differs from `pi0!`.
    pub literal: Option<LiteralFactor>,
}

/// Detects complete and complete-multipartite shapes with uniformly
/// labelled partite sets.
fn special_form(adj: &Adjacency) -> Option<SpecialForm> {
    let n = adj.len();
    // Partite sets are the connected components of the complement.
    let mut part_of: Vec<Option<usize>> = alloc::vec![None; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if part_of[start].is_some() {
            continue;
        }
        let index = parts.len();
        let mut members = alloc::vec![start];
        part_of[start] = Some(index);
        let mut cursor = 0;
        while cursor < members.len() {
            let v = members[cursor];
            cursor += 1;
            for w in 0..n {
                if w != v && part_of[w].is_none() && !adj.adjacent(v, w) {
                    part_of[w] = Some(index);
                    members.push(w);
                }
            }
        }
        parts.push(members);
    }
    // Complete multipartite iff no edges inside a part and all edges across.
    for u in 0..n {
        for v in u + 1..n {
            let same = part_of[u] == part_of[v];
            if adj.adjacent(u, v) == same {
                return None;
            }
        }
    }
    if parts.iter().all(|p| p.len() == 1) {
        return Some(SpecialForm::CompleteGraph { order: n });
    }
    // The literal multipartite clause needs single-labelled partite sets.
    let mut labels: BTreeSet<u32> = BTreeSet::new();
    for part in &parts {
        let label = adj.labels[part[0]];
        if part.iter().any(|&v| adj.labels[v] != label) {
            return None;
        }
        labels.insert(label);
    }
    Some(SpecialForm::CompleteMultipartite {
        distinct_labels: labels.len(),
    })
}

/// Counting series of a labelled graph from per-dimension series.
///
/// Requires every label positive and a series for each distinct label, with
/// disjoint variable lists across dimensions. The result is `pi0!` times the
/// product of the used series, truncated at the finest of `truncation` and
/// the input truncations. When the graph is a complete or a uniformly
/// labelled complete-multipartite graph, the literally stated factor (1 or
/// `m!` for `m` distinct labels) is reported alongside whenever it differs
/// from `pi0!`.
pub fn model_enufunction(
    g: &LabelledGraph,
    per_dimension: &BTreeMap<u32, EnuSeries>,
    truncation: u32,
) -> Result<EnuFunction, SeriesError> {
    for v in g.vertices() {
        if v.label == 0 {
            return Err(SeriesError::ZeroLabelled(v.id.clone()));
        }
    }
    let labels = g.positive_labels();
    let mut used: Vec<&EnuSeries> = Vec::new();
    for &label in &labels {
        used.push(
            per_dimension
                .get(&label)
                .ok_or(SeriesError::MissingSeries(label))?,
        );
    }

    let mut variables: Vec<String> = Vec::new();
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for series in &used {
        for name in series.variables() {
            if !seen.insert(name) {
                return Err(SeriesError::VariableCollision(name.clone()));
            }
            variables.push(name.clone());
        }
    }

    let cap = used
        .iter()
        .map(|s| s.truncation())
        .fold(truncation, u32::min);
    let mut product = EnuSeries::constant(variables.clone(), cap, 1);
    for series in &used {
        let embedded = series.embedded(&variables)?;
        product = mul(&product, &embedded)?;
    }

    let report = automorphism_orbits(g)?;
    let factor = factorial(report.pi0);
    let series = scale(&product, &factor);

    let literal = special_form(&Adjacency::of(g)).and_then(|form| {
        let literal_factor = match form {
            SpecialForm::CompleteGraph { .. } => BigInt::one(),
            SpecialForm::CompleteMultipartite { distinct_labels } => factorial(distinct_labels),
        };
        (literal_factor != factor).then(|| LiteralFactor {
            form,
            factor: literal_factor.clone(),
            series: scale(&product, &literal_factor),
        })
    });

    Ok(EnuFunction {
        pi0: report.pi0,
        factor,
        series,
        literal,
    })
}
