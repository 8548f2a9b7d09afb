//! Interchange documents for every file the CLI reads or writes.
//!
//! Models and graphs use the same schema on input and output, so any
//! emitted document feeds straight into another invocation. Big integers
//! and rationals travel as decimal strings to stay exact; plain JSON
//! integers are accepted on input. Maps are ordered, so serialization is
//! deterministic.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use comanifold::diffgeo::{ChartSpec, DifferentialForm, MetricField, MinkowskiNorm, Poly};
use comanifold::graph::LabelledGraph;
use comanifold::model::{CombinatorialModel, Genus, IntersectionRecord, ManifoldAtom};
use comanifold::series::{EnuFunction, EnuSeries, SpecialForm};

// ---------------------------------------------------------------------------
// Exact number helpers
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Text(String),
}

fn bigint_to_string<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&value.to_string())
}

fn bigint_from_any<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
    match RawNumber::deserialize(deserializer)? {
        RawNumber::Int(v) => Ok(BigInt::from(v)),
        RawNumber::Text(t) => BigInt::from_str(t.trim()).map_err(serde::de::Error::custom),
    }
}

fn rational_to_string<S: Serializer>(
    value: &BigRational,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&value.to_string())
}

fn rational_from_any<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigRational, D::Error> {
    match RawNumber::deserialize(deserializer)? {
        RawNumber::Int(v) => Ok(BigRational::from_integer(BigInt::from(v))),
        RawNumber::Text(t) => BigRational::from_str(t.trim()).map_err(serde::de::Error::custom),
    }
}

// ---------------------------------------------------------------------------
// Model documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusDoc {
    pub orientable: bool,
    pub value: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub id: String,
    pub dim: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pi_rank: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub simply_connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<GenusDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordDoc {
    pub atoms: Vec<String>,
    pub dim: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub tangent_point: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub atoms: Vec<AtomDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intersections: Vec<RecordDoc>,
}

impl ModelDoc {
    pub fn from_model(model: &CombinatorialModel) -> Self {
        ModelDoc {
            atoms: model
                .atoms
                .iter()
                .map(|a| AtomDoc {
                    id: a.id.clone(),
                    dim: a.dim,
                    euler: a.euler,
                    pi_rank: a.pi_rank.iter().map(|(d, r)| (d.to_string(), *r)).collect(),
                    simply_connected: a.simply_connected,
                    genus: a.genus.as_ref().map(|g| GenusDoc {
                        orientable: g.orientable,
                        value: g.value,
                    }),
                })
                .collect(),
            intersections: model
                .intersections
                .iter()
                .map(|r| RecordDoc {
                    atoms: r.atoms.iter().cloned().collect(),
                    dim: r.dim,
                    euler: r.euler,
                    tangent_point: r.tangent_point,
                })
                .collect(),
        }
    }

    /// Duplicate ids and other structural faults pass through untouched;
    /// validation reports them, so `validate` can list every finding.
    pub fn into_model(self) -> Result<CombinatorialModel> {
        let atoms = self
            .atoms
            .into_iter()
            .map(|a| {
                let mut pi_rank = BTreeMap::new();
                for (depth, rank) in a.pi_rank {
                    let depth: u32 = depth
                        .parse()
                        .with_context(|| format!("pi_rank key `{depth}` is not a depth"))?;
                    pi_rank.insert(depth, rank);
                }
                Ok(ManifoldAtom {
                    id: a.id,
                    dim: a.dim,
                    euler: a.euler,
                    pi_rank,
                    simply_connected: a.simply_connected,
                    genus: a.genus.map(|g| Genus {
                        orientable: g.orientable,
                        value: g.value,
                    }),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let intersections = self
            .intersections
            .into_iter()
            .map(|r| IntersectionRecord {
                atoms: r.atoms.into_iter().collect(),
                dim: r.dim,
                euler: r.euler,
                tangent_point: r.tangent_point,
            })
            .collect();
        Ok(CombinatorialModel::new(atoms, intersections))
    }
}

// ---------------------------------------------------------------------------
// Graph documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub label: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<(String, String)>,
}

impl GraphDoc {
    pub fn from_graph(graph: &LabelledGraph) -> Self {
        GraphDoc {
            vertices: graph
                .vertices()
                .iter()
                .map(|v| VertexDoc {
                    id: v.id.clone(),
                    label: v.label,
                })
                .collect(),
            edges: graph.edges().iter().cloned().collect(),
        }
    }

    pub fn into_graph(self) -> Result<LabelledGraph> {
        let vertices = self.vertices.into_iter().map(|v| (v.id, v.label));
        LabelledGraph::new(vertices, self.edges, 0).context("graph document")
    }
}

// ---------------------------------------------------------------------------
// Chart, polynomial, form, and metric documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub s: usize,
    pub shat: u32,
    pub dims: Vec<u32>,
}

impl ChartDoc {
    pub fn from_chart(chart: &ChartSpec) -> Self {
        ChartDoc {
            s: chart.manifold_count(),
            shat: chart.shared_dim(),
            dims: chart.dims().to_vec(),
        }
    }

    pub fn into_chart(self) -> Result<ChartSpec> {
        if self.s != self.dims.len() {
            bail!(
                "chart declares s = {} but lists {} dims",
                self.s,
                self.dims.len()
            );
        }
        ChartSpec::new(self.dims, self.shat).context("chart document")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTermDoc {
    pub exponents: Vec<u32>,
    #[serde(
        serialize_with = "rational_to_string",
        deserialize_with = "rational_from_any"
    )]
    pub coefficient: BigRational,
}

pub type PolyDoc = Vec<PolyTermDoc>;

pub fn poly_to_doc(poly: &Poly) -> PolyDoc {
    poly.terms()
        .map(|(exponents, coefficient)| PolyTermDoc {
            exponents: exponents.clone(),
            coefficient: coefficient.clone(),
        })
        .collect()
}

pub fn poly_from_doc(arity: usize, doc: Vec<PolyTermDoc>) -> Result<Poly> {
    Poly::from_terms(arity, doc.into_iter().map(|t| (t.exponents, t.coefficient)))
        .context("polynomial term list")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTermDoc {
    pub indices: Vec<usize>,
    pub polynomial: PolyDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub chart: ChartDoc,
    pub degree: u32,
    pub terms: Vec<FormTermDoc>,
}

impl FormDoc {
    pub fn from_form(form: &DifferentialForm) -> Self {
        FormDoc {
            chart: ChartDoc::from_chart(form.chart()),
            degree: form.degree(),
            terms: form
                .terms()
                .map(|(indices, poly)| FormTermDoc {
                    indices: indices.clone(),
                    polynomial: poly_to_doc(poly),
                })
                .collect(),
        }
    }

    pub fn into_form(self) -> Result<DifferentialForm> {
        let chart = self.chart.into_chart()?;
        let arity = chart.tangent_dimension();
        let terms = self
            .terms
            .into_iter()
            .map(|t| Ok((t.indices, poly_from_doc(arity, t.polynomial)?)))
            .collect::<Result<Vec<_>>>()?;
        DifferentialForm::from_terms(chart, self.degree, terms).context("form document")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDoc {
    pub chart: ChartDoc,
    pub entries: Vec<Vec<PolyDoc>>,
}

impl MetricDoc {
    pub fn into_metric(self) -> Result<MetricField> {
        let chart = self.chart.into_chart()?;
        let arity = chart.tangent_dimension();
        let entries = self
            .entries
            .into_iter()
            .map(|row| row.into_iter().map(|p| poly_from_doc(arity, p)).collect())
            .collect::<Result<Vec<Vec<Poly>>>>()?;
        MetricField::from_polynomials(chart, entries).context("metric document")
    }
}

// ---------------------------------------------------------------------------
// Norm documents
// ---------------------------------------------------------------------------

/// A candidate Minkowski norm. `quadratic` expects a positive-definite
/// matrix and `signed_difference` is the stock counterexample that fails
/// non-negativity; the axioms are checked, never assumed.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormDoc {
    Euclidean { dim: usize },
    Quadratic { matrix: Vec<Vec<f64>> },
    PNorm { dim: usize, p: f64 },
    SignedDifference { dim: usize },
}

impl NormDoc {
    pub fn dim(&self) -> usize {
        match self {
            NormDoc::Euclidean { dim } | NormDoc::PNorm { dim, .. } => *dim,
            NormDoc::SignedDifference { dim } => *dim,
            NormDoc::Quadratic { matrix } => matrix.len(),
        }
    }

    pub fn build(self) -> Result<MinkowskiNorm> {
        match self {
            NormDoc::Euclidean { dim } => {
                if dim == 0 {
                    bail!("norm dimension must be positive");
                }
                Ok(MinkowskiNorm::euclidean(dim))
            }
            NormDoc::Quadratic { matrix } => {
                let dim = matrix.len();
                if dim == 0 || matrix.iter().any(|row| row.len() != dim) {
                    bail!("quadratic norm matrix must be square and nonempty");
                }
                Ok(MinkowskiNorm::from_fn(dim, move |v| {
                    let mut q = 0.0;
                    for (i, row) in matrix.iter().enumerate() {
                        for (j, entry) in row.iter().enumerate() {
                            q += entry * v[i] * v[j];
                        }
                    }
                    q.max(0.0).sqrt()
                }))
            }
            NormDoc::PNorm { dim, p } => {
                if dim == 0 {
                    bail!("norm dimension must be positive");
                }
                if p.is_nan() || p < 1.0 {
                    bail!("p-norm exponent must be at least 1");
                }
                Ok(MinkowskiNorm::from_fn(dim, move |v| {
                    v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
                }))
            }
            NormDoc::SignedDifference { dim } => {
                if dim < 2 {
                    bail!("the signed difference needs at least two coordinates");
                }
                Ok(MinkowskiNorm::from_fn(dim, |v| {
                    v[0].abs() - v[1..].iter().map(|x| x.abs()).sum::<f64>()
                }))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Series documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTermDoc {
    pub exponents: Vec<u32>,
    #[serde(
        serialize_with = "bigint_to_string",
        deserialize_with = "bigint_from_any"
    )]
    pub coefficient: BigInt,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    pub variables: Vec<String>,
    pub truncation: u32,
    pub terms: Vec<SeriesTermDoc>,
}

impl SeriesDoc {
    pub fn from_series(series: &EnuSeries) -> Self {
        SeriesDoc {
            variables: series.variables().to_vec(),
            truncation: series.truncation(),
            terms: series
                .terms()
                .map(|(exponents, coefficient)| SeriesTermDoc {
                    exponents: exponents.clone(),
                    coefficient: coefficient.clone(),
                })
                .collect(),
        }
    }

    pub fn into_series(self) -> Result<EnuSeries> {
        EnuSeries::from_terms(
            self.variables,
            self.truncation,
            self.terms.into_iter().map(|t| (t.exponents, t.coefficient)),
        )
        .context("series document")
    }
}

/// Input table for `enum`: one series per positive label.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTableDoc {
    pub series: BTreeMap<String, SeriesDoc>,
}

impl SeriesTableDoc {
    pub fn into_table(self) -> Result<BTreeMap<u32, EnuSeries>> {
        let mut table = BTreeMap::new();
        for (label, doc) in self.series {
            let label: u32 = label
                .parse()
                .with_context(|| format!("series key `{label}` is not a label"))?;
            table.insert(label, doc.into_series()?);
        }
        Ok(table)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecialFormDoc {
    CompleteGraph { order: usize },
    CompleteMultipartite { distinct_labels: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiteralFactorDoc {
    pub form: SpecialFormDoc,
    #[serde(
        serialize_with = "bigint_to_string",
        deserialize_with = "bigint_from_any"
    )]
    pub factor: BigInt,
    pub series: SeriesDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnuFunctionDoc {
    pub pi0: usize,
    #[serde(
        serialize_with = "bigint_to_string",
        deserialize_with = "bigint_from_any"
    )]
    pub factor: BigInt,
    pub series: SeriesDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literal: Option<LiteralFactorDoc>,
}

impl EnuFunctionDoc {
    pub fn from_function(f: &EnuFunction) -> Self {
        EnuFunctionDoc {
            pi0: f.pi0,
            factor: f.factor.clone(),
            series: SeriesDoc::from_series(&f.series),
            literal: f.literal.as_ref().map(|l| LiteralFactorDoc {
                form: match l.form {
                    SpecialForm::CompleteGraph { order } => SpecialFormDoc::CompleteGraph { order },
                    SpecialForm::CompleteMultipartite { distinct_labels } => {
                        SpecialFormDoc::CompleteMultipartite { distinct_labels }
                    }
                },
                factor: l.factor.clone(),
                series: SeriesDoc::from_series(&l.series),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Report documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub code: String,
    pub subject: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationDoc {
    pub clean: bool,
    pub violations: Vec<ViolationDoc>,
    pub advisories: Vec<ViolationDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EulerDoc {
    pub euler: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankBodyDoc {
    pub total: u64,
    pub atom_part: BTreeMap<String, u64>,
    pub graph_part: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankDoc {
    pub d: u32,
    pub rank: RankBodyDoc,
    pub simply_connected: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivDoc {
    pub equivalent: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassDoc {
    pub label: u32,
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitsDoc {
    pub pi0: usize,
    pub class_transitive: bool,
    pub classes: Vec<ClassDoc>,
    pub orbits: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DepthDoc {
    pub d: u32,
    pub dropped: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecursionDoc {
    pub depths: Vec<DepthDoc>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimDoc {
    pub chart: ChartDoc,
    pub tangent_dimension: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChristoffelDoc {
    pub point: Vec<f64>,
    /// `gamma[c][a][b]`, the coefficient of the `c`-th basis vector when
    /// transporting index `a` along direction `b`.
    pub gamma: Vec<Vec<Vec<f64>>>,
    pub compatibility_residual: f64,
    pub torsion_max: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormReportDoc {
    pub samples: usize,
    pub non_negative: bool,
    pub min_value: f64,
    pub homogeneous: bool,
    pub worst_homogeneity: f64,
    pub positive_definite: bool,
    pub min_eigenvalue: f64,
    pub passed: bool,
}
