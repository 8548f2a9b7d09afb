//! Data model: atoms, intersection records, and model validation.
//!
//! A [`CombinatorialModel`] is a list of [`ManifoldAtom`]s together with an
//! intersection table. Atoms are black boxes; everything the rest of the
//! crate computes is derived from the recorded metadata. Fields are public
//! so that invalid states are representable: [`validate_model`] reports
//! violations as data instead of failing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Identifier of an atom within a model.
pub type AtomId = String;

/// Genus metadata for a 2-dimensional atom.
///
/// For an orientable surface of genus `value` the Euler characteristic is
/// `2 - 2 * value`; for a non-orientable one it is `2 - value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Genus {
    pub orientable: bool,
    pub value: u32,
}

impl Genus {
    /// Euler characteristic implied by the genus.
    pub fn euler(&self) -> i64 {
        if self.orientable {
            2 - 2 * i64::from(self.value)
        } else {
            2 - i64::from(self.value)
        }
    }
}

/// One manifold in the union, carried as metadata only.
///
/// `euler` and `pi_rank` are user-supplied; absent means unknown. `pi_rank`
/// maps a depth `d >= 1` to the rank of the fundamental `d`-group of the
/// atom. A simply connected atom has rank 0 at every depth and may leave
/// `pi_rank` empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldAtom {
    pub id: AtomId,
    pub dim: u32,
    pub euler: Option<i64>,
    pub pi_rank: BTreeMap<u32, u64>,
    pub simply_connected: bool,
    pub genus: Option<Genus>,
}

impl ManifoldAtom {
    /// Atom with the given id and dimension and no further metadata.
    pub fn new(id: impl Into<String>, dim: u32) -> Self {
        ManifoldAtom {
            id: id.into(),
            dim,
            euler: None,
            pi_rank: BTreeMap::new(),
            simply_connected: false,
            genus: None,
        }
    }

    pub fn with_euler(mut self, euler: i64) -> Self {
        self.euler = Some(euler);
        self
    }

    pub fn simply_connected(mut self) -> Self {
        self.simply_connected = true;
        self
    }

    pub fn with_rank(mut self, d: u32, rank: u64) -> Self {
        self.pi_rank.insert(d, rank);
        self
    }

    pub fn with_genus(mut self, orientable: bool, value: u32) -> Self {
        self.genus = Some(Genus { orientable, value });
        self
    }

    /// Rank of the fundamental `d`-group, if known.
    ///
    /// Simply connected atoms report 0 at every depth.
    pub fn rank(&self, d: u32) -> Option<u64> {
        if self.simply_connected {
            Some(0)
        } else {
            self.pi_rank.get(&d).copied()
        }
    }
}

/// A recorded nonempty intersection among two or more atoms.
///
/// Subsets of atoms without a record intersect emptily by convention.
/// A tangent point (`tangent_point = true`) is an isolated intersection
/// point: its dimension is 0 and its Euler characteristic defaults to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionRecord {
    pub atoms: BTreeSet<AtomId>,
    pub dim: u32,
    pub euler: Option<i64>,
    pub tangent_point: bool,
}

impl IntersectionRecord {
    /// Non-tangent intersection of the given dimension.
    pub fn new<I, S>(atoms: I, dim: u32) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        IntersectionRecord {
            atoms: atoms.into_iter().map(Into::into).collect(),
            dim,
            euler: None,
            tangent_point: false,
        }
    }

    /// Tangent point shared by the given atoms.
    pub fn tangent<I, S>(atoms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        IntersectionRecord {
            atoms: atoms.into_iter().map(Into::into).collect(),
            dim: 0,
            euler: None,
            tangent_point: true,
        }
    }

    pub fn with_euler(mut self, euler: i64) -> Self {
        self.euler = Some(euler);
        self
    }

    /// Euler characteristic used in computations: tangent points default to 1.
    pub fn effective_euler(&self) -> Option<i64> {
        if self.tangent_point {
            Some(self.euler.unwrap_or(1))
        } else {
            self.euler
        }
    }
}

/// A finite union of manifolds with its intersection table.
#[derive(Debug, Clone, Default)]
pub struct CombinatorialModel {
    pub atoms: Vec<ManifoldAtom>,
    pub intersections: Vec<IntersectionRecord>,
}

impl CombinatorialModel {
    pub fn new(atoms: Vec<ManifoldAtom>, intersections: Vec<IntersectionRecord>) -> Self {
        CombinatorialModel {
            atoms,
            intersections,
        }
    }

    pub fn atom(&self, id: &str) -> Option<&ManifoldAtom> {
        self.atoms.iter().find(|a| a.id == id)
    }

    /// Smallest atom dimension, the `n_1` of the dimension sequence.
    pub fn min_dim(&self) -> Option<u32> {
        self.atoms.iter().map(|a| a.dim).min()
    }

    /// Errors with the validation report unless the model is clean.
    pub fn ensure_valid(&self) -> Result<(), ModelError> {
        let report = validate_model(self);
        if report.is_clean() {
            Ok(())
        } else {
            Err(ModelError::Invalid(report))
        }
    }
}

// Equality is up to ordering of the atom and intersection lists.
impl PartialEq for CombinatorialModel {
    fn eq(&self, other: &Self) -> bool {
        fn key(m: &CombinatorialModel) -> (Vec<&ManifoldAtom>, Vec<&IntersectionRecord>) {
            let mut atoms: Vec<&ManifoldAtom> = m.atoms.iter().collect();
            atoms.sort_by(|a, b| a.id.cmp(&b.id));
            let mut records: Vec<&IntersectionRecord> = m.intersections.iter().collect();
            records.sort_by(|a, b| a.atoms.cmp(&b.atoms).then(a.dim.cmp(&b.dim)));
            (atoms, records)
        }
        let (a1, r1) = key(self);
        let (a2, r2) = key(other);
        a1 == a2 && r1 == r2
    }
}

impl Eq for CombinatorialModel {}

/// Machine-readable class of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationCode {
    EmptyModel,
    DuplicateAtomId,
    ZeroDimension,
    RankDepth,
    SimplyConnectedRank,
    GenusDimension,
    GenusEuler,
    IntersectionArity,
    UnknownAtom,
    DuplicateIntersection,
    IntersectionDimension,
    TangentDimension,
    TangentEuler,
    EmptyGraph,
    DuplicateVertexId,
    SelfLoop,
    UnknownVertex,
    Disconnected,
    ZeroZeroAdjacency,
    TangentDegree,
    DuplicateTangency,
    TangencyOverlap,
    OneLabelledCliques,
}

impl ViolationCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationCode::EmptyModel => "empty-model",
            ViolationCode::DuplicateAtomId => "duplicate-atom-id",
            ViolationCode::ZeroDimension => "zero-dimension",
            ViolationCode::RankDepth => "rank-depth",
            ViolationCode::SimplyConnectedRank => "simply-connected-rank",
            ViolationCode::GenusDimension => "genus-dimension",
            ViolationCode::GenusEuler => "genus-euler",
            ViolationCode::IntersectionArity => "intersection-arity",
            ViolationCode::UnknownAtom => "unknown-atom",
            ViolationCode::DuplicateIntersection => "duplicate-intersection",
            ViolationCode::IntersectionDimension => "intersection-dimension",
            ViolationCode::TangentDimension => "tangent-dimension",
            ViolationCode::TangentEuler => "tangent-euler",
            ViolationCode::EmptyGraph => "empty-graph",
            ViolationCode::DuplicateVertexId => "duplicate-vertex-id",
            ViolationCode::SelfLoop => "self-loop",
            ViolationCode::UnknownVertex => "unknown-vertex",
            ViolationCode::Disconnected => "disconnected",
            ViolationCode::ZeroZeroAdjacency => "zero-zero-adjacency",
            ViolationCode::TangentDegree => "tangent-degree",
            ViolationCode::DuplicateTangency => "duplicate-tangency",
            ViolationCode::TangencyOverlap => "tangency-overlap",
            ViolationCode::OneLabelledCliques => "one-labelled-cliques",
        }
    }
}

impl core::fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One validation finding, tied to the offending atom, record, or vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub subject: String,
    pub message: String,
}

impl Violation {
    fn new(code: ViolationCode, subject: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            code,
            subject: subject.into(),
            message: message.into(),
        }
    }
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "[{}] {}: {}", self.code, self.subject, self.message)
    }
}

/// Outcome of validating a model or a labelled graph.
///
/// `violations` block membership and downstream computations; `advisories`
/// flag suspicious but tolerated structure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub advisories: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn violation(
        &mut self,
        code: ViolationCode,
        subject: impl Into<String>,
        message: impl Into<String>,
    ) {
        self.violations.push(Violation::new(code, subject, message));
    }

    pub(crate) fn advisory(
        &mut self,
        code: ViolationCode,
        subject: impl Into<String>,
        message: impl Into<String>,
    ) {
        self.advisories.push(Violation::new(code, subject, message));
    }
}

/// Error for operations that require a clean model.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("model failed validation with {} violation(s)", .0.violations.len())]
    Invalid(ValidationReport),
}

/// Checks every structural invariant of a model and reports findings.
///
/// The checks are: the model is nonempty; atom ids are unique; dimensions
/// are at least 1; `pi_rank` depths are at least 1 and vanish on simply
/// connected atoms; genus metadata only appears on surfaces and agrees with
/// a recorded Euler characteristic; every intersection names at least two
/// existing atoms, no atom set is recorded twice, the intersection dimension
/// does not exceed any member dimension; tangent points have dimension 0 and
/// Euler characteristic 1.
pub fn validate_model(model: &CombinatorialModel) -> ValidationReport {
    let mut report = ValidationReport::default();

    if model.atoms.is_empty() {
        report.violation(
            ViolationCode::EmptyModel,
            "model",
            "a model needs at least one atom",
        );
    }

    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for atom in &model.atoms {
        if !seen.insert(&atom.id) {
            report.violation(
                ViolationCode::DuplicateAtomId,
                atom.id.clone(),
                "atom id appears more than once",
            );
        }
        if atom.dim < 1 {
            report.violation(
                ViolationCode::ZeroDimension,
                atom.id.clone(),
                "atom dimension must be at least 1",
            );
        }
        if atom.pi_rank.contains_key(&0) {
            report.violation(
                ViolationCode::RankDepth,
                atom.id.clone(),
                "pi_rank depths start at 1",
            );
        }
        if atom.simply_connected && atom.pi_rank.values().any(|&r| r != 0) {
            report.violation(
                ViolationCode::SimplyConnectedRank,
                atom.id.clone(),
                "simply connected atom with a nonzero homotopy rank",
            );
        }
        if let Some(genus) = &atom.genus {
            if atom.dim != 2 {
                report.violation(
                    ViolationCode::GenusDimension,
                    atom.id.clone(),
                    format!("genus recorded on a {}-dimensional atom", atom.dim),
                );
            } else if let Some(euler) = atom.euler {
                if euler != genus.euler() {
                    report.violation(
                        ViolationCode::GenusEuler,
                        atom.id.clone(),
                        format!(
                            "euler {} does not match genus value {} ({})",
                            euler,
                            genus.value,
                            if genus.orientable {
                                "orientable"
                            } else {
                                "non-orientable"
                            }
                        ),
                    );
                }
            }
        }
    }

    let ids: BTreeSet<&str> = model.atoms.iter().map(|a| a.id.as_str()).collect();
    let mut recorded: BTreeSet<&BTreeSet<AtomId>> = BTreeSet::new();
    for (index, record) in model.intersections.iter().enumerate() {
        let subject = record_subject(index, record);
        if record.atoms.len() < 2 {
            report.violation(
                ViolationCode::IntersectionArity,
                subject.clone(),
                "an intersection involves at least two atoms",
            );
        }
        for id in &record.atoms {
            if !ids.contains(id.as_str()) {
                report.violation(
                    ViolationCode::UnknownAtom,
                    subject.clone(),
                    format!("intersection references unknown atom `{id}`"),
                );
            }
        }
        if !recorded.insert(&record.atoms) {
            report.violation(
                ViolationCode::DuplicateIntersection,
                subject.clone(),
                "atom set already has an intersection record",
            );
        }
        let min_member_dim = record
            .atoms
            .iter()
            .filter_map(|id| model.atom(id))
            .map(|a| a.dim)
            .min();
        if let Some(min_dim) = min_member_dim {
            if record.dim > min_dim {
                report.violation(
                    ViolationCode::IntersectionDimension,
                    subject.clone(),
                    format!(
                        "intersection dimension {} exceeds smallest member dimension {}",
                        record.dim, min_dim
                    ),
                );
            }
        }
        if record.tangent_point {
            if record.dim != 0 {
                report.violation(
                    ViolationCode::TangentDimension,
                    subject.clone(),
                    "a tangent point has dimension 0",
                );
            }
            if let Some(euler) = record.euler {
                if euler != 1 {
                    report.violation(
                        ViolationCode::TangentEuler,
                        subject.clone(),
                        "a tangent point has Euler characteristic 1",
                    );
                }
            }
        }
    }

    report
}

pub(crate) fn record_subject(index: usize, record: &IntersectionRecord) -> String {
    let mut names: Vec<&str> = record.atoms.iter().map(String::as_str).collect();
    names.sort_unstable();
    if names.is_empty() {
        format!("intersection #{index}")
    } else {
        names.join(" ∩ ")
    }
}

/// Sorted distinct atom dimensions of a valid model.
pub fn dimension_sequence(model: &CombinatorialModel) -> Result<Vec<u32>, ModelError> {
    model.ensure_valid()?;
    let dims: BTreeSet<u32> = model.atoms.iter().map(|a| a.dim).collect();
    Ok(dims.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_sphere_model() -> CombinatorialModel {
        CombinatorialModel::new(
            alloc::vec![
                ManifoldAtom::new("a", 2).with_euler(2).simply_connected(),
                ManifoldAtom::new("b", 2).with_euler(2).simply_connected(),
            ],
            alloc::vec![IntersectionRecord::new(["a", "b"], 1).with_euler(0)],
        )
    }

    #[test]
    fn valid_model_has_clean_report() {
        let report = validate_model(&two_sphere_model());
        assert!(report.is_clean(), "unexpected violations: {report:?}");
        assert!(report.advisories.is_empty());
    }

    #[test]
    fn empty_model_is_rejected() {
        let report = validate_model(&CombinatorialModel::default());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].code, ViolationCode::EmptyModel);
    }

    #[test]
    fn duplicate_atom_ids_are_flagged() {
        let model = CombinatorialModel::new(
            alloc::vec![ManifoldAtom::new("a", 2), ManifoldAtom::new("a", 3)],
            alloc::vec![],
        );
        let report = validate_model(&model);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::DuplicateAtomId && v.subject == "a"));
    }

    #[test]
    fn intersection_dimension_cannot_exceed_member_dimension() {
        let mut model = two_sphere_model();
        model.intersections[0].dim = 3;
        let report = validate_model(&model);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::IntersectionDimension));
    }

    #[test]
    fn tangent_points_have_dimension_zero_and_euler_one() {
        let mut model = two_sphere_model();
        model.intersections[0] = IntersectionRecord::tangent(["a", "b"]);
        assert!(validate_model(&model).is_clean());
        assert_eq!(model.intersections[0].effective_euler(), Some(1));

        model.intersections[0].dim = 1;
        model.intersections[0].euler = Some(0);
        let report = validate_model(&model);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::TangentDimension));
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::TangentEuler));
    }

    #[test]
    fn genus_must_sit_on_a_surface_and_match_euler() {
        let torus = ManifoldAtom::new("t", 2).with_euler(0).with_genus(true, 1);
        assert!(
            validate_model(&CombinatorialModel::new(alloc::vec![torus], alloc::vec![])).is_clean()
        );

        let klein = ManifoldAtom::new("k", 2).with_euler(0).with_genus(false, 2);
        assert!(
            validate_model(&CombinatorialModel::new(alloc::vec![klein], alloc::vec![])).is_clean()
        );

        let wrong = ManifoldAtom::new("w", 2).with_euler(2).with_genus(true, 1);
        let report = validate_model(&CombinatorialModel::new(alloc::vec![wrong], alloc::vec![]));
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::GenusEuler));

        let solid = ManifoldAtom::new("s", 3).with_genus(true, 1);
        let report = validate_model(&CombinatorialModel::new(alloc::vec![solid], alloc::vec![]));
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::GenusDimension));
    }

    #[test]
    fn simply_connected_atoms_report_rank_zero_everywhere() {
        let atom = ManifoldAtom::new("a", 4).simply_connected();
        assert_eq!(atom.rank(1), Some(0));
        assert_eq!(atom.rank(3), Some(0));

        let torus = ManifoldAtom::new("t", 2).with_rank(1, 2);
        assert_eq!(torus.rank(1), Some(2));
        assert_eq!(torus.rank(2), None);
    }

    #[test]
    fn inconsistent_rank_metadata_is_flagged() {
        let bad = ManifoldAtom::new("a", 2).simply_connected().with_rank(1, 2);
        let report = validate_model(&CombinatorialModel::new(alloc::vec![bad], alloc::vec![]));
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::SimplyConnectedRank));
    }

    #[test]
    fn unknown_atoms_and_duplicate_sets_are_flagged() {
        let mut model = two_sphere_model();
        model
            .intersections
            .push(IntersectionRecord::new(["a", "c"], 1));
        model
            .intersections
            .push(IntersectionRecord::new(["b", "a"], 0));
        let report = validate_model(&model);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::UnknownAtom));
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::DuplicateIntersection));
    }

    #[test]
    fn dimension_sequence_is_sorted_and_distinct() {
        let model = CombinatorialModel::new(
            alloc::vec![
                ManifoldAtom::new("a", 5),
                ManifoldAtom::new("b", 3),
                ManifoldAtom::new("c", 3),
            ],
            alloc::vec![],
        );
        assert_eq!(dimension_sequence(&model).unwrap(), alloc::vec![3, 5]);

        let invalid = CombinatorialModel::default();
        assert!(dimension_sequence(&invalid).is_err());
    }

    #[test]
    fn model_equality_ignores_ordering() {
        let a = two_sphere_model();
        let mut b = a.clone();
        b.atoms.reverse();
        assert_eq!(a, b);

        let mut c = a.clone();
        c.atoms[0].dim = 3;
        assert_ne!(a, c);
    }
}
