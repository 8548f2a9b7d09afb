//! Skeleton graphs `G^d` and labelled-graph membership.
//!
//! The skeleton graph at depth `d >= 1` has one vertex per atom, labelled by
//! the atom's dimension, and one vertex per tangent-point record, labelled 0.
//! Two atom vertices are adjacent iff some non-tangent record containing both
//! has dimension at least `d`; a tangent vertex is adjacent to every member
//! of its record at every depth. Raising `d` therefore only removes edges:
//! `G^{d+1}` is `G^d` minus the edges whose intersection dimension is
//! exactly `d` ([`edge_drop_set`], [`derive_next`]).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::model::{
    validate_model, CombinatorialModel, IntersectionRecord, ManifoldAtom, ModelError,
    ValidationReport, ViolationCode,
};

/// A vertex of a labelled graph. Label 0 marks a tangent point, a positive
/// label the dimension of an atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vertex {
    pub id: String,
    pub label: u32,
}

/// An undirected edge, stored with endpoints in sorted order.
pub type Edge = (String, String);

pub(crate) fn edge(a: &str, b: &str) -> Edge {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// A finite labelled graph, the value type for every skeleton computation.
///
/// Vertices are kept sorted by id and edges normalized, so structural
/// equality is set equality. `d` records the depth the graph was built at
/// (0 for graphs without provenance, e.g. loaded from a file).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<Edge>,
    d: u32,
}

/// Errors from graph construction and realization.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("depth d must be at least 1")]
    DepthZero,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("edge ({0}, {1}) references an unknown vertex")]
    UnknownEndpoint(String, String),
    #[error("edge ({0}, {1}) is not present in the graph")]
    UnknownEdge(String, String),
    #[error("graph is not a member of the labelled-graph family: {0:?}")]
    NotMember(ValidationReport),
    #[error("vertex `{id}` has label {label}, below the requested depth {d}")]
    LabelBelowDepth { id: String, label: u32, d: u32 },
}

impl LabelledGraph {
    /// Builds a graph, normalizing vertex order and edge orientation.
    ///
    /// Rejects duplicate vertex ids, self-loops, and edges with unknown
    /// endpoints. Parallel edges collapse silently.
    pub fn new<V, E, S, A, B>(vertices: V, edges: E, d: u32) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = (S, u32)>,
        E: IntoIterator<Item = (A, B)>,
        S: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut vs: Vec<Vertex> = vertices
            .into_iter()
            .map(|(id, label)| Vertex {
                id: id.into(),
                label,
            })
            .collect();
        vs.sort();
        for pair in vs.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(GraphError::DuplicateVertex(pair[0].id.clone()));
            }
        }
        let ids: BTreeSet<&str> = vs.iter().map(|v| v.id.as_str()).collect();
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            if !ids.contains(a) || !ids.contains(b) {
                return Err(GraphError::UnknownEndpoint(a.to_string(), b.to_string()));
            }
            es.insert(edge(a, b));
        }
        Ok(LabelledGraph {
            vertices: vs,
            edges: es,
            d,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label_of(&self, id: &str) -> Option<u32> {
        self.vertices
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .ok()
            .map(|i| self.vertices[i].label)
    }

    pub fn contains_edge(&self, a: &str, b: &str) -> bool {
        self.edges.contains(&edge(a, b))
    }

    /// Distinct positive labels in sorted order.
    pub fn positive_labels(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self
            .vertices
            .iter()
            .filter(|v| v.label > 0)
            .map(|v| v.label)
            .collect();
        set.into_iter().collect()
    }
}

/// Index-based view of a graph for the algorithms in this crate.
#[derive(Debug, Clone)]
pub(crate) struct Adjacency {
    pub ids: Vec<String>,
    pub labels: Vec<u32>,
    pub neighbors: Vec<Vec<usize>>,
}

impl Adjacency {
    pub fn of(g: &LabelledGraph) -> Self {
        let ids: Vec<String> = g.vertices.iter().map(|v| v.id.clone()).collect();
        let labels: Vec<u32> = g.vertices.iter().map(|v| v.label).collect();
        let index: BTreeMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let mut neighbors = alloc::vec![Vec::new(); ids.len()];
        for (a, b) in &g.edges {
            let (i, j) = (index[a.as_str()], index[b.as_str()]);
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Adjacency {
            ids,
            labels,
            neighbors,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Number of connected components; 0 for the empty graph.
    pub fn component_count(&self) -> usize {
        let n = self.len();
        let mut seen = alloc::vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = alloc::vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &self.neighbors[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }
}

fn tangent_vertex_id(record: &IntersectionRecord) -> String {
    let names: Vec<&str> = record.atoms.iter().map(String::as_str).collect();
    format!("0:{}", names.join("&"))
}

/// Builds the skeleton graph `G^d` of a valid model.
///
/// Edges between atom vertices require a non-tangent record of dimension at
/// least `d` containing both; a record over more than two atoms contributes
/// all of its pairs. Tangent records contribute a 0-labelled vertex adjacent
/// to every member, at every depth.
pub fn build_graph(model: &CombinatorialModel, d: u32) -> Result<LabelledGraph, GraphError> {
    if d < 1 {
        return Err(GraphError::DepthZero);
    }
    model.ensure_valid()?;

    let mut vertices: Vec<(String, u32)> =
        model.atoms.iter().map(|a| (a.id.clone(), a.dim)).collect();
    let mut edges: Vec<(String, String)> = Vec::new();

    for record in &model.intersections {
        let members: Vec<&String> = record.atoms.iter().collect();
        if record.tangent_point {
            let tid = tangent_vertex_id(record);
            for member in &members {
                edges.push((tid.clone(), (*member).clone()));
            }
            vertices.push((tid, 0));
        } else if record.dim >= d {
            for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    edges.push(((*a).clone(), (*b).clone()));
                }
            }
        }
    }

    LabelledGraph::new(vertices, edges, d)
}

/// Edges of `G^d` that disappear in `G^{d+1}`.
pub fn edge_drop_set(model: &CombinatorialModel, d: u32) -> Result<BTreeSet<Edge>, GraphError> {
    let current = build_graph(model, d)?;
    let next = build_graph(model, d + 1)?;
    Ok(current.edges.difference(&next.edges).cloned().collect())
}

/// Removes a known set of edges and advances the depth by one.
///
/// This is the recursion step: `derive_next(G^d, edge_drop_set(m, d))`
/// equals `build_graph(m, d + 1)` exactly.
pub fn derive_next(g: &LabelledGraph, drop: &BTreeSet<Edge>) -> Result<LabelledGraph, GraphError> {
    for (a, b) in drop {
        if !g.edges.contains(&edge(a, b)) {
            return Err(GraphError::UnknownEdge(a.clone(), b.clone()));
        }
    }
    let edges: BTreeSet<Edge> = g.edges.difference(drop).cloned().collect();
    Ok(LabelledGraph {
        vertices: g.vertices.clone(),
        edges,
        d: g.d + 1,
    })
}

/// Largest depth `d` in `1..=n_1` at which `G^d` is connected, 0 if none.
///
/// `n_1` is the smallest atom dimension; a connected skeleton is impossible
/// beyond it, and a single-atom model is capped at `n_1` as well.
pub fn max_connected_d(model: &CombinatorialModel) -> Result<u32, GraphError> {
    model.ensure_valid()?;
    let n1 = model.min_dim().expect("valid models are nonempty");
    for d in (1..=n1).rev() {
        let g = build_graph(model, d)?;
        if Adjacency::of(&g).is_connected() {
            return Ok(d);
        }
    }
    Ok(0)
}

/// Membership check for labelled graphs: a clean report means the graph is
/// realizable as a model via [`realize_model`].
///
/// Violations (blocking): the graph is empty or disconnected; a 0-labelled
/// vertex is adjacent to another 0-labelled vertex, has fewer than two
/// neighbours, duplicates another 0-vertex's neighbourhood (the same
/// simultaneous tangency recorded twice), or marks a pair tangent that also
/// has a direct edge (a pair of atoms carries at most one intersection
/// record). Advisory: the vertices labelled 1 should induce a disjoint union
/// of complete graphs.
pub fn validate_labelled_graph(g: &LabelledGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    let adj = Adjacency::of(g);

    if adj.len() == 0 {
        report.violation(ViolationCode::EmptyGraph, "graph", "graph has no vertices");
        return report;
    }
    if !adj.is_connected() {
        report.violation(
            ViolationCode::Disconnected,
            "graph",
            format!("graph has {} components", adj.component_count()),
        );
    }

    let mut tangent_neighborhoods: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for v in 0..adj.len() {
        if adj.labels[v] != 0 {
            continue;
        }
        for &w in &adj.neighbors[v] {
            if adj.labels[w] == 0 && w > v {
                report.violation(
                    ViolationCode::ZeroZeroAdjacency,
                    format!("{} -- {}", adj.ids[v], adj.ids[w]),
                    "tangent vertices may only neighbour positive-labelled vertices",
                );
            }
        }
        if adj.degree(v) < 2 {
            report.violation(
                ViolationCode::TangentDegree,
                adj.ids[v].clone(),
                "a tangent point joins at least two manifolds",
            );
        }
        if let Some(&other) = tangent_neighborhoods.get(&adj.neighbors[v]) {
            report.violation(
                ViolationCode::DuplicateTangency,
                format!("{}, {}", adj.ids[other], adj.ids[v]),
                "two tangent vertices share the same neighbourhood",
            );
        } else {
            tangent_neighborhoods.insert(adj.neighbors[v].clone(), v);
        }
        // A pair can carry one intersection record: tangent at a point or of
        // positive dimension, not both.
        if let [a, b] = adj.neighbors[v][..] {
            if adj.adjacent(a, b) {
                report.violation(
                    ViolationCode::TangencyOverlap,
                    adj.ids[v].clone(),
                    format!(
                        "tangent pair {} -- {} also has a direct intersection edge",
                        adj.ids[a], adj.ids[b]
                    ),
                );
            }
        }
    }

    // Advisory: components of the subgraph induced by label-1 vertices
    // should be cliques.
    let ones: Vec<usize> = (0..adj.len()).filter(|&v| adj.labels[v] == 1).collect();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &start in &ones {
        if seen.contains(&start) {
            continue;
        }
        let mut component = alloc::vec![start];
        let mut stack = alloc::vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &w in &adj.neighbors[v] {
                if adj.labels[w] == 1 && seen.insert(w) {
                    component.push(w);
                    stack.push(w);
                }
            }
        }
        let is_clique = component
            .iter()
            .all(|&a| component.iter().all(|&b| a == b || adj.adjacent(a, b)));
        if !is_clique {
            report.advisory(
                ViolationCode::OneLabelledCliques,
                adj.ids[component[0]].clone(),
                "label-1 vertices do not induce a union of complete graphs",
            );
        }
    }

    report
}

/// Reconstructs a model realizing a member graph at depth `d`.
///
/// Atom dimensions are the vertex labels, so every positive label must be at
/// least `d`. Each positive-positive edge becomes an intersection of
/// dimension exactly `d`; each 0-vertex becomes a tangent record over all of
/// its neighbours. Atom metadata beyond the dimension is left unknown.
pub fn realize_model(g: &LabelledGraph, d: u32) -> Result<CombinatorialModel, GraphError> {
    if d < 1 {
        return Err(GraphError::DepthZero);
    }
    let report = validate_labelled_graph(g);
    if !report.is_clean() {
        return Err(GraphError::NotMember(report));
    }
    for v in g.vertices() {
        if v.label > 0 && v.label < d {
            return Err(GraphError::LabelBelowDepth {
                id: v.id.clone(),
                label: v.label,
                d,
            });
        }
    }

    let adj = Adjacency::of(g);
    let atoms: Vec<ManifoldAtom> = g
        .vertices()
        .iter()
        .filter(|v| v.label > 0)
        .map(|v| ManifoldAtom::new(v.id.clone(), v.label))
        .collect();

    let mut intersections: Vec<IntersectionRecord> = Vec::new();
    for (a, b) in g.edges() {
        if g.label_of(a).unwrap_or(0) > 0 && g.label_of(b).unwrap_or(0) > 0 {
            intersections.push(IntersectionRecord::new([a.as_str(), b.as_str()], d));
        }
    }
    for v in 0..adj.len() {
        if adj.labels[v] == 0 {
            let members: Vec<&str> = adj.neighbors[v]
                .iter()
                .map(|&w| adj.ids[w].as_str())
                .collect();
            intersections.push(IntersectionRecord::tangent(members));
        }
    }

    let model = CombinatorialModel::new(atoms, intersections);
    debug_assert!(validate_model(&model).is_clean());
    Ok(model)
}

fn quote(id: &str) -> String {
    let mut out = String::with_capacity(id.len() + 2);
    out.push('"');
    for c in id.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Renders the graph in DOT form. Output is byte-identical for equal graphs:
/// vertices and edges appear in sorted order.
pub fn export_dot(g: &LabelledGraph) -> String {
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        out.push_str(&format!("  {} [label={}];\n", quote(&v.id), v.label));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("  {} -- {};\n", quote(a), quote(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ManifoldAtom;

    fn chain_of_three() -> CombinatorialModel {
        // a - b - c, both intersections of dimension 1.
        CombinatorialModel::new(
            alloc::vec![
                ManifoldAtom::new("a", 2),
                ManifoldAtom::new("b", 2),
                ManifoldAtom::new("c", 2),
            ],
            alloc::vec![
                IntersectionRecord::new(["a", "b"], 1),
                IntersectionRecord::new(["b", "c"], 1),
            ],
        )
    }

    #[test]
    fn edges_require_intersection_dimension_at_least_d() {
        let model = chain_of_three();
        let g1 = build_graph(&model, 1).unwrap();
        assert_eq!(g1.edge_count(), 2);
        assert!(g1.contains_edge("a", "b"));

        let g2 = build_graph(&model, 2).unwrap();
        assert_eq!(g2.edge_count(), 0);
        assert_eq!(g2.vertex_count(), 3);
    }

    #[test]
    fn tangent_records_persist_at_every_depth() {
        let model = CombinatorialModel::new(
            alloc::vec![ManifoldAtom::new("a", 3), ManifoldAtom::new("b", 3)],
            alloc::vec![IntersectionRecord::tangent(["a", "b"])],
        );
        for d in 1..=3 {
            let g = build_graph(&model, d).unwrap();
            assert_eq!(g.vertex_count(), 3);
            assert_eq!(g.label_of("0:a&b"), Some(0));
            assert!(g.contains_edge("0:a&b", "a"));
            assert!(g.contains_edge("0:a&b", "b"));
            assert!(!g.contains_edge("a", "b"));
        }
    }

    #[test]
    fn multiway_records_contribute_all_pairs() {
        let model = CombinatorialModel::new(
            alloc::vec![
                ManifoldAtom::new("a", 3),
                ManifoldAtom::new("b", 3),
                ManifoldAtom::new("c", 3),
            ],
            alloc::vec![IntersectionRecord::new(["a", "b", "c"], 2)],
        );
        let g = build_graph(&model, 2).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.contains_edge("a", "b"));
        assert!(g.contains_edge("a", "c"));
        assert!(g.contains_edge("b", "c"));
    }

    #[test]
    fn drop_set_is_empty_for_tangent_only_models() {
        let model = CombinatorialModel::new(
            alloc::vec![ManifoldAtom::new("a", 2), ManifoldAtom::new("b", 2)],
            alloc::vec![IntersectionRecord::tangent(["a", "b"])],
        );
        assert!(edge_drop_set(&model, 1).unwrap().is_empty());
    }

    #[test]
    fn derive_next_matches_direct_build() {
        let model = chain_of_three();
        let g1 = build_graph(&model, 1).unwrap();
        let drop = edge_drop_set(&model, 1).unwrap();
        let derived = derive_next(&g1, &drop).unwrap();
        assert_eq!(derived, build_graph(&model, 2).unwrap());
    }

    #[test]
    fn derive_next_rejects_unknown_edges() {
        let model = chain_of_three();
        let g1 = build_graph(&model, 1).unwrap();
        let mut drop = BTreeSet::new();
        drop.insert(edge("a", "c"));
        assert!(matches!(
            derive_next(&g1, &drop),
            Err(GraphError::UnknownEdge(_, _))
        ));
    }

    #[test]
    fn max_connected_depth_of_a_surface_chain_is_one() {
        assert_eq!(max_connected_d(&chain_of_three()).unwrap(), 1);
    }

    #[test]
    fn max_connected_depth_is_capped_by_the_smallest_dimension() {
        let single = CombinatorialModel::new(alloc::vec![ManifoldAtom::new("a", 5)], alloc::vec![]);
        assert_eq!(max_connected_d(&single).unwrap(), 5);

        let disjoint = CombinatorialModel::new(
            alloc::vec![ManifoldAtom::new("a", 2), ManifoldAtom::new("b", 2)],
            alloc::vec![],
        );
        assert_eq!(max_connected_d(&disjoint).unwrap(), 0);
    }

    #[test]
    fn membership_requires_connectivity_and_tangent_rules() {
        let good = LabelledGraph::new(
            [("a", 2), ("b", 2), ("c", 2), ("t", 0)],
            [("a", "b"), ("t", "a"), ("t", "b"), ("t", "c")],
            1,
        )
        .unwrap();
        assert!(validate_labelled_graph(&good).is_clean());

        let disconnected =
            LabelledGraph::new([("a", 2), ("b", 2)], [] as [(&str, &str); 0], 1).unwrap();
        let report = validate_labelled_graph(&disconnected);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::Disconnected));

        let zero_zero = LabelledGraph::new(
            [("a", 2), ("b", 2), ("s", 0), ("t", 0)],
            [("s", "t"), ("s", "a"), ("s", "b"), ("t", "a"), ("t", "b")],
            1,
        )
        .unwrap();
        let report = validate_labelled_graph(&zero_zero);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::ZeroZeroAdjacency));

        let duplicated = LabelledGraph::new(
            [("a", 2), ("b", 2), ("s", 0), ("t", 0)],
            [("s", "a"), ("s", "b"), ("t", "a"), ("t", "b")],
            1,
        )
        .unwrap();
        let report = validate_labelled_graph(&duplicated);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::DuplicateTangency));

        let overlapping = LabelledGraph::new(
            [("a", 2), ("b", 2), ("t", 0)],
            [("a", "b"), ("t", "a"), ("t", "b")],
            1,
        )
        .unwrap();
        let report = validate_labelled_graph(&overlapping);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::TangencyOverlap));

        let dangling = LabelledGraph::new([("a", 2), ("t", 0)], [("t", "a")], 1).unwrap();
        let report = validate_labelled_graph(&dangling);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::TangentDegree));
    }

    #[test]
    fn one_labelled_vertices_should_induce_cliques() {
        // Path of three label-1 vertices: the induced component is not a clique.
        let path = LabelledGraph::new([("a", 1), ("b", 1), ("c", 1)], [("a", "b"), ("b", "c")], 1)
            .unwrap();
        let report = validate_labelled_graph(&path);
        assert!(report.is_clean());
        assert!(report
            .advisories
            .iter()
            .any(|v| v.code == ViolationCode::OneLabelledCliques));

        // A triangle of label-1 vertices is fine.
        let triangle = LabelledGraph::new(
            [("a", 1), ("b", 1), ("c", 1)],
            [("a", "b"), ("b", "c"), ("a", "c")],
            1,
        )
        .unwrap();
        assert!(validate_labelled_graph(&triangle).advisories.is_empty());
    }

    #[test]
    fn realize_produces_the_expected_records() {
        let g = LabelledGraph::new(
            [("a", 2), ("b", 3), ("c", 2), ("t", 0)],
            [("a", "b"), ("t", "b"), ("t", "c")],
            0,
        )
        .unwrap();
        let model = realize_model(&g, 1).unwrap();
        assert_eq!(model.atoms.len(), 3);
        assert_eq!(model.atom("a").unwrap().dim, 2);
        assert_eq!(model.intersections.len(), 2);
        let pair = model
            .intersections
            .iter()
            .find(|r| !r.tangent_point)
            .unwrap();
        assert_eq!(pair.dim, 1);
        assert!(pair.atoms.contains("a") && pair.atoms.contains("b"));
        let tangent = model
            .intersections
            .iter()
            .find(|r| r.tangent_point)
            .unwrap();
        assert!(tangent.atoms.contains("b") && tangent.atoms.contains("c"));
    }

    #[test]
    fn realize_rejects_labels_below_the_depth() {
        let g = LabelledGraph::new([("a", 1), ("b", 3)], [("a", "b")], 0).unwrap();
        assert!(matches!(
            realize_model(&g, 2),
            Err(GraphError::LabelBelowDepth { .. })
        ));
        assert!(realize_model(&g, 1).is_ok());
    }

    #[test]
    fn realize_rejects_non_members() {
        let disconnected =
            LabelledGraph::new([("a", 2), ("b", 2)], [] as [(&str, &str); 0], 0).unwrap();
        assert!(matches!(
            realize_model(&disconnected, 1),
            Err(GraphError::NotMember(_))
        ));
    }

    #[test]
    fn dot_export_is_deterministic() {
        let model = chain_of_three();
        let g = build_graph(&model, 1).unwrap();
        let dot = export_dot(&g);
        assert_eq!(
            dot,
            "graph {\n  \"a\" [label=2];\n  \"b\" [label=2];\n  \"c\" [label=2];\n  \"a\" -- \"b\";\n  \"b\" -- \"c\";\n}\n"
        );
        assert_eq!(dot, export_dot(&build_graph(&model, 1).unwrap()));
    }

    #[test]
    fn constructor_validates_structure() {
        assert!(matches!(
            LabelledGraph::new([("a", 1), ("a", 2)], [] as [(&str, &str); 0], 0),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(
            LabelledGraph::new([("a", 1)], [("a", "a")], 0),
            Err(GraphError::SelfLoop(_))
        ));
        assert!(matches!(
            LabelledGraph::new([("a", 1)], [("a", "b")], 0),
            Err(GraphError::UnknownEndpoint(_, _))
        ));
    }
}
