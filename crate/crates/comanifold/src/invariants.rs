//! Topological invariants of a model: Euler characteristic, clique
//! decomposition of the skeleton, and fundamental-group ranks.
//!
//! The Euler characteristic is inclusion-exclusion over the recorded
//! intersection table: atom subsets without a record intersect emptily and
//! contribute nothing. The fundamental `d`-group rank splits into the sum of
//! per-atom ranks plus the cycle rank `|E| - |V| + c` of the skeleton `G^d`,
//! with tangent vertices participating.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{build_graph, Adjacency, GraphError, LabelledGraph};
use crate::model::{record_subject, CombinatorialModel, ModelError};

/// Errors from invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("depth d must be at least 1")]
    DepthZero,
    #[error("depth {d} exceeds the smallest atom dimension {min_dim}")]
    DepthExceedsMinDim { d: u32, min_dim: u32 },
    #[error("atom `{0}` has no recorded Euler characteristic")]
    MissingAtomEuler(String),
    #[error("intersection `{0}` has no recorded Euler characteristic")]
    MissingIntersectionEuler(String),
    #[error("atom `{id}` has no recorded rank at depth {d}")]
    MissingRank { id: String, d: u32 },
    #[error(
        "intersection `{0}` involves more than two atoms; the cross-check needs pairwise data"
    )]
    MultiwayIntersection(String),
    #[error("skeleton graph contains the triangle {0}")]
    NotTriangleFree(String),
    #[error("skeleton graph G^{0} is not connected")]
    NotDConnected(u32),
}

/// One round of the greedy clique decomposition: all chosen cliques have
/// `size` vertices and pairwise share at most one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueBatch {
    pub size: usize,
    pub cliques: Vec<Vec<String>>,
}

/// The full decomposition; every graph edge lies in exactly one clique of
/// exactly one batch.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliqueSequence {
    pub batches: Vec<CliqueBatch>,
}

impl CliqueSequence {
    /// All edges covered by the decomposition, for cross-checking.
    pub fn covered_edges(&self) -> Vec<(String, String)> {
        let mut edges = Vec::new();
        for batch in &self.batches {
            for clique in &batch.cliques {
                for (i, a) in clique.iter().enumerate() {
                    for b in &clique[i + 1..] {
                        edges.push(crate::graph::edge(a, b));
                    }
                }
            }
        }
        edges
    }
}

/// Maximal cliques of a residual graph, as sorted index lists.
/// Bron-Kerbosch with pivoting; fine at the graph sizes this crate handles.
fn maximal_cliques(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    fn expand(
        adj: &[BTreeSet<usize>],
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            if r.len() >= 2 {
                out.push(r.clone());
            }
            return;
        }
        // Pivot on the candidate with the most neighbours in P.
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.intersection(&adj[u]).count())
            .unwrap();
        let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
        for v in candidates {
            r.push(v);
            let p_next: BTreeSet<usize> = p.intersection(&adj[v]).copied().collect();
            let x_next: BTreeSet<usize> = x.intersection(&adj[v]).copied().collect();
            expand(adj, r, p_next, x_next, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }

    let mut out = Vec::new();
    let p: BTreeSet<usize> = (0..adj.len()).collect();
    expand(adj, &mut Vec::new(), p, BTreeSet::new(), &mut out);
    for clique in &mut out {
        clique.sort_unstable();
    }
    out.sort();
    out
}

/// Greedy batched clique decomposition of a graph.
///
/// Each round finds the clique number `l` of the residual graph, walks all
/// maximum (`l`-vertex) cliques in lexicographic order of their sorted
/// vertex ids, keeps every clique that shares at most one vertex with each
/// clique already kept, removes all kept edges, and repeats until the
/// residual graph is edgeless. Kept cliques of one round never share an
/// edge, so the batches partition the edge set.
pub fn clique_sequence(g: &LabelledGraph) -> CliqueSequence {
    let view = Adjacency::of(g);
    let mut adj: Vec<BTreeSet<usize>> = view
        .neighbors
        .iter()
        .map(|list| list.iter().copied().collect())
        .collect();
    let mut batches = Vec::new();

    loop {
        let cliques = maximal_cliques(&adj);
        let Some(size) = cliques.iter().map(Vec::len).max() else {
            break;
        };
        // Every l-clique is contained in some maximal clique; enumerate the
        // l-subsets of the maximum-size ones would be wasteful, but maximum
        // cliques themselves are exactly the size-l maximal cliques.
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        for clique in cliques.into_iter().filter(|c| c.len() == size) {
            let compatible = chosen.iter().all(|kept| {
                kept.iter()
                    .filter(|v| clique.binary_search(v).is_ok())
                    .count()
                    <= 1
            });
            if compatible {
                chosen.push(clique);
            }
        }
        for clique in &chosen {
            for (i, &a) in clique.iter().enumerate() {
                for &b in &clique[i + 1..] {
                    adj[a].remove(&b);
                    adj[b].remove(&a);
                }
            }
        }
        batches.push(CliqueBatch {
            size,
            cliques: chosen
                .into_iter()
                .map(|c| c.into_iter().map(|v| view.ids[v].clone()).collect())
                .collect(),
        });
    }

    CliqueSequence { batches }
}

/// Euler characteristic of the union, by inclusion-exclusion over the
/// recorded intersection table.
///
/// `chi = sum chi(atom) - sum chi(pairwise) + sum chi(triple) - ...`, where
/// only recorded subsets contribute. Every atom and every non-tangent record
/// must carry an Euler characteristic; tangent points default to 1.
pub fn euler_characteristic(model: &CombinatorialModel) -> Result<i64, InvariantError> {
    model.ensure_valid()?;
    let mut total: i64 = 0;
    for atom in &model.atoms {
        total += atom
            .euler
            .ok_or_else(|| InvariantError::MissingAtomEuler(atom.id.clone()))?;
    }
    for (index, record) in model.intersections.iter().enumerate() {
        let chi = record.effective_euler().ok_or_else(|| {
            InvariantError::MissingIntersectionEuler(record_subject(index, record))
        })?;
        if record.atoms.len() % 2 == 0 {
            total -= chi;
        } else {
            total += chi;
        }
    }
    Ok(total)
}

/// Independent Euler computation for models whose skeleton has no triangle
/// among atom vertices: `sum chi(atom) - sum chi(pair intersection)`.
///
/// Requires purely pairwise intersection data; agreement with
/// [`euler_characteristic`] on this domain is a cross-check of the
/// inclusion-exclusion bookkeeping.
pub fn euler_k3free_crosscheck(model: &CombinatorialModel) -> Result<i64, InvariantError> {
    model.ensure_valid()?;
    for (index, record) in model.intersections.iter().enumerate() {
        if record.atoms.len() > 2 {
            return Err(InvariantError::MultiwayIntersection(record_subject(
                index, record,
            )));
        }
    }

    // Triangle check on G^1 restricted to atom vertices.
    let mut pairs: BTreeSet<(&str, &str)> = BTreeSet::new();
    let mut neighbors: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for record in &model.intersections {
        if record.tangent_point || record.dim < 1 {
            continue;
        }
        let members: Vec<&str> = record.atoms.iter().map(String::as_str).collect();
        let (a, b) = (members[0], members[1]);
        pairs.insert((a, b));
        neighbors.entry(a).or_default().insert(b);
        neighbors.entry(b).or_default().insert(a);
    }
    for (a, b) in &pairs {
        if let (Some(na), Some(nb)) = (neighbors.get(a), neighbors.get(b)) {
            if let Some(c) = na.intersection(nb).next() {
                return Err(InvariantError::NotTriangleFree(alloc::format!(
                    "{a} -- {b} -- {c}"
                )));
            }
        }
    }

    let mut total: i64 = 0;
    for atom in &model.atoms {
        total += atom
            .euler
            .ok_or_else(|| InvariantError::MissingAtomEuler(atom.id.clone()))?;
    }
    for (index, record) in model.intersections.iter().enumerate() {
        total -= record.effective_euler().ok_or_else(|| {
            InvariantError::MissingIntersectionEuler(record_subject(index, record))
        })?;
    }
    Ok(total)
}

/// Rank of the fundamental `d`-group, split into its two contributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    /// `sum of atom_part values + graph_part`.
    pub total: u64,
    /// Per-atom rank of the fundamental `d`-group.
    pub atom_part: BTreeMap<String, u64>,
    /// Cycle rank `|E| - |V| + c` of the skeleton `G^d`.
    pub graph_part: u64,
}

/// Computes the fundamental `d`-group rank of a model.
///
/// Every atom must supply its rank at depth `d` (simply connected atoms
/// report 0 implicitly); the skeleton contributes its cycle rank, with
/// tangent vertices counted.
pub fn fundamental_group_rank(
    model: &CombinatorialModel,
    d: u32,
) -> Result<RankResult, InvariantError> {
    if d < 1 {
        return Err(InvariantError::DepthZero);
    }
    model.ensure_valid()?;
    let min_dim = model.min_dim().expect("valid models are nonempty");
    if d > min_dim {
        return Err(InvariantError::DepthExceedsMinDim { d, min_dim });
    }

    let mut atom_part = BTreeMap::new();
    for atom in &model.atoms {
        let rank = atom.rank(d).ok_or_else(|| InvariantError::MissingRank {
            id: atom.id.clone(),
            d,
        })?;
        atom_part.insert(atom.id.clone(), rank);
    }

    let g = build_graph(model, d)?;
    let adj = Adjacency::of(&g);
    let cycle_rank = (g.edge_count() + adj.component_count()) as u64 - g.vertex_count() as u64;

    Ok(RankResult {
        total: atom_part.values().sum::<u64>() + cycle_rank,
        atom_part,
        graph_part: cycle_rank,
    })
}

/// Whether the model is simply `d`-connected: connected skeleton and total
/// fundamental `d`-group rank 0.
pub fn is_simply_d_connected(model: &CombinatorialModel, d: u32) -> Result<bool, InvariantError> {
    if d < 1 {
        return Err(InvariantError::DepthZero);
    }
    model.ensure_valid()?;
    let g = build_graph(model, d)?;
    if !Adjacency::of(&g).is_connected() {
        return Err(InvariantError::NotDConnected(d));
    }
    let rank = fundamental_group_rank(model, d)?;
    Ok(rank.total == 0)
}
