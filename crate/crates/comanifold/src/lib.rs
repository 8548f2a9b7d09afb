//! Combinatorial manifolds as labelled graphs.
//!
//! A combinatorial manifold is a finite union of manifolds ("atoms") glued
//! along recorded intersections. Each atom is treated as a black box carrying
//! user-supplied metadata: its dimension, optionally its Euler characteristic,
//! homotopy-group ranks, and (for surfaces) a genus. The union itself is
//! represented by its intersection table, from which this crate derives:
//!
//! * skeleton graphs `G^d` whose vertices are atoms (labelled by dimension)
//!   and tangent points (labelled 0), with edges for intersections of
//!   dimension at least `d` ([`graph`]),
//! * Euler characteristics by inclusion-exclusion over the recorded table,
//!   clique decompositions, and fundamental-group ranks ([`invariants`]),
//! * equivalence (label-preserving isomorphism), automorphism orbits of
//!   label classes, and truncated counting series ([`classify`], [`series`]),
//! * a chart-level differential-geometry kernel for the flattened tangent
//!   space at an intersection point: exterior derivatives with exact rational
//!   coefficients, connections and Christoffel coefficients, and Minkowski
//!   norm checks ([`diffgeo`]).
//!
//! The crate is `no_std` compatible (it requires `alloc`). All operations are
//! deterministic: iteration orders are fixed and the only randomness is the
//! seeded generator in [`sample`].

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
// Index loops here usually walk several arrays and both triangle halves at
// once; the iterator rewrites the lint suggests read worse.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod classify;
pub mod diffgeo;
pub mod graph;
pub mod invariants;
pub mod model;
pub mod sample;
pub mod series;

pub use graph::LabelledGraph;
pub use model::{CombinatorialModel, IntersectionRecord, ManifoldAtom, ValidationReport};
