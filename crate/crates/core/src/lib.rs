//! Forbidden subgraphs of Kneser graphs.
//!
//! The vertices of the Kneser graph `K(n,k)` are the k-subsets of `[n]`, two
//! being adjacent when disjoint. This crate materializes the extremal families
//! for vertex Turán problems on `K(n,k)` (intersecting, union-intersecting,
//! complete multipartite and even-cycle-free families), evaluates the matching
//! closed-form bounds exactly, and cross-checks both against exhaustive search
//! on small instances.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod invariants;
pub mod kset;
pub mod oracle;
pub mod pattern;
pub mod search;
pub mod subgraph;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{induced_kneser_graph, Graph, InducedGraph};
pub use invariants::{bipartite_classes, chromatic_profile, ell, ChromaticProfile, EllResult};
pub use kset::{are_disjoint, enumerate_all_ksets, make_kset, Family, GroundSet, KSet};
pub use pattern::{PatternGraph, PatternKind};
pub use subgraph::{
    brute_force_contains, contains_subgraph, has_matching, is_free,
    is_union_intersecting_violation, EmbeddingWitness,
};
