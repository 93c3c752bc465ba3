//! Structural invariants of families and patterns.

mod chromatic;
mod ell;

pub use chromatic::{
    bipartite_classes, chromatic_profile, is_isomorphic, BipartiteClasses, ChromaticProfile,
    MAX_PROFILE_ORDER,
};
pub use ell::{ell, ell_with, min_clique_hitting_set, EllConfig, EllResult};
