//! Exact domination and paired-domination on chord intersection models.
//!
//! The crate is organised around a [`ChordModel`]: `m` chords whose `2m`
//! endpoints sit at distinct integer positions around a circle, optionally
//! partitioned into the `k` sides of a convex polygon. On top of that:
//!
//! * [`matching`] provides maximum matching (Edmonds' blossom algorithm),
//!   perfect-matching checks and minimum matchable augmentation.
//! * [`oracles`] holds brute-force ground truth: minimum dominating and
//!   paired-dominating sets, Hamiltonian path search, and set checkers.
//! * [`reduction`] builds the circle model obtained from a Hamiltonian path
//!   instance and converts witnesses in both directions.
//! * [`polygon`] implements the boundary-enumeration solvers for k-polygon
//!   models.

pub mod bitset;
pub mod error;
pub mod geom;
pub mod matching;
pub mod oracles;
pub mod polygon;
pub mod reduction;

pub use bitset::BitSet;
pub use error::{ModelError, ParseError};
pub use geom::{
    build_adjacency, chords_intersect, pair_restrictions, parse_model, random_polygon_model,
    serialize_model, Chord, ChordId, ChordModel, PairRestriction, Position, SidePair,
    UndirectedGraph,
};
pub use matching::{has_perfect_matching, max_matching, min_augmentation, Matching};
pub use oracles::{
    hamiltonian_path, is_dominating_set, is_hamiltonian_path, is_paired_dominating_set,
    min_dominating_set_bruteforce, min_paired_dominating_set_bruteforce, Digraph, OracleError,
};
pub use polygon::{solve_min_ds_polygon, solve_min_pds_polygon, PolygonSolution, SolverOptions};
pub use reduction::{
    build_reduction, ham_path_from_pds, pds_from_ham_path, validate_reduction, ChordName,
    ReductionArtifact, ReductionError,
};
