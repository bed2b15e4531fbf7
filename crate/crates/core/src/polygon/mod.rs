//! Exact minimum dominating and paired-dominating sets on k-polygon models by
//! enumerating per-side-pair boundary chords.
//!
//! Every chord of a polygon model spans one pair of sides `{i, j}`; the chords
//! spanning a fixed pair form the restriction `J_ij`. A solution `D` is
//! summarised by its outer boundary `O` (extreme chords of each `D_ij`) and,
//! for paired domination, an inner boundary `I`. Whatever `O ∪ I` leaves
//! undominated inside a pair can only be dominated from within that pair, so
//! each pair is finished independently.

mod boundary;
mod pair;
mod region;
mod solver;

pub use boundary::{
    enumerate_boundaries, inner_boundary_of, outer_boundary_of, BoundarySelection, PairBoundary,
};
pub use pair::{min_constrained_dom_on_pair, min_constrained_paired_dom_on_pair};
pub use region::{
    undominated_after_boundaries, undominated_after_outer, PairRegion, RegionReport, RegionShape,
};
pub use solver::{solve_min_ds_polygon, solve_min_pds_polygon, PolygonSolution, SolverOptions};

use thiserror::Error;

use crate::bitset::BitSet;
use crate::error::ModelError;
use crate::geom::{build_adjacency, ChordId, ChordModel, Position, SidePair, UndirectedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("matching is not a perfect matching of the chord set")]
    MatchingNotPerfect,
}

/// Precomputed per-model data shared by the boundary, region and solver code.
pub(crate) struct PolygonContext {
    pub k: usize,
    pub g: UndirectedGraph,
    /// All side pairs, indexed by [`SidePair::index`].
    pub pairs: Vec<SidePair>,
    /// `J_ij` per pair index, ascending ids.
    pub members: Vec<Vec<ChordId>>,
    pub pair_index: Vec<usize>,
    /// Position of each chord on the first and second side of its pair, the
    /// sides taken in [`SidePair::oriented`] order.
    pub ends: Vec<(Position, Position)>,
    pub closed: Vec<BitSet>,
}

impl PolygonContext {
    pub fn new(model: &ChordModel) -> Result<Self, ModelError> {
        let k = model.k();
        if k == 0 {
            return Err(ModelError::NoSides);
        }
        let pairs: Vec<SidePair> = SidePair::all(k).collect();
        let mut members = vec![Vec::new(); pairs.len()];
        let mut pair_index = Vec::with_capacity(model.m());
        let mut ends = Vec::with_capacity(model.m());
        for c in model.chords() {
            let pair = model.pair_of(c.id).expect("polygon model");
            let (a, b) = pair.oriented(k);
            members[pair.index(k)].push(c.id);
            pair_index.push(pair.index(k));
            ends.push((
                model.endpoint_on(c.id, a).expect("endpoint on first side"),
                model.endpoint_on(c.id, b).expect("endpoint on second side"),
            ));
        }
        let g = build_adjacency(model);
        let closed = (0..g.n()).map(|v| g.closed_neighborhood(v)).collect();
        Ok(PolygonContext {
            k,
            g,
            pairs,
            members,
            pair_index,
            ends,
            closed,
        })
    }

    pub fn is_adjacent(&self, p: usize) -> bool {
        self.pairs[p].is_adjacent(self.k)
    }

    pub fn u(&self, c: ChordId) -> Position {
        self.ends[c].0
    }

    pub fn v(&self, c: ChordId) -> Position {
        self.ends[c].1
    }

    /// `J − N[s]`.
    pub fn undominated(&self, s: impl IntoIterator<Item = ChordId>) -> BitSet {
        let mut covered = BitSet::new(self.g.n());
        for c in s {
            covered.union_with(&self.closed[c]);
        }
        let mut rest = BitSet::full(self.g.n());
        rest.difference_with(&covered);
        rest
    }
}

fn argmin_by(chords: &[ChordId], key: impl Fn(ChordId) -> Position) -> ChordId {
    *chords.iter().min_by_key(|&&c| key(c)).expect("non-empty")
}

fn argmax_by(chords: &[ChordId], key: impl Fn(ChordId) -> Position) -> ChordId {
    *chords.iter().max_by_key(|&&c| key(c)).expect("non-empty")
}
