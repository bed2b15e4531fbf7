use super::{BoundarySelection, PolygonContext};
use crate::bitset::BitSet;
use crate::error::ModelError;
use crate::geom::{ChordId, ChordModel, Position, SidePair};

/// Interval description of the undominated chords of one side pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionShape {
    Empty,
    /// Adjacent pair oriented `(a, b)`: the chords with both endpoints in the
    /// counterclockwise interval `[start, end]`, `start` on `S_a` and `end`
    /// on `S_b`.
    Corner {
        start: Position,
        end: Position,
    },
    /// Opposite pair: the chords with their `S_i` endpoint in `side_i` and
    /// their `S_j` endpoint in `side_j` (inclusive ranges).
    Box {
        side_i: (Position, Position),
        side_j: (Position, Position),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRegion {
    pub pair: SidePair,
    pub shape: RegionShape,
    /// Undominated chords of the pair, ascending.
    pub chords: Vec<ChordId>,
}

/// Undominated chords per side pair, indexed by [`SidePair::index`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionReport {
    pub k: usize,
    pub regions: Vec<PairRegion>,
}

impl RegionReport {
    pub fn region(&self, pair: SidePair) -> &PairRegion {
        &self.regions[pair.index(self.k)]
    }

    /// All undominated chords, ascending.
    pub fn undominated(&self) -> Vec<ChordId> {
        let mut v: Vec<ChordId> = self
            .regions
            .iter()
            .flat_map(|r| r.chords.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    /// The chord set described by the interval data of every pair, ascending.
    pub fn characterized(&self, model: &ChordModel) -> Vec<ChordId> {
        let mut v: Vec<ChordId> = self
            .regions
            .iter()
            .flat_map(|r| r.interval_chords(model))
            .collect();
        v.sort_unstable();
        v
    }
}

impl PairRegion {
    /// Chords of this pair selected by [`PairRegion::shape`] alone.
    pub fn interval_chords(&self, model: &ChordModel) -> Vec<ChordId> {
        let k = model.k();
        let (a, b) = self.pair.oriented(k);
        let within = |x: Position, (lo, hi): (Position, Position)| lo <= x && x <= hi;
        model
            .chords()
            .iter()
            .filter(|c| model.pair_of(c.id) == Some(self.pair))
            .filter(|c| {
                let pa = model.endpoint_on(c.id, a).expect("pair side");
                let pb = model.endpoint_on(c.id, b).expect("pair side");
                match self.shape {
                    RegionShape::Empty => false,
                    RegionShape::Corner { start, end } => pa >= start && pb <= end,
                    RegionShape::Box { side_i, side_j } => within(pa, side_i) && within(pb, side_j),
                }
            })
            .map(|c| c.id)
            .collect()
    }
}

pub(crate) fn report_from(ctx: &PolygonContext, undominated: &BitSet) -> RegionReport {
    let regions = ctx
        .pairs
        .iter()
        .enumerate()
        .map(|(p, &pair)| {
            let chords: Vec<ChordId> = ctx.members[p]
                .iter()
                .copied()
                .filter(|&c| undominated.contains(c))
                .collect();
            let shape = if chords.is_empty() {
                RegionShape::Empty
            } else {
                let us = chords.iter().map(|&c| ctx.u(c));
                let vs = chords.iter().map(|&c| ctx.v(c));
                if ctx.is_adjacent(p) {
                    RegionShape::Corner {
                        start: us.min().expect("non-empty"),
                        end: vs.max().expect("non-empty"),
                    }
                } else {
                    RegionShape::Box {
                        side_i: (
                            us.clone().min().expect("non-empty"),
                            us.max().expect("non-empty"),
                        ),
                        side_j: (
                            vs.clone().min().expect("non-empty"),
                            vs.max().expect("non-empty"),
                        ),
                    }
                }
            };
            PairRegion {
                pair,
                shape,
                chords,
            }
        })
        .collect();
    RegionReport { k: ctx.k, regions }
}

/// `J' = J − N[O]`, grouped by side pair.
pub fn undominated_after_outer(
    model: &ChordModel,
    o: &BoundarySelection,
) -> Result<RegionReport, ModelError> {
    let ctx = PolygonContext::new(model)?;
    Ok(report_from(&ctx, &ctx.undominated(o.outer_chords())))
}

/// `J'' = J − N[O ∪ I]`, grouped by side pair.
pub fn undominated_after_boundaries(
    model: &ChordModel,
    sel: &BoundarySelection,
) -> Result<RegionReport, ModelError> {
    let ctx = PolygonContext::new(model)?;
    Ok(report_from(&ctx, &ctx.undominated(sel.chords())))
}
