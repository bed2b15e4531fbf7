//! Chord intersection models on a circle or a convex k-polygon.
//!
//! Endpoints are abstract integer positions `1..=2m` in counterclockwise
//! order; only the interleaving relation between chords matters. A polygon
//! model additionally splits the positions into `k` contiguous side ranges,
//! side 0 starting at position 1.

mod graph;
pub(crate) mod io;
mod random;

pub use graph::UndirectedGraph;
pub use io::{parse_model, serialize_model};
pub use random::random_polygon_model;

use std::fmt;

use crate::error::ModelError;

/// 1-based endpoint position on the circle.
pub type Position = u32;
/// Dense chord index, assigned in input order.
pub type ChordId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub id: ChordId,
    /// Smaller endpoint.
    pub p: Position,
    /// Larger endpoint.
    pub q: Position,
}

impl Chord {
    pub fn new(id: ChordId, a: Position, b: Position) -> Self {
        Chord {
            id,
            p: a.min(b),
            q: a.max(b),
        }
    }

    /// True when `pos` lies strictly inside the arc `(p, q)`.
    #[inline]
    pub fn strictly_contains(&self, pos: Position) -> bool {
        self.p < pos && pos < self.q
    }
}

/// Interleaving test. Two chords cross iff exactly one endpoint of `c2`
/// lies strictly inside the arc spanned by `c1`.
pub fn chords_intersect(c1: &Chord, c2: &Chord) -> Result<bool, ModelError> {
    for a in [c1.p, c1.q] {
        if a == c2.p || a == c2.q {
            return Err(ModelError::SharedEndpoint { pos: a });
        }
    }
    Ok(c1.strictly_contains(c2.p) != c1.strictly_contains(c2.q))
}

/// Unordered pair of polygon sides, stored 0-based with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SidePair {
    pub i: usize,
    pub j: usize,
}

impl SidePair {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a side pair needs two distinct sides");
        SidePair {
            i: a.min(b),
            j: a.max(b),
        }
    }

    /// Whether the two sides are consecutive around a `k`-gon.
    pub fn is_adjacent(&self, k: usize) -> bool {
        self.j == self.i + 1 || (self.i == 0 && self.j == k - 1)
    }

    /// Sides in counterclockwise orientation: for adjacent pairs the second
    /// side immediately follows the first (so `(k-1, 0)` for the wrap-around
    /// pair); otherwise `(i, j)`.
    pub fn oriented(&self, k: usize) -> (usize, usize) {
        if self.i == 0 && self.j == k - 1 && k > 2 {
            (k - 1, 0)
        } else {
            (self.i, self.j)
        }
    }

    /// Index of this pair in the lexicographic list of all pairs of a `k`-gon.
    pub fn index(&self, k: usize) -> usize {
        self.i * (2 * k - self.i - 1) / 2 + (self.j - self.i - 1)
    }

    pub fn all(k: usize) -> impl Iterator<Item = SidePair> {
        (0..k).flat_map(move |i| (i + 1..k).map(move |j| SidePair { i, j }))
    }

    /// True when every chord of `other` must cross every chord of `self`:
    /// the two sides of `other` lie strictly on opposite arcs cut by `self`.
    pub fn separates(&self, other: &SidePair) -> bool {
        let inside = |s: usize| self.i < s && s < self.j;
        let outside = |s: usize| s < self.i || s > self.j;
        (inside(other.i) && outside(other.j)) || (outside(other.i) && inside(other.j))
    }
}

impl fmt::Display for SidePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i + 1, self.j + 1)
    }
}

/// Chords with one endpoint on each side of a side pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRestriction {
    pub pair: SidePair,
    /// Sorted ascending.
    pub chords: Vec<ChordId>,
}

impl PairRestriction {
    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SideLayout {
    lengths: Vec<u32>,
    /// First position of each side (1-based); equals `end + 1` for empty sides.
    starts: Vec<Position>,
    /// Side index for each position, indexed by `pos - 1`.
    side_of: Vec<usize>,
}

/// Immutable chord model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordModel {
    chords: Vec<Chord>,
    /// Chord owning each position, indexed by `pos - 1`.
    owner: Vec<ChordId>,
    sides: Option<SideLayout>,
}

impl ChordModel {
    /// Circle model from endpoint pairs; chord ids follow input order.
    pub fn circle(endpoints: &[(Position, Position)]) -> Result<Self, ModelError> {
        Self::build(endpoints, None)
    }

    /// Polygon model; `side_lengths[s]` is the number of endpoints on side `s`.
    pub fn polygon(
        side_lengths: &[u32],
        endpoints: &[(Position, Position)],
    ) -> Result<Self, ModelError> {
        Self::build(endpoints, Some(side_lengths))
    }

    fn build(
        endpoints: &[(Position, Position)],
        side_lengths: Option<&[u32]>,
    ) -> Result<Self, ModelError> {
        let m = endpoints.len();
        let max = (2 * m) as Position;
        let mut owner = vec![usize::MAX; 2 * m];
        let mut chords = Vec::with_capacity(m);
        for (id, &(a, b)) in endpoints.iter().enumerate() {
            if a == b {
                return Err(ModelError::DegenerateChord { chord: id, pos: a });
            }
            for pos in [a, b] {
                if pos == 0 || pos > max {
                    return Err(ModelError::PositionOutOfRange { pos, max });
                }
                let slot = &mut owner[(pos - 1) as usize];
                if *slot != usize::MAX {
                    return Err(ModelError::DuplicateEndpoint { pos });
                }
                *slot = id;
            }
            chords.push(Chord::new(id, a, b));
        }
        let sides = match side_lengths {
            None => None,
            Some(lengths) => {
                if lengths.len() < 3 {
                    return Err(ModelError::TooFewSides(lengths.len()));
                }
                let total: u32 = lengths.iter().sum();
                if total != max {
                    return Err(ModelError::SideLengthMismatch {
                        got: total,
                        expected: max,
                    });
                }
                let mut starts = Vec::with_capacity(lengths.len());
                let mut side_of = Vec::with_capacity(2 * m);
                let mut next = 1;
                for (s, &len) in lengths.iter().enumerate() {
                    starts.push(next);
                    next += len;
                    side_of.extend(std::iter::repeat_n(s, len as usize));
                }
                for c in &chords {
                    let (sp, sq) = (side_of[(c.p - 1) as usize], side_of[(c.q - 1) as usize]);
                    if sp == sq {
                        return Err(ModelError::SameSide {
                            chord: c.id,
                            side: sp,
                        });
                    }
                }
                Some(SideLayout {
                    lengths: lengths.to_vec(),
                    starts,
                    side_of,
                })
            }
        };
        Ok(ChordModel {
            chords,
            owner,
            sides,
        })
    }

    pub fn m(&self) -> usize {
        self.chords.len()
    }

    pub fn num_positions(&self) -> usize {
        2 * self.chords.len()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn chord(&self, id: ChordId) -> &Chord {
        &self.chords[id]
    }

    pub fn chord_at(&self, pos: Position) -> ChordId {
        self.owner[(pos - 1) as usize]
    }

    pub fn endpoint_pairs(&self) -> Vec<(Position, Position)> {
        self.chords.iter().map(|c| (c.p, c.q)).collect()
    }

    pub fn has_sides(&self) -> bool {
        self.sides.is_some()
    }

    /// Number of polygon sides, 0 for circle models.
    pub fn k(&self) -> usize {
        self.sides.as_ref().map_or(0, |s| s.lengths.len())
    }

    pub fn side_lengths(&self) -> Option<&[u32]> {
        self.sides.as_ref().map(|s| s.lengths.as_slice())
    }

    pub fn side_of(&self, pos: Position) -> Option<usize> {
        self.sides.as_ref().map(|s| s.side_of[(pos - 1) as usize])
    }

    /// Positions of side `s` in counterclockwise order.
    pub fn side_positions(&self, s: usize) -> std::ops::Range<Position> {
        let layout = self.sides.as_ref().expect("polygon model");
        let start = layout.starts[s];
        start..start + layout.lengths[s]
    }

    /// The endpoint of `chord` lying on side `s`, if any.
    pub fn endpoint_on(&self, chord: ChordId, s: usize) -> Option<Position> {
        let c = &self.chords[chord];
        [c.p, c.q]
            .into_iter()
            .find(|&pos| self.side_of(pos) == Some(s))
    }

    /// The side pair spanned by `chord`.
    pub fn pair_of(&self, chord: ChordId) -> Option<SidePair> {
        let c = &self.chords[chord];
        Some(SidePair::new(self.side_of(c.p)?, self.side_of(c.q)?))
    }

    /// Same chords with the polygon sides dropped.
    pub fn to_circle(&self) -> ChordModel {
        ChordModel {
            chords: self.chords.clone(),
            owner: self.owner.clone(),
            sides: None,
        }
    }
}

/// Intersection graph: one vertex per chord, edges between crossing chords.
pub fn build_adjacency(model: &ChordModel) -> UndirectedGraph {
    // Sweep the positions once, keeping the set of open chords; a chord closing
    // at `q` crosses exactly the chords opened after its own start and still open.
    let m = model.m();
    let mut g = UndirectedGraph::new(m);
    let mut open: Vec<ChordId> = Vec::new();
    for pos in 1..=model.num_positions() as Position {
        let id = model.chord_at(pos);
        let c = model.chord(id);
        if c.p == pos {
            open.push(id);
        } else {
            let at = open
                .iter()
                .position(|&x| x == id)
                .expect("chord was opened");
            for &other in &open[at + 1..] {
                g.add_edge(id, other);
            }
            open.remove(at);
        }
    }
    g
}

/// Groups the chords of a polygon model by the pair of sides they span.
/// Pairs with no chords are omitted; output is ordered by pair.
pub fn pair_restrictions(model: &ChordModel) -> Result<Vec<PairRestriction>, ModelError> {
    let k = model.k();
    if k == 0 {
        return Err(ModelError::NoSides);
    }
    let mut buckets: Vec<Vec<ChordId>> = vec![Vec::new(); k * (k - 1) / 2];
    for c in model.chords() {
        let pair = model.pair_of(c.id).expect("polygon model");
        buckets[pair.index(k)].push(c.id);
    }
    Ok(SidePair::all(k)
        .zip(buckets)
        .filter(|(_, chords)| !chords.is_empty())
        .map(|(pair, chords)| PairRestriction { pair, chords })
        .collect())
}
