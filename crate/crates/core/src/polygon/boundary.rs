use super::{argmax_by, argmin_by, PolygonContext, PolygonError};
use crate::error::ModelError;
use crate::geom::{ChordId, ChordModel, SidePair};
use crate::matching::Matching;

/// Boundary chords of one side pair.
///
/// Pairs are oriented as in [`SidePair::oriented`], so for an adjacent pair
/// `(a, b)` side `S_b` immediately follows `S_a`. In an outer boundary
/// `Adjacent { first, second }` holds the leftmost chord on `S_a` and the
/// rightmost chord on `S_b`; in an inner boundary it holds the rightmost
/// chord on `S_a` and the leftmost chord on `S_b`. `Opposite` lists the
/// leftmost and rightmost chords on `S_i` and on `S_j`. Roles may coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairBoundary {
    Empty,
    Adjacent {
        first: ChordId,
        second: ChordId,
    },
    Opposite {
        left_i: ChordId,
        right_i: ChordId,
        left_j: ChordId,
        right_j: ChordId,
    },
}

impl PairBoundary {
    pub fn is_empty(&self) -> bool {
        matches!(self, PairBoundary::Empty)
    }

    /// Distinct chords, ascending.
    pub fn chords(&self) -> Vec<ChordId> {
        let mut v = match *self {
            PairBoundary::Empty => vec![],
            PairBoundary::Adjacent { first, second } => vec![first, second],
            PairBoundary::Opposite {
                left_i,
                right_i,
                left_j,
                right_j,
            } => vec![left_i, right_i, left_j, right_j],
        };
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Outer and inner boundary for every side pair of a `k`-polygon model,
/// indexed by [`SidePair::index`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySelection {
    pub k: usize,
    pub outer: Vec<PairBoundary>,
    pub inner: Vec<PairBoundary>,
}

impl BoundarySelection {
    pub fn empty(k: usize) -> Self {
        let n = k * (k - 1) / 2;
        BoundarySelection {
            k,
            outer: vec![PairBoundary::Empty; n],
            inner: vec![PairBoundary::Empty; n],
        }
    }

    pub fn outer_of(&self, pair: SidePair) -> PairBoundary {
        self.outer[pair.index(self.k)]
    }

    pub fn inner_of(&self, pair: SidePair) -> PairBoundary {
        self.inner[pair.index(self.k)]
    }

    pub fn outer_chords(&self) -> Vec<ChordId> {
        collect(&self.outer)
    }

    pub fn inner_chords(&self) -> Vec<ChordId> {
        collect(&self.inner)
    }

    /// `O ∪ I`, ascending.
    pub fn chords(&self) -> Vec<ChordId> {
        let mut v = self.outer_chords();
        v.extend(self.inner_chords());
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Whether some pair with a non-empty inner boundary is separated by a
    /// pair with a non-empty outer boundary.
    pub fn violates_pruning(&self) -> bool {
        let pairs: Vec<SidePair> = SidePair::all(self.k).collect();
        pairs.iter().enumerate().any(|(p, pp)| {
            !self.inner[p].is_empty()
                && pairs
                    .iter()
                    .enumerate()
                    .any(|(q, qq)| pp.separates(qq) && !self.outer[q].is_empty())
        })
    }
}

pub(crate) fn collect(bs: &[PairBoundary]) -> Vec<ChordId> {
    let mut v: Vec<ChordId> = bs.iter().flat_map(|b| b.chords()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn extremes(ctx: &PolygonContext, p: usize, chords: &[ChordId], inner: bool) -> PairBoundary {
    if chords.is_empty() {
        return PairBoundary::Empty;
    }
    let (u, v) = (|c| ctx.u(c), |c| ctx.v(c));
    if ctx.is_adjacent(p) {
        if inner {
            PairBoundary::Adjacent {
                first: argmax_by(chords, u),
                second: argmin_by(chords, v),
            }
        } else {
            PairBoundary::Adjacent {
                first: argmin_by(chords, u),
                second: argmax_by(chords, v),
            }
        }
    } else {
        PairBoundary::Opposite {
            left_i: argmin_by(chords, u),
            right_i: argmax_by(chords, u),
            left_j: argmin_by(chords, v),
            right_j: argmax_by(chords, v),
        }
    }
}

fn restrict(ctx: &PolygonContext, p: usize, d: &[ChordId]) -> Vec<ChordId> {
    d.iter()
        .copied()
        .filter(|&c| ctx.pair_index[c] == p)
        .collect()
}

/// Outer boundary of `d`: per pair, the extreme chords of `D_ij`. The inner
/// boundary of the result is empty.
pub fn outer_boundary_of(
    model: &ChordModel,
    d: &[ChordId],
) -> Result<BoundarySelection, ModelError> {
    let ctx = PolygonContext::new(model)?;
    Ok(outer_in(&ctx, d))
}

pub(crate) fn outer_in(ctx: &PolygonContext, d: &[ChordId]) -> BoundarySelection {
    let mut sel = BoundarySelection::empty(ctx.k);
    for p in 0..ctx.pairs.len() {
        sel.outer[p] = extremes(ctx, p, &restrict(ctx, p, d), false);
    }
    sel
}

/// Inner boundary of `d` under `matching`, on top of the outer boundary `o`.
///
/// For each pair with chords left undominated by `O`, the chords of `d`
/// matched within the same pair are set aside, the outer chords of the pair
/// are added back, and the inner extremes of what remains in the pair are
/// taken. The returned selection carries `o`'s outer boundary.
pub fn inner_boundary_of(
    model: &ChordModel,
    d: &[ChordId],
    matching: &Matching,
    o: &BoundarySelection,
) -> Result<BoundarySelection, PolygonError> {
    let ctx = PolygonContext::new(model)?;
    if !matching.is_valid_in(&ctx.g) || !matching.is_perfect_on(d) {
        return Err(PolygonError::MatchingNotPerfect);
    }
    let j_prime = ctx.undominated(o.outer_chords());
    let mut sel = o.clone();
    for p in 0..ctx.pairs.len() {
        let pair_undominated = ctx.members[p].iter().any(|&c| j_prime.contains(c));
        sel.inner[p] = if pair_undominated {
            let mut rest: Vec<ChordId> = restrict(&ctx, p, d)
                .into_iter()
                .filter(|&c| matching.partner(c).is_none_or(|q| ctx.pair_index[q] != p))
                .collect();
            rest.extend(o.outer[p].chords());
            rest.sort_unstable();
            rest.dedup();
            extremes(&ctx, p, &rest, true)
        } else {
            PairBoundary::Empty
        };
    }
    Ok(sel)
}

/// Outer boundary shapes for pair `p`: `Empty` first, then every role
/// assignment whose designated extremes are extreme among its own chords.
pub(crate) fn outer_options(ctx: &PolygonContext, p: usize) -> Vec<PairBoundary> {
    let js = &ctx.members[p];
    let (u, v) = (|c: ChordId| ctx.u(c), |c: ChordId| ctx.v(c));
    let mut out = vec![PairBoundary::Empty];
    if ctx.is_adjacent(p) {
        for &first in js {
            for &second in js {
                if u(first) <= u(second) && v(first) <= v(second) {
                    out.push(PairBoundary::Adjacent { first, second });
                }
            }
        }
        return out;
    }
    for &left_i in js {
        for &right_i in js.iter().filter(|&&c| u(c) >= u(left_i)) {
            let in_range = |c: ChordId| u(left_i) <= u(c) && u(c) <= u(right_i);
            for &left_j in js.iter().filter(|&&c| in_range(c)) {
                for &right_j in js.iter().filter(|&&c| in_range(c)) {
                    let four = [left_i, right_i, left_j, right_j];
                    if four
                        .iter()
                        .all(|&c| v(left_j) <= v(c) && v(c) <= v(right_j))
                    {
                        out.push(PairBoundary::Opposite {
                            left_i,
                            right_i,
                            left_j,
                            right_j,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Inner boundary shapes for pair `p` given its outer boundary, assuming the
/// pair still has undominated chords. Opposite pairs admit only `O_ij`
/// itself: the inner extremes are taken over a subset of `D_ij` containing
/// `O_ij`, whose extremes are `O_ij`.
pub(crate) fn inner_options(
    ctx: &PolygonContext,
    p: usize,
    outer: PairBoundary,
) -> Vec<PairBoundary> {
    match outer {
        PairBoundary::Empty => vec![PairBoundary::Empty],
        PairBoundary::Opposite { .. } => vec![outer],
        PairBoundary::Adjacent {
            first: lo,
            second: ro,
        } => {
            let (u, v) = (|c: ChordId| ctx.u(c), |c: ChordId| ctx.v(c));
            let js = &ctx.members[p];
            let mut out = Vec::new();
            for &first in js {
                if u(first) < u(lo).max(u(ro)) || v(first) > v(ro) {
                    continue;
                }
                for &second in js {
                    if u(second) < u(lo) || u(second) > u(first) {
                        continue;
                    }
                    if v(second) > v(first).min(v(lo)).min(v(ro)) {
                        continue;
                    }
                    out.push(PairBoundary::Adjacent { first, second });
                }
            }
            out
        }
    }
}

/// Mixed-radix space of outer boundary candidates.
pub(crate) struct OuterSpace {
    pub options: Vec<Vec<PairBoundary>>,
    pub total: u64,
}

impl OuterSpace {
    pub fn new(ctx: &PolygonContext) -> Self {
        let options: Vec<Vec<PairBoundary>> = (0..ctx.pairs.len())
            .map(|p| outer_options(ctx, p))
            .collect();
        let total = options
            .iter()
            .try_fold(1u64, |acc, o| acc.checked_mul(o.len() as u64))
            .expect("boundary candidate count overflows u64");
        OuterSpace { options, total }
    }

    /// Candidate `idx`, with the first pair varying fastest.
    pub fn decode(&self, mut idx: u64) -> Vec<PairBoundary> {
        self.options
            .iter()
            .map(|opts| {
                let r = opts.len() as u64;
                let pick = opts[(idx % r) as usize];
                idx /= r;
                pick
            })
            .collect()
    }
}

/// Calls `f` with every inner-boundary completion of `outer` that satisfies
/// the pruning rule. Stops early when `f` returns `true`.
pub(crate) fn for_each_completion(
    ctx: &PolygonContext,
    outer: &[PairBoundary],
    mut f: impl FnMut(&BoundarySelection) -> bool,
) -> bool {
    let outer_chords = collect(outer);
    let j_prime = ctx.undominated(outer_chords.iter().copied());
    let choices: Vec<Vec<PairBoundary>> = (0..ctx.pairs.len())
        .map(|p| {
            if ctx.members[p].iter().any(|&c| j_prime.contains(c)) {
                inner_options(ctx, p, outer[p])
            } else {
                vec![PairBoundary::Empty]
            }
        })
        .collect();
    if choices.iter().any(|c| c.is_empty()) {
        return false;
    }
    let mut sel = BoundarySelection {
        k: ctx.k,
        outer: outer.to_vec(),
        inner: choices.iter().map(|c| c[0]).collect(),
    };
    let mut digits = vec![0usize; choices.len()];
    loop {
        if !sel.violates_pruning() && f(&sel) {
            return true;
        }
        let mut p = 0;
        loop {
            if p == digits.len() {
                return false;
            }
            digits[p] += 1;
            if digits[p] < choices[p].len() {
                sel.inner[p] = choices[p][digits[p]];
                break;
            }
            digits[p] = 0;
            sel.inner[p] = choices[p][0];
            p += 1;
        }
    }
}

/// Every `(O, I)` candidate in the deterministic order used by the solvers.
pub fn enumerate_boundaries(model: &ChordModel) -> Result<Vec<BoundarySelection>, ModelError> {
    let ctx = PolygonContext::new(model)?;
    let space = OuterSpace::new(&ctx);
    let mut out = Vec::new();
    for idx in 0..space.total {
        for_each_completion(&ctx, &space.decode(idx), |sel| {
            out.push(sel.clone());
            false
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_chords_single_candidate() {
        let model = ChordModel::polygon(&[0, 0, 0], &[]).unwrap();
        let all = enumerate_boundaries(&model).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].chords().is_empty());
    }

    #[test]
    fn one_adjacent_chord() {
        let model = ChordModel::polygon(&[1, 1, 0], &[(1, 2)]).unwrap();
        let all = enumerate_boundaries(&model).unwrap();
        // O = ∅ leaves the chord undominated but offers no inner chords;
        // O = {c} dominates everything.
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].outer[0], PairBoundary::Empty);
        assert_eq!(
            all[1].outer[0],
            PairBoundary::Adjacent {
                first: 0,
                second: 0
            }
        );
        assert!(all[1].inner[0].is_empty());
    }

    #[test]
    fn outer_of_empty_set() {
        let model = ChordModel::polygon(&[1, 1, 0], &[(1, 2)]).unwrap();
        let o = outer_boundary_of(&model, &[]).unwrap();
        assert!(o.outer.iter().all(|b| b.is_empty()));
    }
}
