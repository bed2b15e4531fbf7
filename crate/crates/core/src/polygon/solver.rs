use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::boundary::{collect, for_each_completion, OuterSpace};
use super::pair::{PairSolver, DEFAULT_PAIR_EXHAUSTIVE_CAP};
use super::{BoundarySelection, PairBoundary, PolygonContext};
use crate::bitset::BitSet;
use crate::error::ModelError;
use crate::geom::{ChordId, ChordModel};
use crate::matching::min_augmentation_in;
use crate::oracles::{is_dominating_set, is_paired_dominating_set};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Worker threads for candidate evaluation; 1 runs on the calling thread.
    pub jobs: usize,
    /// Pairs with at most this many chords are solved through lookup tables,
    /// larger ones by combination search.
    pub pair_exhaustive_cap: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            jobs: 1,
            pair_exhaustive_cap: DEFAULT_PAIR_EXHAUSTIVE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonSolution {
    /// Optimal chord ids, ascending; `None` when no solution exists.
    pub set: Option<Vec<ChordId>>,
    /// Boundary candidates enumerated.
    pub candidates: u64,
}

#[derive(Clone, Copy)]
enum Goal {
    Domination,
    PairedDomination,
}

#[derive(Clone)]
struct Worker<'c> {
    ctx: &'c PolygonContext,
    solvers: Vec<PairSolver>,
    psi_memo: HashMap<Vec<ChordId>, Option<Vec<ChordId>>>,
    best: Option<Vec<ChordId>>,
    candidates: u64,
}

fn better(a: &[ChordId], b: &Option<Vec<ChordId>>) -> bool {
    match b {
        None => true,
        Some(b) => (a.len(), a) < (b.len(), b.as_slice()),
    }
}

fn merge(a: Option<Vec<ChordId>>, b: Option<Vec<ChordId>>) -> Option<Vec<ChordId>> {
    match (a, b) {
        (Some(x), y) if better(&x, &y) => Some(x),
        (x, Some(y)) if better(&y, &x) => Some(y),
        (x, y) => x.or(y),
    }
}

fn sorted_union(parts: &[&[ChordId]]) -> Vec<ChordId> {
    let mut v: Vec<ChordId> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl Worker<'_> {
    fn offer(&mut self, d: Vec<ChordId>, bound: &AtomicUsize) {
        if better(&d, &self.best) {
            bound.fetch_min(d.len(), Ordering::Relaxed);
            self.best = Some(d);
        }
    }

    fn psi(&mut self, k: &[ChordId]) -> Option<Vec<ChordId>> {
        let g = &self.ctx.g;
        self.psi_memo
            .entry(k.to_vec())
            .or_insert_with(|| min_augmentation_in(g, k, &BitSet::new(g.n())))
            .clone()
    }

    fn eval_paired(&mut self, sel: &BoundarySelection, bound: &AtomicUsize) {
        self.candidates += 1;
        let ctx = self.ctx;
        let k = sel.chords();
        let limit = bound.load(Ordering::Relaxed);
        if k.len().next_multiple_of(2) > limit {
            return;
        }
        let j2 = ctx.undominated(k.iter().copied());
        let mut inner_sets: Vec<ChordId> = Vec::new();
        for p in 0..ctx.pairs.len() {
            let target: Vec<ChordId> = ctx.members[p]
                .iter()
                .copied()
                .filter(|&c| j2.contains(c))
                .collect();
            if target.is_empty() {
                continue;
            }
            let excluded = sorted_union(&[&sel.outer[p].chords(), &sel.inner[p].chords()]);
            match self.solvers[p].solve(&ctx.g, &target, &excluded, true) {
                Some(s) => inner_sets.extend(s),
                None => return,
            }
        }
        if (k.len() + inner_sets.len()).next_multiple_of(2) > limit {
            return;
        }
        if !ctx
            .undominated(k.iter().chain(&inner_sets).copied())
            .is_empty()
        {
            return;
        }
        let Some(psi) = self.psi(&k) else { return };
        let d = sorted_union(&[&inner_sets, &k, &psi]);
        if is_paired_dominating_set(&ctx.g, &d) {
            self.offer(d, bound);
            return;
        }
        // Ψ reused chords of the pair solutions; retry with those kept apart.
        if psi.iter().any(|c| inner_sets.contains(c)) {
            let forbidden = BitSet::from_iter_with_capacity(ctx.g.n(), inner_sets.iter().copied());
            if let Some(psi) = min_augmentation_in(&ctx.g, &k, &forbidden) {
                let d = sorted_union(&[&inner_sets, &k, &psi]);
                if is_paired_dominating_set(&ctx.g, &d) {
                    self.offer(d, bound);
                }
            }
        }
    }

    fn eval_plain(&mut self, outer: &[PairBoundary], bound: &AtomicUsize) {
        self.candidates += 1;
        let ctx = self.ctx;
        let o = collect(outer);
        let limit = bound.load(Ordering::Relaxed);
        if o.len() > limit {
            return;
        }
        let j1 = ctx.undominated(o.iter().copied());
        let mut d = o;
        for p in 0..ctx.pairs.len() {
            let target: Vec<ChordId> = ctx.members[p]
                .iter()
                .copied()
                .filter(|&c| j1.contains(c))
                .collect();
            if target.is_empty() {
                continue;
            }
            match self.solvers[p].solve(&ctx.g, &target, &[], false) {
                Some(s) => d.extend(s),
                None => return,
            }
        }
        d.sort_unstable();
        d.dedup();
        if d.len() > limit || !is_dominating_set(&ctx.g, &d) {
            return;
        }
        self.offer(d, bound);
    }

    fn run(&mut self, goal: Goal, space: &OuterSpace, idx: u64, bound: &AtomicUsize) {
        let outer = space.decode(idx);
        match goal {
            Goal::Domination => self.eval_plain(&outer, bound),
            Goal::PairedDomination => {
                for_each_completion(self.ctx, &outer, |sel| {
                    self.eval_paired(sel, bound);
                    false
                });
            }
        }
    }
}

fn solve(
    model: &ChordModel,
    opts: &SolverOptions,
    goal: Goal,
) -> Result<PolygonSolution, ModelError> {
    let ctx = PolygonContext::new(model)?;
    if matches!(goal, Goal::PairedDomination) && !ctx.g.isolated_vertices().is_empty() {
        return Ok(PolygonSolution {
            set: None,
            candidates: 0,
        });
    }
    let space = OuterSpace::new(&ctx);
    let solvers: Vec<PairSolver> = ctx
        .members
        .iter()
        .map(|m| PairSolver::new(&ctx.g, m, opts.pair_exhaustive_cap))
        .collect();
    let proto = Worker {
        ctx: &ctx,
        solvers,
        psi_memo: HashMap::new(),
        best: None,
        candidates: 0,
    };
    let bound = AtomicUsize::new(usize::MAX);

    let (set, candidates) = if opts.jobs <= 1 {
        let mut w = proto;
        for idx in 0..space.total {
            w.run(goal, &space, idx, &bound);
        }
        (w.best, w.candidates)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..space.total as usize)
                .into_par_iter()
                .with_min_len(16)
                .fold(
                    || proto.clone(),
                    |mut w, idx| {
                        w.run(goal, &space, idx as u64, &bound);
                        w
                    },
                )
                .map(|w| (w.best, w.candidates))
                .reduce(|| (None, 0), |(a, ca), (b, cb)| (merge(a, b), ca + cb))
        })
    };
    Ok(PolygonSolution { set, candidates })
}

/// Minimum paired-dominating set of a polygon model.
///
/// Every `(O, I)` candidate is completed by per-pair minimum matchable
/// dominating sets for what `O ∪ I` leaves undominated, plus a minimum
/// augmentation `Ψ` making `O ∪ I` perfectly matchable. Each completed set is
/// verified before it is kept. Ties go to the lexicographically smallest id
/// list, independent of `jobs`.
pub fn solve_min_pds_polygon(
    model: &ChordModel,
    opts: &SolverOptions,
) -> Result<PolygonSolution, ModelError> {
    solve(model, opts, Goal::PairedDomination)
}

/// Minimum dominating set of a polygon model, by enumerating outer
/// boundaries and dominating the rest of each pair from inside the pair.
pub fn solve_min_ds_polygon(
    model: &ChordModel,
    opts: &SolverOptions,
) -> Result<PolygonSolution, ModelError> {
    solve(model, opts, Goal::Domination)
}
