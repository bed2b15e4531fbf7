use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::geom::{build_adjacency, ChordId, ChordModel, PairRestriction, UndirectedGraph};
use crate::matching::{for_each_combination, has_perfect_matching};

/// Largest pair handled by lookup tables regardless of configuration.
const TABLE_LIMIT: usize = 20;

/// Exhaustive tables over all subsets of one `J_ij`, in local indices.
struct Table {
    /// Members of the pair dominated by each subset.
    dom: Vec<u32>,
    /// Whether each subset induces a perfectly matchable subgraph.
    pm: Vec<bool>,
    /// Subsets by size, then lexicographically.
    order: Vec<u32>,
}

impl Table {
    fn new(g: &UndirectedGraph, members: &[ChordId]) -> Self {
        let n = members.len();
        let adj: Vec<u32> = members
            .iter()
            .map(|&a| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| g.has_edge(a, b))
                    .fold(0u32, |m, (t, _)| m | 1 << t)
            })
            .collect();
        let full = 1usize << n;
        let mut dom = vec![0u32; full];
        let mut pm = vec![false; full];
        pm[0] = true;
        for mask in 1..full {
            let low = mask.trailing_zeros() as usize;
            dom[mask] = dom[mask & (mask - 1)] | adj[low] | 1 << low;
            if mask.count_ones() % 2 == 0 {
                let rest = mask & !(1 << low);
                let mut cand = adj[low] as usize & rest;
                while cand != 0 {
                    let t = cand.trailing_zeros() as usize;
                    cand &= cand - 1;
                    if pm[rest & !(1 << t)] {
                        pm[mask] = true;
                        break;
                    }
                }
            }
        }
        let mut order = Vec::with_capacity(full);
        for size in 0..=n {
            for_each_combination(n, size, |idx| {
                order.push(idx.iter().fold(0u32, |m, &t| m | 1 << t));
                false
            });
        }
        Table { dom, pm, order }
    }

    fn query(&self, target: u32, excluded: u32, paired: bool) -> Option<u32> {
        self.order.iter().copied().find(|&mask| {
            mask & excluded == 0
                && (!paired || self.pm[mask as usize])
                && self.dom[mask as usize] & target == target
        })
    }
}

/// Target, excluded chords and pairing flag of a combination-search query.
type WideKey = (Vec<ChordId>, Vec<ChordId>, bool);

/// Minimum-subset solver for one side pair, with memoised queries. Clones
/// share the tables and start with the memo contents at clone time.
#[derive(Clone)]
pub(crate) struct PairSolver {
    members: Vec<ChordId>,
    table: Option<Arc<Table>>,
    memo: HashMap<(u64, bool), Option<Vec<ChordId>>>,
    wide_memo: HashMap<WideKey, Option<Vec<ChordId>>>,
}

impl PairSolver {
    pub fn new(g: &UndirectedGraph, members: &[ChordId], exhaustive_cap: usize) -> Self {
        let table = (members.len() <= exhaustive_cap.min(TABLE_LIMIT))
            .then(|| Arc::new(Table::new(g, members)));
        PairSolver {
            members: members.to_vec(),
            table,
            memo: HashMap::new(),
            wide_memo: HashMap::new(),
        }
    }

    fn local_mask(&self, chords: impl Iterator<Item = ChordId>) -> u32 {
        chords.fold(0u32, |m, c| match self.members.binary_search(&c) {
            Ok(t) => m | 1 << t,
            Err(_) => m,
        })
    }

    /// Minimum `S ⊆ J_ij − excluded` with `target ⊆ N[S]` and, when `paired`,
    /// `G[S]` perfectly matchable. Ties go to the lexicographically smallest
    /// id list. Chords outside the pair are ignored in both arguments.
    pub fn solve(
        &mut self,
        g: &UndirectedGraph,
        target: &[ChordId],
        excluded: &[ChordId],
        paired: bool,
    ) -> Option<Vec<ChordId>> {
        if let Some(table) = &self.table {
            let t = self.local_mask(target.iter().copied());
            let x = self.local_mask(excluded.iter().copied());
            let key = (u64::from(t) | u64::from(x) << 32, paired);
            if let Some(hit) = self.memo.get(&key) {
                return hit.clone();
            }
            let res = table.query(t, x, paired).map(|mask| {
                (0..self.members.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| self.members[i])
                    .collect()
            });
            self.memo.insert(key, res.clone());
            return res;
        }
        let in_pair = |v: &[ChordId]| -> Vec<ChordId> {
            let mut v: Vec<ChordId> = v
                .iter()
                .copied()
                .filter(|c| self.members.binary_search(c).is_ok())
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let key = (in_pair(target), in_pair(excluded), paired);
        if let Some(hit) = self.wide_memo.get(&key) {
            return hit.clone();
        }
        let res = search(g, &self.members, &key.0, &key.1, paired);
        self.wide_memo.insert(key, res.clone());
        res
    }
}

/// Combination search used for pairs too large for tables.
fn search(
    g: &UndirectedGraph,
    members: &[ChordId],
    target: &[ChordId],
    excluded: &[ChordId],
    paired: bool,
) -> Option<Vec<ChordId>> {
    let allowed: Vec<ChordId> = members
        .iter()
        .copied()
        .filter(|c| !excluded.contains(c))
        .collect();
    let step = if paired { 2 } else { 1 };
    let mut found = None;
    let mut chosen = Vec::new();
    for size in (0..=allowed.len()).step_by(step) {
        for_each_combination(allowed.len(), size, |idx| {
            chosen.clear();
            chosen.extend(idx.iter().map(|&i| allowed[i]));
            let mut covered = BitSet::new(g.n());
            for &c in &chosen {
                covered.union_with(&g.closed_neighborhood(c));
            }
            if target.iter().all(|&t| covered.contains(t))
                && (!paired || has_perfect_matching(g, &chosen))
            {
                found = Some(chosen.clone());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// Default size up to which a pair is solved by lookup tables.
pub const DEFAULT_PAIR_EXHAUSTIVE_CAP: usize = 16;

/// Minimum `D ⊆ J_ij − excluded` dominating `target` whose induced subgraph
/// has a perfect matching; `None` when no such set exists.
pub fn min_constrained_paired_dom_on_pair(
    model: &ChordModel,
    pair: &PairRestriction,
    target: &[ChordId],
    excluded: &[ChordId],
) -> Option<Vec<ChordId>> {
    let g = build_adjacency(model);
    PairSolver::new(&g, &pair.chords, DEFAULT_PAIR_EXHAUSTIVE_CAP).solve(&g, target, excluded, true)
}

/// Minimum `D ⊆ J_ij` dominating `target`; `None` when `target` has chords
/// outside the pair's reach.
pub fn min_constrained_dom_on_pair(
    model: &ChordModel,
    pair: &PairRestriction,
    target: &[ChordId],
) -> Option<Vec<ChordId>> {
    let g = build_adjacency(model);
    PairSolver::new(&g, &pair.chords, DEFAULT_PAIR_EXHAUSTIVE_CAP).solve(&g, target, &[], false)
}
