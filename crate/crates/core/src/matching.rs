//! Maximum matching in general graphs and matchable augmentation.

use crate::bitset::BitSet;
use crate::geom::{build_adjacency, ChordId, ChordModel, UndirectedGraph};

const NONE: usize = usize::MAX;

/// Set of vertex-disjoint edges, stored as sorted `(u, v)` pairs with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<_> = pairs
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    fn from_mates(mate: &[usize], ids: impl Fn(usize) -> usize) -> Self {
        Matching::from_pairs(
            mate.iter()
                .enumerate()
                .filter(|&(v, &u)| u != NONE && v < u)
                .map(|(v, &u)| (ids(v), ids(u))),
        )
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs
    }

    /// Disjoint pairs, each an edge of `g`.
    pub fn is_valid_in(&self, g: &UndirectedGraph) -> bool {
        let mut seen = BitSet::new(g.n());
        self.pairs.iter().all(|&(a, b)| {
            a < g.n() && b < g.n() && g.has_edge(a, b) && seen.insert(a) && seen.insert(b)
        })
    }

    /// Covers exactly the vertices of `set` and nothing else.
    pub fn is_perfect_on(&self, set: &[usize]) -> bool {
        let mut want = set.to_vec();
        want.sort_unstable();
        want.dedup();
        self.vertices() == want
    }
}

/// Maximum-cardinality matching via Edmonds' blossom algorithm.
///
/// Roots are processed in ascending order and neighbors are scanned in
/// ascending order, so the result is a deterministic function of the graph.
pub fn max_matching(g: &UndirectedGraph) -> Matching {
    let mate = blossom_mates(g);
    Matching::from_mates(&mate, |v| v)
}

fn blossom_mates(g: &UndirectedGraph) -> Vec<usize> {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut mate = vec![NONE; n];
    // greedy warm start
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&u) = adj[v].iter().find(|&&u| mate[u] == NONE) {
                mate[v] = u;
                mate[u] = v;
            }
        }
    }
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            if let Some(end) = search.augmenting_path(&adj, &mate, root) {
                let mut v = end;
                while v != NONE {
                    let pv = search.parent[v];
                    let next = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    mate
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: std::collections::VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// BFS over alternating trees from `root`; returns the free vertex that
    /// ends an augmenting path, with the path recorded in `parent`.
    fn augmenting_path(
        &mut self,
        adj: &[Vec<usize>],
        mate: &[usize],
        root: usize,
    ) -> Option<usize> {
        let n = adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

fn sorted_unique(set: &[usize]) -> Vec<usize> {
    let mut vs = set.to_vec();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// A perfect matching of the subgraph induced on `subset`, if one exists.
/// The empty set is perfectly matched by the empty matching.
pub fn perfect_matching_on(g: &UndirectedGraph, subset: &[usize]) -> Option<Matching> {
    let vs = sorted_unique(subset);
    if vs.len() % 2 == 1 {
        return None;
    }
    let mate = blossom_mates(&g.induced(&vs));
    if mate.contains(&NONE) {
        return None;
    }
    Some(Matching::from_mates(&mate, |t| vs[t]))
}

/// Whether the subgraph induced on `subset` has a matching covering it.
pub fn has_perfect_matching(g: &UndirectedGraph, subset: &[usize]) -> bool {
    perfect_matching_on(g, subset).is_some()
}

/// Size of a maximum matching in the subgraph induced on `subset`.
pub fn matching_number_on(g: &UndirectedGraph, subset: &[usize]) -> usize {
    let vs = sorted_unique(subset);
    let mate = blossom_mates(&g.induced(&vs));
    mate.iter().filter(|&&m| m != NONE).count() / 2
}

/// Minimum chord set `Ψ` outside `s` such that the chords of `s ∪ Ψ` induce a
/// perfectly matchable subgraph. `None` when no such set exists.
pub fn min_augmentation(model: &ChordModel, s: &[ChordId]) -> Option<Vec<ChordId>> {
    let g = build_adjacency(model);
    min_augmentation_in(&g, s, &BitSet::new(g.n()))
}

/// [`min_augmentation`] on an explicit graph, never drawing from `forbidden`.
///
/// Only neighbors of `s` are candidates: in a minimum augmentation every added
/// vertex is matched to a vertex of `s`, otherwise two added vertices matched
/// to each other could both be dropped. Sizes are tried in increasing order
/// from the parity deficiency `|s| - 2ν(G[s])`, and within a size the
/// lexicographically smallest id sequence wins.
pub fn min_augmentation_in(
    g: &UndirectedGraph,
    s: &[usize],
    forbidden: &BitSet,
) -> Option<Vec<usize>> {
    let base = sorted_unique(s);
    let in_s = BitSet::from_iter_with_capacity(g.n(), base.iter().copied());
    let mut pool_set = BitSet::new(g.n());
    for &v in &base {
        pool_set.union_with(g.neighbor_set(v));
    }
    pool_set.difference_with(&in_s);
    pool_set.difference_with(forbidden);
    let pool = pool_set.to_vec();

    if !coverable(g, &base, &pool) {
        return None;
    }
    let deficiency = base.len() - 2 * matching_number_on(g, &base);
    let max_size = base.len().min(pool.len());
    let mut size = deficiency;
    let mut chosen = Vec::with_capacity(max_size);
    let mut union = Vec::with_capacity(base.len() + max_size);
    while size <= max_size {
        let mut found = None;
        for_each_combination(pool.len(), size, |idx| {
            chosen.clear();
            chosen.extend(idx.iter().map(|&i| pool[i]));
            union.clear();
            union.extend_from_slice(&base);
            union.extend_from_slice(&chosen);
            if has_perfect_matching(g, &union) {
                found = Some(chosen.clone());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
        size += 2;
    }
    None
}

/// Whether some matching of `G[s ∪ pool]` covers every vertex of `s`. Pool
/// vertices left over are made pairable among themselves (plus a dummy for
/// parity), turning the question into a perfect-matching test.
fn coverable(g: &UndirectedGraph, s: &[usize], pool: &[usize]) -> bool {
    let ns = s.len();
    let np = pool.len();
    let total = ns + np + (ns + np) % 2;
    let mut h = UndirectedGraph::new(total);
    for a in 0..ns {
        for b in a + 1..ns {
            if g.has_edge(s[a], s[b]) {
                h.add_edge(a, b);
            }
        }
        for (t, &p) in pool.iter().enumerate() {
            if g.has_edge(s[a], p) {
                h.add_edge(a, ns + t);
            }
        }
    }
    for a in ns..total {
        for b in a + 1..total {
            h.add_edge(a, b);
        }
    }
    blossom_mates(&h).iter().all(|&m| m != NONE)
}

/// Calls `f` with each `size`-subset of `0..n` in lexicographic order until it
/// returns `true`. Returns whether `f` stopped the iteration.
pub(crate) fn for_each_combination(
    n: usize,
    size: usize,
    mut f: impl FnMut(&[usize]) -> bool,
) -> bool {
    if size > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if f(&idx) {
            return true;
        }
        // advance to the next combination
        let mut i = size;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - size + i {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for t in i + 1..size {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> UndirectedGraph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        UndirectedGraph::from_edges(n, &edges)
    }

    fn cycle(n: usize) -> UndirectedGraph {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        UndirectedGraph::from_edges(n, &edges)
    }

    #[test]
    fn small_matchings() {
        assert_eq!(max_matching(&path(4)).len(), 2);
        assert_eq!(max_matching(&cycle(5)).len(), 2);
        assert_eq!(max_matching(&UndirectedGraph::new(3)).len(), 0);
        let m = max_matching(&cycle(6));
        assert_eq!(m.len(), 3);
        assert!(m.is_valid_in(&cycle(6)));
    }

    #[test]
    fn blossom_needed() {
        // triangle 0-1-2 with tails 2-3 and 0-4: greedy picks 0-1, blossom fixes it
        let g = UndirectedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (3, 5)]);
        assert_eq!(max_matching(&g).len(), 3);
    }

    #[test]
    fn perfect_matching_checks() {
        let g = path(4);
        assert!(has_perfect_matching(&g, &[]));
        assert!(has_perfect_matching(&g, &[0, 1, 2, 3]));
        assert!(!has_perfect_matching(&g, &[0, 2]));
        assert!(!has_perfect_matching(&g, &[0, 1, 2]));
        let pm = perfect_matching_on(&g, &[2, 1]).unwrap();
        assert_eq!(pm.pairs(), &[(1, 2)]);
        assert!(pm.is_perfect_on(&[1, 2]));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut empty = 0;
        for_each_combination(3, 0, |_| {
            empty += 1;
            false
        });
        assert_eq!(empty, 1);
        assert!(!for_each_combination(2, 3, |_| true));
    }

    #[test]
    fn augmentation_examples() {
        // two crossing chords
        let model = ChordModel::circle(&[(1, 3), (2, 4)]).unwrap();
        assert_eq!(min_augmentation(&model, &[0, 1]), Some(vec![]));
        assert_eq!(min_augmentation(&model, &[0]), Some(vec![1]));
        // isolated chord
        let model = ChordModel::circle(&[(1, 2), (3, 5), (4, 6)]).unwrap();
        assert_eq!(min_augmentation(&model, &[0]), None);
        assert_eq!(min_augmentation(&model, &[]), Some(vec![]));
    }

    #[test]
    fn augmentation_path_with_outside_neighbors() {
        // s = {0,1,2} a path 0-1-2; 3 hangs off 2, 4 hangs off 0
        let g = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 4)]);
        let psi = min_augmentation_in(&g, &[0, 1, 2], &BitSet::new(5)).unwrap();
        assert_eq!(psi, vec![3]);
        let forbid = BitSet::from_iter_with_capacity(5, [3]);
        assert_eq!(min_augmentation_in(&g, &[0, 1, 2], &forbid), Some(vec![4]));
    }
}
