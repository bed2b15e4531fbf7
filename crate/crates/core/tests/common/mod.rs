//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use chorddom::oracles::Digraph;
use chorddom::{chords_intersect, ChordModel, UndirectedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Chords of the example model; the same endpoints serve the circle model
/// and the 4-polygon model with sides of lengths 3, 5, 3, 5. Endpoints 2 and
/// 3 are ordered so that the chords of f and g cross.
pub const EXAMPLE_CHORDS: [(u32, u32); 8] = [
    (1, 12),
    (2, 6),
    (3, 8),
    (4, 16),
    (5, 10),
    (7, 15),
    (9, 14),
    (11, 13),
];
pub const EXAMPLE_SIDES: [u32; 4] = [3, 5, 3, 5];

/// The example graph on letters a..h (indices 0..7).
pub const EXAMPLE_EDGES: [(char, char); 12] = [
    ('a', 'b'),
    ('a', 'c'),
    ('a', 'd'),
    ('a', 'e'),
    ('f', 'd'),
    ('f', 'e'),
    ('f', 'g'),
    ('f', 'h'),
    ('h', 'b'),
    ('h', 'd'),
    ('g', 'e'),
    ('g', 'h'),
];

pub fn letter(c: char) -> usize {
    (c as u8 - b'a') as usize
}

pub fn letters(s: &str) -> Vec<usize> {
    s.chars().map(letter).collect()
}

pub fn example_letter_graph() -> UndirectedGraph {
    let edges: Vec<(usize, usize)> = EXAMPLE_EDGES
        .iter()
        .map(|&(a, b)| (letter(a), letter(b)))
        .collect();
    UndirectedGraph::from_edges(8, &edges)
}

pub fn example_polygon() -> ChordModel {
    ChordModel::polygon(&EXAMPLE_SIDES, &EXAMPLE_CHORDS).unwrap()
}

pub fn example_circle() -> ChordModel {
    ChordModel::circle(&EXAMPLE_CHORDS).unwrap()
}

/// Some `phi` with `h.has_edge(u, v) == g.has_edge(phi[u], phi[v])`, by trying
/// every permutation.
pub fn isomorphism(h: &UndirectedGraph, g: &UndirectedGraph) -> Option<Vec<usize>> {
    let n = h.n();
    if g.n() != n || g.edge_count() != h.edge_count() {
        return None;
    }
    fn extend(
        h: &UndirectedGraph,
        g: &UndirectedGraph,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let u = phi.len();
        if u == h.n() {
            return true;
        }
        for cand in 0..g.n() {
            if used[cand] || g.degree(cand) != h.degree(u) {
                continue;
            }
            if (0..u).all(|w| h.has_edge(u, w) == g.has_edge(cand, phi[w])) {
                used[cand] = true;
                phi.push(cand);
                if extend(h, g, phi, used) {
                    return true;
                }
                phi.pop();
                used[cand] = false;
            }
        }
        false
    }
    let mut phi = Vec::new();
    let mut used = vec![false; n];
    extend(h, g, &mut phi, &mut used).then_some(phi)
}

/// Adjacency by comparing every pair of chords.
pub fn quadratic_graph(model: &ChordModel) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(model.m());
    for a in model.chords() {
        for b in model.chords() {
            if a.id < b.id && chords_intersect(a, b).unwrap() {
                g.add_edge(a.id, b.id);
            }
        }
    }
    g
}

/// `J − N[s]` by scanning every chord against every member of `s`.
pub fn quadratic_undominated(model: &ChordModel, s: &[usize]) -> Vec<usize> {
    model
        .chords()
        .iter()
        .filter(|x| {
            s.iter()
                .all(|&y| x.id != y && !chords_intersect(x, model.chord(y)).unwrap())
        })
        .map(|x| x.id)
        .collect()
}

/// Perfect matchability by pairing the lowest vertex every possible way.
pub fn pm_recursive(g: &UndirectedGraph, set: &[usize]) -> bool {
    if set.is_empty() {
        return true;
    }
    if set.len() % 2 == 1 {
        return false;
    }
    let v = set[0];
    (1..set.len()).any(|t| {
        g.has_edge(v, set[t]) && {
            let rest: Vec<usize> = set[1..].iter().copied().filter(|&x| x != set[t]).collect();
            pm_recursive(g, &rest)
        }
    })
}

pub fn dominates(g: &UndirectedGraph, set: &[usize], target: &[usize]) -> bool {
    target
        .iter()
        .all(|&t| set.iter().any(|&s| s == t || g.has_edge(s, t)))
}

/// Maximum matching size by branching on the lowest vertex.
pub fn exhaustive_matching_number(g: &UndirectedGraph) -> usize {
    fn go(g: &UndirectedGraph, alive: &mut Vec<bool>) -> usize {
        let Some(v) = (0..g.n()).find(|&v| alive[v]) else {
            return 0;
        };
        alive[v] = false;
        let mut best = go(g, alive);
        for u in 0..g.n() {
            if alive[u] && g.has_edge(v, u) {
                alive[u] = false;
                best = best.max(1 + go(g, alive));
                alive[u] = true;
            }
        }
        alive[v] = true;
        best
    }
    go(g, &mut vec![true; g.n()])
}

/// Every subset of `items` in order of size, as index lists in lexicographic order.
pub fn subsets_by_size(items: &[usize]) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut all: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| items[i])
                .collect()
        })
        .collect();
    all.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// Minimum augmentation size by scanning subsets of the complement of `s`.
pub fn exhaustive_min_augmentation(g: &UndirectedGraph, s: &[usize]) -> Option<usize> {
    let rest: Vec<usize> = (0..g.n()).filter(|v| !s.contains(v)).collect();
    subsets_by_size(&rest).into_iter().find_map(|extra| {
        let mut all = s.to_vec();
        all.extend(&extra);
        all.sort_unstable();
        pm_recursive(g, &all).then_some(extra.len())
    })
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = UndirectedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A random paired-dominating set, shrunk to a minimal one when `shrink`.
/// `None` when the walk does not find one.
pub fn random_pds(g: &UndirectedGraph, seed: u64, shrink: bool) -> Option<Vec<usize>> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    let all: Vec<usize> = (0..n).collect();
    let is_pds = |d: &[usize]| dominates(g, d, &all) && pm_recursive(g, d);
    let mut found = false;
    for _ in 0..500 {
        if is_pds(&d) {
            found = true;
            break;
        }
        let c = rng.gen_range(0..n.max(1));
        if !d.contains(&c) {
            d.push(c);
            d.sort_unstable();
        } else if rng.gen_bool(0.5) {
            d.retain(|&x| x != c);
        }
    }
    if !found {
        return None;
    }
    if !shrink {
        return Some(d);
    }
    loop {
        let smaller = (0..d.len())
            .flat_map(|a| (a + 1..d.len()).map(move |b| (a, b)))
            .find_map(|(a, b)| {
                let t: Vec<usize> = d
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != a && i != b)
                    .map(|(_, &x)| x)
                    .collect();
                is_pds(&t).then_some(t)
            });
        match smaller {
            Some(t) => d = t,
            None => break,
        }
    }
    Some(d)
}

/// Every digraph on `n` vertices without self-loops.
pub fn all_digraphs(n: usize) -> Vec<Digraph> {
    let slots: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    (0u64..1 << slots.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = slots
                .iter()
                .enumerate()
                .filter(|&(t, _)| mask >> t & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Digraph::new(n, &edges).unwrap()
        })
        .collect()
}

/// Every ordering of `2..n` framed by 1 and `n`, checked edge by edge.
pub fn ham_path_by_permutations(d: &Digraph) -> Option<Vec<usize>> {
    let n = d.n();
    let mut middle: Vec<usize> = (2..n).collect();
    fn permute(k: usize, xs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == xs.len() {
            out.push(xs.clone());
            return;
        }
        for i in k..xs.len() {
            xs.swap(k, i);
            permute(k + 1, xs, out);
            xs.swap(k, i);
        }
    }
    let mut perms = Vec::new();
    permute(0, &mut middle, &mut perms);
    perms.sort();
    perms.into_iter().find_map(|mid| {
        let mut path = vec![1];
        path.extend(mid);
        if n > 1 {
            path.push(n);
        }
        path.windows(2)
            .all(|w| d.has_edge(w[0], w[1]))
            .then_some(path)
    })
}
