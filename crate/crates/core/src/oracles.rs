//! Brute-force ground truth: exact minimum (paired-)dominating sets by subset
//! enumeration, Hamiltonian path search, and the membership checkers.
//!
//! The enumerators deliberately avoid the blossom code in [`crate::matching`];
//! perfect matchability of a candidate set is decided by a memoised
//! recursion over bitmasks so the two routes stay independent.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::ParseError;
use crate::geom::io::{content_lines, parse_numbers};
use crate::geom::UndirectedGraph;
use crate::matching::has_perfect_matching;

pub const DEFAULT_DOMINATION_CAP: usize = 24;
pub const DEFAULT_HAMILTONIAN_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// `D` dominates `G` when every vertex outside `D` has a neighbor in `D`.
pub fn is_dominating_set(g: &UndirectedGraph, d: &[usize]) -> bool {
    g.closed_neighborhood_of(d.iter().copied()).len() == g.n()
}

/// Dominating and perfectly matchable in the induced subgraph.
pub fn is_paired_dominating_set(g: &UndirectedGraph, d: &[usize]) -> bool {
    is_dominating_set(g, d) && has_perfect_matching(g, d)
}

fn closed_masks(g: &UndirectedGraph, cap: usize) -> Result<Vec<u64>, OracleError> {
    let n = g.n();
    if n > cap || n > 64 {
        return Err(OracleError::CapExceeded {
            n,
            cap: cap.min(64),
        });
    }
    Ok((0..n)
        .map(|v| {
            g.closed_neighborhood(v)
                .iter()
                .fold(0u64, |m, u| m | 1 << u)
        })
        .collect())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Visits `size`-subsets of `0..n` as bitmasks in lexicographic order of their
/// sorted element lists; stops at the first mask accepted by `f`.
fn first_subset(n: usize, size: usize, mut f: impl FnMut(u64) -> bool) -> Option<u64> {
    let mut found = None;
    crate::matching::for_each_combination(n, size, |idx| {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if f(mask) {
            found = Some(mask);
            true
        } else {
            false
        }
    });
    found
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Minimum dominating set; among minima, the lexicographically smallest.
pub fn min_dominating_set_bruteforce(
    g: &UndirectedGraph,
    cap: usize,
) -> Result<Vec<usize>, OracleError> {
    let closed = closed_masks(g, cap)?;
    let n = g.n();
    let all = full_mask(n);
    for size in 0..=n {
        let hit = first_subset(n, size, |mask| {
            mask_to_vec(mask)
                .iter()
                .fold(0u64, |acc, &v| acc | closed[v])
                == all
        });
        if let Some(mask) = hit {
            return Ok(mask_to_vec(mask));
        }
    }
    unreachable!("the full vertex set dominates")
}

struct PairingMemo<'a> {
    open: &'a [u64],
    memo: HashMap<u64, bool>,
}

impl PairingMemo<'_> {
    fn perfectly_matchable(&mut self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        if mask.count_ones() % 2 == 1 {
            return false;
        }
        if let Some(&known) = self.memo.get(&mask) {
            return known;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut partners = self.open[v] & rest;
        let mut ok = false;
        while partners != 0 {
            let u = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            if self.perfectly_matchable(rest & !(1 << u)) {
                ok = true;
                break;
            }
        }
        self.memo.insert(mask, ok);
        ok
    }
}

/// Minimum paired-dominating set, or `Ok(None)` when the graph has an
/// isolated vertex (no paired-dominating set exists).
pub fn min_paired_dominating_set_bruteforce(
    g: &UndirectedGraph,
    cap: usize,
) -> Result<Option<Vec<usize>>, OracleError> {
    let closed = closed_masks(g, cap)?;
    let n = g.n();
    if !g.isolated_vertices().is_empty() {
        return Ok(None);
    }
    let open: Vec<u64> = (0..n).map(|v| closed[v] & !(1 << v)).collect();
    let mut pairing = PairingMemo {
        open: &open,
        memo: HashMap::new(),
    };
    let all = full_mask(n);
    for size in (0..=n).step_by(2) {
        let hit = first_subset(n, size, |mask| {
            mask_to_vec(mask)
                .iter()
                .fold(0u64, |acc, &v| acc | closed[v])
                == all
                && pairing.perfectly_matchable(mask)
        });
        if let Some(mask) = hit {
            return Ok(Some(mask_to_vec(mask)));
        }
    }
    unreachable!("a graph without isolated vertices has a paired-dominating set")
}

/// Directed graph on vertices `1..=n`; the designated start is vertex 1 and the
/// designated end is vertex `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("edge ({0},{1}) references a vertex outside 1..={2}")]
    OutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0},{1})")]
    Duplicate(usize, usize),
}

impl Digraph {
    /// Edges are 1-based `(from, to)` pairs and keep their input order.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut out = vec![Vec::new(); n + 1];
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(DigraphError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u));
            }
            if out[u].contains(&v) {
                return Err(DigraphError::Duplicate(u, v));
            }
            out[u].push(v);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        Ok(Digraph {
            n,
            edges: edges.to_vec(),
            out,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u <= self.n && self.out[u].binary_search(&v).is_ok()
    }

    /// Successors of `u` in ascending order.
    pub fn successors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    /// Parses a `digraph v1` file: header, `n m`, then `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, "empty digraph file"))?;
        if header != "digraph v1" {
            return Err(ParseError::new(
                hl,
                format!("malformed header `{header}`, expected `digraph v1`"),
            ));
        }
        let eof = |what: &str| ParseError::new(text.lines().count() + 1, format!("missing {what}"));
        let (sl, sizes) = lines.next().ok_or_else(|| eof("size line"))?;
        let v = parse_numbers::<usize>(sl, sizes, Some(2))?;
        let (n, m) = (v[0], v[1]);
        let mut edges = Vec::with_capacity(m);
        for (l, body) in lines {
            if edges.len() == m {
                return Err(ParseError::new(l, format!("more than {m} edge lines")));
            }
            let e = parse_numbers::<usize>(l, body, Some(2))?;
            edges.push((e[0], e[1]));
            Digraph::new(n, &edges).map_err(|err| ParseError::new(l, err.to_string()))?;
        }
        if edges.len() != m {
            return Err(eof(&format!("edge lines ({} of {m})", edges.len())));
        }
        Digraph::new(n, &edges).map_err(|err| ParseError::new(sl, err.to_string()))
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph v1");
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Seeded random digraph: each ordered pair `(u, v)`, `u != v`, is an edge
/// with probability `p`, visited in lexicographic order.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, &edges).expect("generated edges are valid")
}

/// Checks that `path` visits every vertex once, runs from 1 to `n`, and
/// follows directed edges.
pub fn is_hamiltonian_path(d: &Digraph, path: &[usize]) -> bool {
    let n = d.n();
    if path.len() != n || n == 0 || path[0] != 1 || path[n - 1] != n {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for &v in path {
        if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    path.windows(2).all(|w| d.has_edge(w[0], w[1]))
}

/// First Hamiltonian path from vertex 1 to vertex `n` found by depth-first
/// search with successors tried in ascending order.
pub fn hamiltonian_path(d: &Digraph, cap: usize) -> Result<Option<Vec<usize>>, OracleError> {
    let n = d.n();
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(vec![1]));
    }
    let mut path = vec![1];
    let mut used = vec![false; n + 1];
    used[1] = true;
    fn extend(d: &Digraph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = d.n();
        let last = *path.last().expect("non-empty");
        if path.len() == n {
            return last == n;
        }
        for &next in d.successors(last) {
            // the end vertex may only close the path
            if used[next] || (next == n && path.len() + 1 != n) {
                continue;
            }
            used[next] = true;
            path.push(next);
            if extend(d, path, used) {
                return true;
            }
            path.pop();
            used[next] = false;
        }
        false
    }
    Ok(extend(d, &mut path, &mut used).then_some(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> UndirectedGraph {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        UndirectedGraph::from_edges(n, &edges)
    }

    fn complete(n: usize) -> UndirectedGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        UndirectedGraph::from_edges(n, &edges)
    }

    #[test]
    fn domination_numbers() {
        let cap = DEFAULT_DOMINATION_CAP;
        assert_eq!(
            min_dominating_set_bruteforce(&complete(3), cap).unwrap(),
            vec![0]
        );
        assert_eq!(
            min_dominating_set_bruteforce(&cycle(6), cap).unwrap().len(),
            2
        );
        assert_eq!(
            min_dominating_set_bruteforce(&cycle(6), cap).unwrap(),
            vec![0, 3]
        );
        assert_eq!(
            min_paired_dominating_set_bruteforce(&complete(2), cap).unwrap(),
            Some(vec![0, 1])
        );
        assert_eq!(
            min_paired_dominating_set_bruteforce(&cycle(6), cap)
                .unwrap()
                .unwrap()
                .len(),
            4
        );
        let g = UndirectedGraph::from_edges(3, &[(0, 1)]);
        assert_eq!(min_paired_dominating_set_bruteforce(&g, cap).unwrap(), None);
        assert_eq!(
            min_dominating_set_bruteforce(&UndirectedGraph::new(25), cap),
            Err(OracleError::CapExceeded { n: 25, cap: 24 })
        );
        assert_eq!(
            min_dominating_set_bruteforce(&UndirectedGraph::new(0), cap).unwrap(),
            vec![]
        );
    }

    #[test]
    fn checkers() {
        let g = cycle(4);
        assert!(is_dominating_set(&g, &[0, 1, 2, 3]));
        assert!(!is_paired_dominating_set(&g, &[]));
        assert!(is_paired_dominating_set(&g, &[0, 1]));
        assert!(!is_paired_dominating_set(&g, &[0, 2]));
    }

    #[test]
    fn hamiltonian_examples() {
        let d = Digraph::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(hamiltonian_path(&d, 12).unwrap(), Some(vec![1, 2, 3]));
        let d = Digraph::new(3, &[(1, 3), (2, 3)]).unwrap();
        assert_eq!(hamiltonian_path(&d, 12).unwrap(), None);
        let edges: Vec<_> = (1..=3)
            .flat_map(|u| (1..=3).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        let d = Digraph::new(3, &edges).unwrap();
        let p = hamiltonian_path(&d, 12).unwrap().unwrap();
        assert!(is_hamiltonian_path(&d, &p));
        assert!(hamiltonian_path(&random_digraph(13, 0.5, 1), 12).is_err());
    }

    #[test]
    fn digraph_format() {
        let d = Digraph::parse("digraph v1\n3 2\n1 3\n2 3\n").unwrap();
        assert_eq!(d.edges(), &[(1, 3), (2, 3)]);
        assert_eq!(Digraph::parse(&d.serialize()).unwrap(), d);
        let err = Digraph::parse("digraph v1\n3 2\n1 3\n3 3\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(Digraph::parse("digraph v2\n1 0\n").is_err());
        assert_eq!(
            Digraph::parse("digraph v1\n3 2\n1 x\n").unwrap_err().line,
            3
        );
    }

    #[test]
    fn random_digraph_is_deterministic() {
        assert_eq!(random_digraph(5, 0.5, 9), random_digraph(5, 0.5, 9));
        assert_eq!(random_digraph(4, 0.0, 1).m(), 0);
        assert_eq!(random_digraph(4, 1.0, 1).m(), 12);
    }
}
