//! Circle model built from a directed Hamiltonian path instance, with a
//! structural validator and witness conversion in both directions.
//!
//! Vertices are `1..=n`; the path must start at 1 and end at `n`. The model
//! has a paired-dominating set of size `2n² + 2n − 2` exactly when the
//! digraph has such a path.
//!
//! Type-e chords exist for every edge and every layer `1 ≤ j < n`, so there
//! are `(n − 1)m` of them and `5n² + 4n − 4 + (n − 1)m` chords in total.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::error::ParseError;
use crate::geom::io::content_lines;
use crate::geom::{build_adjacency, ChordId, ChordModel, Position, UndirectedGraph};
use crate::matching::perfect_matching_on;
use crate::oracles::{is_hamiltonian_path, is_paired_dominating_set, Digraph};

/// Typed chord names. Indices are 1-based; `E { x, y, j }` belongs to the
/// edge `(x, y)` and layer `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChordName {
    L { i: usize, j: usize },
    C { i: usize, j: usize },
    R { i: usize, j: usize },
    E { x: usize, y: usize, j: usize },
    F { j: usize },
    FPrime { j: usize },
    A { i: usize },
    APrime { i: usize },
    B { i: usize, j: usize },
    BPrime { i: usize, j: usize },
}

/// Chord families, in the order used for count reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChordType {
    L,
    R,
    C,
    E,
    F,
    FPrime,
    B,
    BPrime,
    A,
    APrime,
}

impl ChordType {
    pub const ALL: [ChordType; 10] = [
        ChordType::L,
        ChordType::R,
        ChordType::C,
        ChordType::E,
        ChordType::F,
        ChordType::FPrime,
        ChordType::B,
        ChordType::BPrime,
        ChordType::A,
        ChordType::APrime,
    ];

    /// Number of chords of this type for a digraph with `n` vertices and `m` edges.
    pub fn expected_count(self, n: usize, m: usize) -> usize {
        match self {
            ChordType::L | ChordType::R => n * n - 1,
            ChordType::C | ChordType::B | ChordType::BPrime => n * n,
            ChordType::E => (n - 1) * m,
            ChordType::F | ChordType::FPrime => n - 1,
            ChordType::A | ChordType::APrime => n,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ChordType::L => "l",
            ChordType::R => "r",
            ChordType::C => "c",
            ChordType::E => "e",
            ChordType::F => "f",
            ChordType::FPrime => "f'",
            ChordType::B => "b",
            ChordType::BPrime => "b'",
            ChordType::A => "a",
            ChordType::APrime => "a'",
        }
    }
}

impl ChordName {
    pub fn chord_type(&self) -> ChordType {
        match self {
            ChordName::L { .. } => ChordType::L,
            ChordName::C { .. } => ChordType::C,
            ChordName::R { .. } => ChordType::R,
            ChordName::E { .. } => ChordType::E,
            ChordName::F { .. } => ChordType::F,
            ChordName::FPrime { .. } => ChordType::FPrime,
            ChordName::A { .. } => ChordType::A,
            ChordName::APrime { .. } => ChordType::APrime,
            ChordName::B { .. } => ChordType::B,
            ChordName::BPrime { .. } => ChordType::BPrime,
        }
    }
}

impl fmt::Display for ChordName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ChordName::L { i, j } => write!(f, "l_{i}^{j}"),
            ChordName::C { i, j } => write!(f, "c_{i}^{j}"),
            ChordName::R { i, j } => write!(f, "r_{i}^{j}"),
            ChordName::E { x, y, j } => write!(f, "e_{x},{y}^{j}"),
            ChordName::F { j } => write!(f, "f^{j}"),
            ChordName::FPrime { j } => write!(f, "f'^{j}"),
            ChordName::A { i } => write!(f, "a_{i}"),
            ChordName::APrime { i } => write!(f, "a'_{i}"),
            ChordName::B { i, j } => write!(f, "b_{i}^{j}"),
            ChordName::BPrime { i, j } => write!(f, "b'_{i}^{j}"),
        }
    }
}

impl FromStr for ChordName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unrecognised chord name `{s}`");
        let (head, sup) = match s.split_once('^') {
            Some((h, j)) => (h, Some(j.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let (kind, sub) = match head.split_once('_') {
            Some((k, rest)) => (k, Some(rest)),
            None => (head, None),
        };
        let one = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let name = match (kind, sub, sup) {
            ("l", Some(i), Some(j)) => ChordName::L { i: one(i)?, j },
            ("c", Some(i), Some(j)) => ChordName::C { i: one(i)?, j },
            ("r", Some(i), Some(j)) => ChordName::R { i: one(i)?, j },
            ("b", Some(i), Some(j)) => ChordName::B { i: one(i)?, j },
            ("b'", Some(i), Some(j)) => ChordName::BPrime { i: one(i)?, j },
            ("e", Some(xy), Some(j)) => {
                let (x, y) = xy.split_once(',').ok_or_else(bad)?;
                ChordName::E {
                    x: one(x)?,
                    y: one(y)?,
                    j,
                }
            }
            ("f", None, Some(j)) => ChordName::F { j },
            ("f'", None, Some(j)) => ChordName::FPrime { j },
            ("a", Some(i), None) => ChordName::A { i: one(i)? },
            ("a'", Some(i), None) => ChordName::APrime { i: one(i)? },
            _ => return Err(bad()),
        };
        Ok(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reduction needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("not a Hamiltonian path from 1 to n: {0:?}")]
    InvalidPath(Vec<usize>),
    #[error("not a target-size PDS: {0}")]
    NotTargetSizePds(String),
    #[error("extraction failed: {0}")]
    ExtractionFailed(String),
}

/// The constructed circle model with its name table.
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    digraph: Digraph,
    model: ChordModel,
    names: Vec<ChordName>,
    ids: HashMap<ChordName, ChordId>,
}

impl ReductionArtifact {
    /// Assembles an artifact without checking it; `names[id]` names chord `id`.
    /// Use [`validate_reduction`] to inspect the result.
    pub fn from_parts(digraph: Digraph, model: ChordModel, names: Vec<ChordName>) -> Self {
        let ids = names.iter().enumerate().map(|(id, &nm)| (nm, id)).collect();
        ReductionArtifact {
            digraph,
            model,
            names,
            ids,
        }
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn model(&self) -> &ChordModel {
        &self.model
    }

    pub fn names(&self) -> &[ChordName] {
        &self.names
    }

    pub fn name(&self, id: ChordId) -> ChordName {
        self.names[id]
    }

    pub fn id(&self, name: ChordName) -> Option<ChordId> {
        self.ids.get(&name).copied()
    }

    pub fn graph(&self) -> UndirectedGraph {
        build_adjacency(&self.model).with_labels(self.names.iter().map(|n| n.to_string()).collect())
    }

    /// `2n² + 2n − 2`.
    pub fn target_size(&self) -> usize {
        let n = self.digraph.n();
        2 * n * n + 2 * n - 2
    }

    /// `5n² + 4n − 4 + (n − 1)m`.
    pub fn expected_chord_count(&self) -> usize {
        let (n, m) = (self.digraph.n(), self.digraph.m());
        5 * n * n + 4 * n - 4 + (n - 1) * m
    }

    fn must(&self, name: ChordName) -> ChordId {
        self.ids[&name]
    }
}

fn cell_tokens(d: &Digraph, incoming: &[Vec<usize>], i: usize, j: usize, out: &mut Vec<ChordName>) {
    let n = d.n();
    let has_l = !(i == 1 && j == 1);
    let has_r = !(i == n && j == n);
    if has_l {
        out.push(ChordName::L { i, j });
        if j >= 2 {
            for &x in &incoming[i] {
                out.push(ChordName::E { x, y: i, j: j - 1 });
            }
        }
    }
    out.push(ChordName::C { i, j });
    if has_l {
        out.push(ChordName::L { i, j });
    }
    out.push(ChordName::B { i, j });
    if has_r {
        out.push(ChordName::R { i, j });
    }
    out.push(ChordName::C { i, j });
    if j < n {
        for &y in d.successors(i) {
            out.push(ChordName::E { x: i, y, j });
        }
    }
    if has_r {
        out.push(ChordName::R { i, j });
    }
}

/// Builds the circle model. Endpoints are laid out counterclockwise as: the
/// f-start region (for `j = n−1..1`: `f'^j`, `f^j`, `f'^j`), the cells
/// `(i, j)` block by block with `f^j` closing after block `j`, and finally
/// the a/b region. Chord ids follow the order of first endpoints.
pub fn build_reduction(d: &Digraph) -> Result<ReductionArtifact, ReductionError> {
    let n = d.n();
    if n < 2 {
        return Err(ReductionError::TooFewVertices(n));
    }
    let mut incoming = vec![Vec::new(); n + 1];
    for x in 1..=n {
        for &y in d.successors(x) {
            incoming[y].push(x);
        }
    }

    let mut tokens = Vec::new();
    for j in (1..n).rev() {
        tokens.extend([
            ChordName::FPrime { j },
            ChordName::F { j },
            ChordName::FPrime { j },
        ]);
    }
    for j in 1..=n {
        for i in 1..=n {
            cell_tokens(d, &incoming, i, j, &mut tokens);
        }
        if j < n {
            tokens.push(ChordName::F { j });
        }
    }
    for i in 1..=n {
        tokens.extend([
            ChordName::APrime { i },
            ChordName::A { i },
            ChordName::APrime { i },
        ]);
        for j in 1..=n {
            tokens.extend([
                ChordName::BPrime { i, j },
                ChordName::B { i, j },
                ChordName::BPrime { i, j },
            ]);
        }
        tokens.push(ChordName::A { i });
    }

    let mut first: HashMap<ChordName, usize> = HashMap::new();
    let mut names = Vec::new();
    let mut pairs: Vec<(Position, Position)> = Vec::new();
    for (t, &name) in tokens.iter().enumerate() {
        let pos = (t + 1) as Position;
        match first.get(&name) {
            Some(&id) => pairs[id].1 = pos,
            None => {
                first.insert(name, names.len());
                names.push(name);
                pairs.push((pos, 0));
            }
        }
    }
    let model = ChordModel::circle(&pairs).expect("layout places every chord twice");
    Ok(ReductionArtifact::from_parts(d.clone(), model, names))
}

/// One failed structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// `"count"`, `"names"`, or one of the adjacency checks `"a"`..`"h"`.
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.check, self.detail)
    }
}

struct Checker<'a> {
    art: &'a ReductionArtifact,
    g: UndirectedGraph,
    out: Vec<Violation>,
}

impl Checker<'_> {
    fn report(&mut self, check: &'static str, detail: String) {
        self.out.push(Violation { check, detail });
    }

    fn crosses(&self, a: ChordName, b: ChordName) -> Option<bool> {
        Some(self.g.has_edge(self.art.id(a)?, self.art.id(b)?))
    }

    fn require(&mut self, check: &'static str, a: ChordName, b: ChordName, want: bool) {
        if let Some(got) = self.crosses(a, b) {
            if got != want {
                let verb = if want { "must cross" } else { "must not cross" };
                self.report(check, format!("{a} {verb} {b}"));
            }
        }
    }

    fn exact(&mut self, check: &'static str, a: ChordName, expected: &[ChordName]) {
        let Some(id) = self.art.id(a) else { return };
        let mut got: Vec<ChordName> = self.g.neighbors(id).map(|v| self.art.name(v)).collect();
        let mut want = expected.to_vec();
        got.sort();
        want.sort();
        if got != want {
            let list = |v: &[ChordName]| {
                v.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            self.report(
                check,
                format!(
                    "{a} crosses {{{}}}, expected {{{}}}",
                    list(&got),
                    list(&want)
                ),
            );
        }
    }
}

/// Checks chord counts, the name table and the required crossing pattern.
/// An empty result means the artifact passes.
pub fn validate_reduction(art: &ReductionArtifact) -> Vec<Violation> {
    let (n, m) = (art.digraph.n(), art.digraph.m());
    let mut ck = Checker {
        art,
        g: build_adjacency(&art.model),
        out: Vec::new(),
    };

    if art.names.len() != art.model.m() {
        ck.report(
            "names",
            format!("{} names for {} chords", art.names.len(), art.model.m()),
        );
        return ck.out;
    }
    if art.ids.len() != art.names.len() {
        ck.report("names", "duplicate chord names".to_string());
    }
    if art.model.m() != art.expected_chord_count() {
        ck.report(
            "count",
            format!(
                "{} chords, expected {}",
                art.model.m(),
                art.expected_chord_count()
            ),
        );
    }
    for t in ChordType::ALL {
        let got = art.names.iter().filter(|nm| nm.chord_type() == t).count();
        let want = t.expected_count(n, m);
        if got != want {
            ck.report(
                "count",
                format!("{got} type-{} chords, expected {want}", t.symbol()),
            );
        }
    }

    let cells = || (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)));
    let has_l = |i: usize, j: usize| !(i == 1 && j == 1);
    let has_r = |i: usize, j: usize| !(i == n && j == n);

    let mut lr = Vec::new();
    for (i, j) in cells() {
        if has_l(i, j) {
            lr.push(ChordName::L { i, j });
        }
        if has_r(i, j) {
            lr.push(ChordName::R { i, j });
        }
    }
    for (s, &a) in lr.iter().enumerate() {
        for &b in &lr[s + 1..] {
            ck.require("a", a, b, false);
        }
    }

    for (i, j) in cells() {
        let c = ChordName::C { i, j };
        if has_l(i, j) {
            ck.require("b", c, ChordName::L { i, j }, true);
        }
        if has_r(i, j) {
            ck.require("b", c, ChordName::R { i, j }, true);
        }
    }

    for j in 1..n {
        for &(x, y) in art.digraph.edges() {
            let e = ChordName::E { x, y, j };
            ck.require("c", e, ChordName::R { i: x, j }, true);
            ck.require("c", e, ChordName::L { i: y, j: j + 1 }, true);
            ck.require("c", e, ChordName::F { j }, true);
        }
    }

    for a in 1..n {
        for b in a + 1..n {
            ck.require("d", ChordName::F { j: a }, ChordName::F { j: b }, false);
        }
    }

    for j in 1..n {
        ck.exact("e", ChordName::FPrime { j }, &[ChordName::F { j }]);
    }

    for (i, j) in cells() {
        let b = ChordName::B { i, j };
        ck.require("f", b, ChordName::C { i, j }, true);
        if has_l(i, j) {
            ck.require("f", b, ChordName::L { i, j }, false);
        }
        if has_r(i, j) {
            ck.require("f", b, ChordName::R { i, j }, false);
        }
    }

    for i in 1..=n {
        let mut want: Vec<ChordName> = (1..=n).map(|j| ChordName::B { i, j }).collect();
        want.push(ChordName::APrime { i });
        ck.exact("g", ChordName::A { i }, &want);
    }

    for i in 1..=n {
        ck.exact("h", ChordName::APrime { i }, &[ChordName::A { i }]);
        for j in 1..=n {
            ck.exact("h", ChordName::BPrime { i, j }, &[ChordName::B { i, j }]);
        }
    }
    ck.out
}

/// Paired-dominating set of target size built from a Hamiltonian path
/// `path` (vertex sequence starting at 1 and ending at `n`). Ids are sorted.
pub fn pds_from_ham_path(
    art: &ReductionArtifact,
    path: &[usize],
) -> Result<Vec<ChordId>, ReductionError> {
    let d = &art.digraph;
    if !is_hamiltonian_path(d, path) {
        return Err(ReductionError::InvalidPath(path.to_vec()));
    }
    let n = d.n();
    // place[v] = 1-based index of vertex v along the path
    let mut place = vec![0; n + 1];
    for (t, &v) in path.iter().enumerate() {
        place[v] = t + 1;
    }
    let mut set = Vec::with_capacity(art.target_size());
    for (i, &slot) in place.iter().enumerate().skip(1) {
        set.push(art.must(ChordName::A { i }));
        for j in 1..=n {
            set.push(art.must(ChordName::B { i, j }));
            if j != slot {
                set.push(art.must(ChordName::C { i, j }));
            }
        }
    }
    for j in 1..n {
        set.push(art.must(ChordName::F { j }));
        set.push(art.must(ChordName::E {
            x: path[j - 1],
            y: path[j],
            j,
        }));
    }
    set.sort_unstable();
    Ok(set)
}

/// Recovers a Hamiltonian path from a target-size paired-dominating set by
/// reading which `b` chord each `a_i` is matched with.
pub fn ham_path_from_pds(
    art: &ReductionArtifact,
    set: &[ChordId],
) -> Result<Vec<usize>, ReductionError> {
    let g = build_adjacency(&art.model);
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != set.len() || set.iter().any(|&c| c >= g.n()) {
        return Err(ReductionError::NotTargetSizePds(
            "ids must be distinct chords".into(),
        ));
    }
    if set.len() != art.target_size() {
        return Err(ReductionError::NotTargetSizePds(format!(
            "size {} instead of {}",
            set.len(),
            art.target_size()
        )));
    }
    if !is_paired_dominating_set(&g, set) {
        return Err(ReductionError::NotTargetSizePds(
            "set is not paired-dominating".into(),
        ));
    }
    let matching = perfect_matching_on(&g, set)
        .ok_or_else(|| ReductionError::ExtractionFailed("no perfect matching".into()))?;

    let n = art.digraph.n();
    let mut vertex_at = vec![0; n + 1];
    for i in 1..=n {
        let a = art.must(ChordName::A { i });
        let partner = matching
            .partner(a)
            .ok_or_else(|| ReductionError::ExtractionFailed(format!("a_{i} is not in the set")))?;
        let slot = match art.name(partner) {
            ChordName::B { i: bi, j } if bi == i => j,
            other => {
                return Err(ReductionError::ExtractionFailed(format!(
                    "a_{i} is matched with {other}"
                )))
            }
        };
        if vertex_at[slot] != 0 {
            return Err(ReductionError::ExtractionFailed(format!(
                "two a chords matched into slot {slot}"
            )));
        }
        vertex_at[slot] = i;
    }
    let path = vertex_at[1..].to_vec();
    if !is_hamiltonian_path(&art.digraph, &path) {
        return Err(ReductionError::ExtractionFailed(format!(
            "recovered order {path:?} is not a Hamiltonian path"
        )));
    }
    Ok(path)
}

/// Sidecar name table: `names v1`, then `<name> <id>` per chord in id order.
pub fn serialize_names(art: &ReductionArtifact) -> String {
    let mut out = String::from("names v1\n");
    for (id, name) in art.names.iter().enumerate() {
        let _ = writeln!(out, "{name} {id}");
    }
    out
}

/// Parses a name table; ids must be exactly `0..count` in any order.
pub fn parse_names(text: &str) -> Result<Vec<ChordName>, ParseError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "names v1")) => {}
        Some((l, h)) => {
            return Err(ParseError::new(
                l,
                format!("malformed header `{h}`, expected `names v1`"),
            ))
        }
        None => return Err(ParseError::new(1, "empty names file")),
    }
    let mut slots: Vec<Option<ChordName>> = Vec::new();
    for (l, body) in lines {
        let mut parts = body.split_whitespace();
        let (Some(name), Some(id), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::new(l, "expected `<name> <id>`"));
        };
        let name: ChordName = name.parse().map_err(|e: String| ParseError::new(l, e))?;
        let id: usize = id
            .parse()
            .map_err(|_| ParseError::new(l, format!("invalid chord id `{id}`")))?;
        if slots.len() <= id {
            slots.resize(id + 1, None);
        }
        if slots[id].replace(name).is_some() {
            return Err(ParseError::new(l, format!("duplicate chord id {id}")));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(id, s)| s.ok_or_else(|| ParseError::new(0, format!("no name for chord id {id}"))))
        .collect()
}
