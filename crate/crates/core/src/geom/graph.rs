use crate::bitset::BitSet;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        UndirectedGraph {
            adj: vec![BitSet::new(n); n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = UndirectedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds the edge `{u, v}`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Open neighborhood of `v` as a bitset.
    pub fn neighbor_set(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }

    /// Closed neighborhood `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> BitSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// Closed neighborhood of a vertex set.
    pub fn closed_neighborhood_of(&self, vs: impl IntoIterator<Item = usize>) -> BitSet {
        let mut s = BitSet::new(self.n());
        for v in vs {
            s.union_with(&self.adj[v]);
            s.insert(v);
        }
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Subgraph induced on `vs` (sorted, deduplicated); vertex `t` of the result
    /// corresponds to the `t`-th element of `vs`.
    pub fn induced(&self, vs: &[usize]) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(vs.len());
        for (a, &u) in vs.iter().enumerate() {
            for (b, &v) in vs.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}
