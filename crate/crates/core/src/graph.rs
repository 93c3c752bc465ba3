//! Simple undirected graphs with bitset adjacency, and the disjointness
//! graph induced on a family.

use std::ops::Deref;

use fixedbitset::FixedBitSet;

use crate::kset::{Family, KSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(order: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(order); order],
            degrees: vec![0; order],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list; self-loops and repeated edges are ignored.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(order);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.adj[u].contains(v) {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.edge_count += 1;
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.order() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

/// `K(n,k)[family]`: vertex `i` is the `i`-th member in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGraph {
    graph: Graph,
    labels: Vec<KSet>,
}

impl InducedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[KSet] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> KSet {
        self.labels[v]
    }
}

impl Deref for InducedGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

pub fn induced_kneser_graph(family: &Family) -> InducedGraph {
    let labels = family.members().to_vec();
    let mut graph = Graph::empty(labels.len());
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate().skip(i + 1) {
            if a.is_disjoint(b) {
                graph.add_edge(i, j);
            }
        }
    }
    InducedGraph { graph, labels }
}
