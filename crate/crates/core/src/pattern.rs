//! Forbidden graphs `F`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Patterns are kept in `u64` adjacency masks.
pub const MAX_PATTERN_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    Clique(usize),
    CompleteMultipartite(Vec<usize>),
    /// Cycle on the given (even) number of vertices.
    EvenCycle(usize),
    /// Path on the given number of vertices.
    Path(usize),
    /// `K_{1,l}`.
    Star(usize),
    Arbitrary,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternGraph {
    order: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
    kind: PatternKind,
}

impl PatternGraph {
    /// Arbitrary pattern; rejects self-loops, repeated edges and out-of-range endpoints.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        PatternGraph::build(order, edges, PatternKind::Arbitrary)
    }

    fn build(order: usize, edges: &[(usize, usize)], kind: PatternKind) -> Result<Self> {
        if order > MAX_PATTERN_ORDER {
            return Err(Error::PatternTooLarge {
                order,
                max: MAX_PATTERN_ORDER,
            });
        }
        let mut adj = vec![0u64; order];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::InvalidPattern(format!(
                    "edge ({u},{v}) outside vertex range 0..{order}"
                )));
            }
            if u == v {
                return Err(Error::InvalidPattern(format!("self-loop at {u}")));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(Error::InvalidPattern(format!("repeated edge ({u},{v})")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        Ok(PatternGraph {
            order,
            edges: normalized,
            adj,
            kind,
        })
    }

    pub fn clique(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidPattern(
                "clique needs at least one vertex".into(),
            ));
        }
        let mut edges = Vec::new();
        for u in 0..s {
            for v in u + 1..s {
                edges.push((u, v));
            }
        }
        PatternGraph::build(s, &edges, PatternKind::Clique(s))
    }

    /// `K_{s_1,...,s_m}` with part `i` on consecutive vertices.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPattern(
                "multipartite parts must be non-empty and positive".into(),
            ));
        }
        let mut part_of = Vec::new();
        for (i, &p) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat(i).take(p));
        }
        let order = part_of.len();
        let mut edges = Vec::new();
        for u in 0..order {
            for v in u + 1..order {
                if part_of[u] != part_of[v] {
                    edges.push((u, v));
                }
            }
        }
        PatternGraph::build(
            order,
            &edges,
            PatternKind::CompleteMultipartite(parts.to_vec()),
        )
    }

    /// `C_len`, `len` even and at least 4.
    pub fn even_cycle(len: usize) -> Result<Self> {
        if len < 4 || len % 2 != 0 {
            return Err(Error::InvalidPattern(format!(
                "even cycle length must be even and >= 4, got {len}"
            )));
        }
        let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        PatternGraph::build(len, &edges, PatternKind::EvenCycle(len))
    }

    /// Path on `m` vertices.
    pub fn path(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPattern(
                "path needs at least one vertex".into(),
            ));
        }
        let edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        PatternGraph::build(m, &edges, PatternKind::Path(m))
    }

    /// `K_{1,l}` with centre 0.
    pub fn star(l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidPattern("star needs at least one leaf".into()));
        }
        let edges: Vec<_> = (1..=l).map(|i| (0, i)).collect();
        PatternGraph::build(l + 1, &edges, PatternKind::Star(l))
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        PatternGraph::from_edges(g.order(), &g.edges())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn kind(&self) -> &PatternKind {
        &self.kind
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bit mask.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.order, &self.edges)
    }

    /// Subgraph induced on the vertices of `mask`, relabelled in ascending order.
    pub fn induced(&self, mask: u64) -> PatternGraph {
        let verts: Vec<usize> = (0..self.order).filter(|&v| mask >> v & 1 == 1).collect();
        let mut edges = Vec::new();
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        PatternGraph::build(verts.len(), &edges, PatternKind::Arbitrary)
            .expect("induced subgraph of a valid pattern is valid")
    }

    /// Sorted degree sequence, an isomorphism invariant.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PatternKind::Clique(s) => write!(f, "K{s}"),
            PatternKind::CompleteMultipartite(parts) => {
                let p: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "K{{{}}}", p.join(","))
            }
            PatternKind::EvenCycle(len) => write!(f, "C{len}"),
            PatternKind::Path(m) => write!(f, "P_{m}"),
            PatternKind::Star(l) => write!(f, "K1_{l}"),
            PatternKind::Arbitrary => {
                let e: Vec<[usize; 2]> = self.edges.iter().map(|&(u, v)| [u, v]).collect();
                write!(
                    f,
                    "edges:{}",
                    serde_json::to_string(&e).expect("edges serialize")
                )
            }
        }
    }
}

fn parse_count(s: &str, literal: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidPattern(format!("bad number `{s}` in `{literal}`")))
}

impl FromStr for PatternGraph {
    type Err = Error;

    /// Literals: `Ks`, `K{s,t}`, `K{s1,s2,...}`, `C2s`, `P_m`, `K1_l`,
    /// or `edges:[[0,1],[1,2],...]`.
    fn from_str(literal: &str) -> Result<Self> {
        let s = literal.trim();
        if let Some(json) = s.strip_prefix("edges:") {
            let edges: Vec<[usize; 2]> = serde_json::from_str(json)
                .map_err(|e| Error::InvalidPattern(format!("bad edge list: {e}")))?;
            let order = edges.iter().flatten().max().map_or(0, |m| m + 1);
            let pairs: Vec<_> = edges.iter().map(|e| (e[0], e[1])).collect();
            return PatternGraph::from_edges(order, &pairs);
        }
        if let Some(inner) = s.strip_prefix("K{").and_then(|r| r.strip_suffix('}')) {
            let parts = inner
                .split(',')
                .map(|p| parse_count(p.trim(), literal))
                .collect::<Result<Vec<_>>>()?;
            return PatternGraph::complete_multipartite(&parts);
        }
        if let Some(leaves) = s.strip_prefix("K1_") {
            return PatternGraph::star(parse_count(leaves, literal)?);
        }
        if let Some(size) = s.strip_prefix('K') {
            return PatternGraph::clique(parse_count(size, literal)?);
        }
        if let Some(len) = s.strip_prefix('C') {
            return PatternGraph::even_cycle(parse_count(len, literal)?);
        }
        if let Some(m) = s.strip_prefix("P_").or_else(|| s.strip_prefix('P')) {
            return PatternGraph::path(parse_count(m, literal)?);
        }
        Err(Error::InvalidPattern(format!(
            "unrecognized pattern literal `{literal}`"
        )))
    }
}
