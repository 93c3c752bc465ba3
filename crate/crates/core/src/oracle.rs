//! Slow reference computations and seeded instance generators used by the
//! `verify` runner. Everything here is exhaustive and only meant for small inputs.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::Rng;

use crate::graph::Graph;
use crate::kset::{Family, KSet};
use crate::pattern::PatternGraph;

/// `C(n,k)` from Pascal's rule, zero outside `0 <= k <= n`.
pub fn pascal(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::from(0);
    }
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::from(1));
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::from(1));
        row = next;
    }
    row[k as usize].clone()
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order
/// until it returns `true`.
pub fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if size > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Whether the graph minus `removed` has `t` pairwise adjacent vertices.
pub fn has_clique_outside(g: &Graph, t: usize, removed: &[usize]) -> bool {
    let alive: Vec<usize> = (0..g.order()).filter(|v| !removed.contains(v)).collect();
    for_each_subset(alive.len(), t, |pick| {
        pick.iter().enumerate().all(|(i, &a)| {
            pick[i + 1..]
                .iter()
                .all(|&b| g.has_edge(alive[a], alive[b]))
        })
    })
}

/// Smallest vertex set meeting every `t`-clique, by increasing size; the set
/// returned is the lexicographically first of that size.
pub fn min_clique_hitting_brute(g: &Graph, t: usize) -> (usize, Vec<usize>) {
    for size in 0..=g.order() {
        let mut found = None;
        for_each_subset(g.order(), size, |pick| {
            if has_clique_outside(g, t, pick) {
                false
            } else {
                found = Some(pick.to_vec());
                true
            }
        });
        if let Some(cover) = found {
            return (size, cover);
        }
    }
    unreachable!("removing every vertex leaves no clique")
}

/// `(χ, η)` by trying every map to `c = 1, 2, ...` colours.
pub fn chromatic_brute(p: &PatternGraph) -> (usize, usize) {
    let n = p.order();
    for c in 1..=n {
        let mut best: Option<usize> = None;
        let mut colors = vec![0usize; n];
        loop {
            if p.edges().iter().all(|&(u, v)| colors[u] != colors[v]) {
                let mut sizes = vec![0usize; c];
                for &col in &colors {
                    sizes[col] += 1;
                }
                if !sizes.contains(&0) {
                    let m = *sizes.iter().min().expect("c >= 1");
                    best = Some(best.map_or(m, |b| b.min(m)));
                }
            }
            // Next colouring, odometer style.
            let Some(i) = (0..n).find(|&i| colors[i] + 1 < c) else {
                break;
            };
            colors[i] += 1;
            colors[..i].fill(0);
        }
        if let Some(eta) = best {
            return (c, eta);
        }
    }
    (0, 0)
}

pub fn random_graph<R: Rng>(rng: &mut R, order: usize, density: f64) -> Graph {
    let mut g = Graph::empty(order);
    for u in 0..order {
        for v in u + 1..order {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A pattern with `1..=max_order` vertices and no isolated vertices when it has at least two.
pub fn random_pattern<R: Rng>(rng: &mut R, max_order: usize) -> PatternGraph {
    let order = rng.gen_range(1..=max_order);
    let mut edges = Vec::new();
    for u in 0..order {
        for v in u + 1..order {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    for v in 0..order {
        if order > 1 && !edges.iter().any(|&(a, b)| a == v || b == v) {
            let mut u = rng.gen_range(0..order - 1);
            if u >= v {
                u += 1;
            }
            edges.push((u.min(v), u.max(v)));
        }
    }
    PatternGraph::from_edges(order, &edges).expect("edges are in range")
}

/// `size` distinct members of `C([n], k)` chosen uniformly.
pub fn random_family<R: Rng>(rng: &mut R, n: usize, k: usize, size: usize) -> Family {
    let all = Family::complete(n, k).expect("valid parameters");
    let size = size.min(all.len());
    let members: Vec<KSet> = sample(rng, all.len(), size)
        .into_iter()
        .map(|i| all.members()[i])
        .collect();
    Family::new(n, k, members).expect("distinct members")
}
