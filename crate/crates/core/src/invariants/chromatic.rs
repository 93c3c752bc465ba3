//! Chromatic number, minimum colour-class size and the bipartite classes
//! `B_F`, `B_{F,η}` of small patterns, by dynamic programming over vertex subsets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::PatternGraph;
use crate::subgraph::Matcher;

/// Exhaustive computations are limited to this many pattern vertices.
pub const MAX_PROFILE_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticProfile {
    pub chi: usize,
    pub eta: usize,
    /// Colour of each vertex; colour 0 is a smallest class.
    pub coloring: Vec<usize>,
}

/// χ of every induced subgraph, plus one optimal first class per subset.
struct SubsetTable {
    full: usize,
    independent: Vec<bool>,
    chi: Vec<u8>,
    choice: Vec<u16>,
}

impl SubsetTable {
    fn new(p: &PatternGraph) -> Result<SubsetTable> {
        let n = p.order();
        if n > MAX_PROFILE_ORDER {
            return Err(Error::PatternTooLarge {
                order: n,
                max: MAX_PROFILE_ORDER,
            });
        }
        let size = 1usize << n;
        let mut independent = vec![true; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            independent[mask] = independent[rest] && (p.neighbor_mask(low) as usize & rest) == 0;
        }
        let mut chi = vec![0u8; size];
        let mut choice = vec![0u16; size];
        for mask in 1..size {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            let mut best = u8::MAX;
            let mut best_class = 0;
            // Every submask of `rest`, with the lowest vertex always in the class.
            let mut sub = rest;
            loop {
                let class = sub | low;
                if independent[class] {
                    let c = chi[mask ^ class] + 1;
                    if c < best || (c == best && class < best_class) {
                        best = c;
                        best_class = class;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            chi[mask] = best;
            choice[mask] = best_class as u16;
        }
        Ok(SubsetTable {
            full: size - 1,
            independent,
            chi,
            choice,
        })
    }

    fn chi(&self, mask: usize) -> usize {
        self.chi[mask] as usize
    }
}

pub fn chromatic_profile(p: &PatternGraph) -> Result<ChromaticProfile> {
    let table = SubsetTable::new(p)?;
    let full = table.full;
    let chi = table.chi(full);
    if chi == 0 {
        return Ok(ChromaticProfile {
            chi: 0,
            eta: 0,
            coloring: Vec::new(),
        });
    }
    // A smallest class I: independent, with the rest (χ-1)-colourable.
    let first = (1..=full)
        .filter(|&m| table.independent[m] && table.chi(full ^ m) == chi - 1)
        .min_by_key(|&m| (m.count_ones(), m))
        .expect("an optimal colouring has a class");
    let mut coloring = vec![0; p.order()];
    let mut rest = full ^ first;
    let mut colour = 1;
    while rest != 0 {
        let class = table.choice[rest] as usize;
        for (v, c) in coloring.iter_mut().enumerate() {
            if class >> v & 1 == 1 {
                *c = colour;
            }
        }
        rest ^= class;
        colour += 1;
    }
    Ok(ChromaticProfile {
        chi,
        eta: first.count_ones() as usize,
        coloring,
    })
}

pub fn is_isomorphic(a: &PatternGraph, b: &PatternGraph) -> bool {
    if a.order() != b.order()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return false;
    }
    // Equal order and size: an injective edge-preserving map is a bijection on edges.
    Matcher::new(a).find(&b.to_graph(), None).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteClasses {
    /// `B_F`, one representative per isomorphism class.
    pub all: Vec<PatternGraph>,
    /// `B_{F,η}`: members of `all` with `η(B) = η(F)`.
    pub eta_matched: Vec<PatternGraph>,
}

/// Bipartite `F[U]` over subsets `U` with `χ(F - U) = χ(F) - 2`, deduplicated
/// up to isomorphism and listed in order of first occurrence by subset mask.
pub fn bipartite_classes(p: &PatternGraph) -> Result<BipartiteClasses> {
    let table = SubsetTable::new(p)?;
    let full = table.full;
    let chi = table.chi(full);
    if chi < 3 {
        return Err(Error::ChromaticTooSmall(chi));
    }
    let eta = chromatic_profile(p)?.eta;
    let mut all: Vec<PatternGraph> = Vec::new();
    for mask in 1..=full {
        if table.chi(mask) > 2 || table.chi(full ^ mask) != chi - 2 {
            continue;
        }
        let b = p.induced(mask as u64);
        if !all.iter().any(|seen| is_isomorphic(seen, &b)) {
            all.push(b);
        }
    }
    let mut eta_matched = Vec::new();
    for b in &all {
        if chromatic_profile(b)?.eta == eta {
            eta_matched.push(b.clone());
        }
    }
    Ok(BipartiteClasses { all, eta_matched })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent check: enumerate every map V -> [c] and keep proper ones.
    fn brute_profile(p: &PatternGraph) -> (usize, usize) {
        let n = p.order();
        for c in 1..=n {
            let mut best: Option<usize> = None;
            let total = c.pow(n as u32);
            for code in 0..total {
                let mut x = code;
                let colors: Vec<usize> = (0..n)
                    .map(|_| {
                        let col = x % c;
                        x /= c;
                        col
                    })
                    .collect();
                if p.edges().iter().any(|&(u, v)| colors[u] == colors[v]) {
                    continue;
                }
                let mut sizes = vec![0; c];
                for &col in &colors {
                    sizes[col] += 1;
                }
                if sizes.contains(&0) {
                    continue;
                }
                let m = *sizes.iter().min().unwrap();
                best = Some(best.map_or(m, |b: usize| b.min(m)));
            }
            if let Some(eta) = best {
                return (c, eta);
            }
        }
        (0, 0)
    }

    fn check_coloring(p: &PatternGraph, prof: &ChromaticProfile) {
        assert!(p
            .edges()
            .iter()
            .all(|&(u, v)| prof.coloring[u] != prof.coloring[v]));
        let mut sizes = vec![0; prof.chi];
        for &c in &prof.coloring {
            sizes[c] += 1;
        }
        assert!(sizes.iter().all(|&s| s >= 1));
        assert_eq!(*sizes.iter().min().unwrap(), prof.eta);
        assert_eq!(sizes[0], prof.eta);
    }

    #[test]
    fn named_profiles() {
        let cases: Vec<(PatternGraph, usize, usize)> = vec![
            (PatternGraph::clique(4).unwrap(), 4, 1),
            (PatternGraph::complete_multipartite(&[2, 3]).unwrap(), 2, 2),
            (PatternGraph::even_cycle(6).unwrap(), 2, 3),
            (
                "edges:[[0,1],[1,2],[2,3],[3,4],[4,0]]".parse().unwrap(),
                3,
                1,
            ),
            (
                PatternGraph::complete_multipartite(&[3, 2, 2]).unwrap(),
                3,
                2,
            ),
        ];
        for (p, chi, eta) in cases {
            let prof = chromatic_profile(&p).unwrap();
            assert_eq!((prof.chi, prof.eta), (chi, eta), "{p}");
            assert_eq!(brute_profile(&p), (chi, eta), "{p}");
            check_coloring(&p, &prof);
        }
    }

    #[test]
    fn edgeless_pattern_is_one_class() {
        let p = PatternGraph::from_edges(3, &[]).unwrap();
        let prof = chromatic_profile(&p).unwrap();
        assert_eq!((prof.chi, prof.eta), (1, 3));
    }

    #[test]
    fn size_limit_enforced() {
        let p = PatternGraph::path(13).unwrap();
        assert!(matches!(
            chromatic_profile(&p),
            Err(Error::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn triangle_classes_are_single_edges() {
        let k3 = PatternGraph::clique(3).unwrap();
        let classes = bipartite_classes(&k3).unwrap();
        assert_eq!(classes.all.len(), 1);
        assert!(is_isomorphic(
            &classes.all[0],
            &PatternGraph::clique(2).unwrap()
        ));
    }

    #[test]
    fn bipartite_pattern_rejected() {
        let c6 = PatternGraph::even_cycle(6).unwrap();
        assert_eq!(bipartite_classes(&c6), Err(Error::ChromaticTooSmall(2)));
    }

    #[test]
    fn isomorphism_screening() {
        let a = PatternGraph::path(4).unwrap();
        let b: PatternGraph = "edges:[[2,0],[0,3],[3,1]]".parse().unwrap();
        let star = PatternGraph::star(3).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &star));
    }
}
