//! Largest pattern-free subfamilies of `K(n,k)` by branch and bound.
//!
//! Vertices are decided in canonical order (on `K(n,k)` every vertex has the
//! same degree, so this is also descending-degree order), include before
//! exclude. Including a vertex blocks every later vertex that would close a
//! copy of the pattern through both of them, so the included set stays free
//! and `size + unblocked remaining` is a valid bound. Side constraints are
//! checked at leaves. The incumbent changes only on a strictly larger family,
//! so the first optimum found, the lexicographically smallest, is reported.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::bounds::binom;
use crate::error::{Error, Result};
use crate::graph::{induced_kneser_graph, InducedGraph};
use crate::invariants::ell;
use crate::kset::{Family, KSet};
use crate::pattern::PatternGraph;
use crate::subgraph::Matcher;

pub const MAX_SEARCH_VERTICES: usize = 512;
pub const MAX_SEARCH_PATTERN: usize = 8;
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideConstraint {
    None,
    /// `ℓ_t(F) >= s`.
    MinEll {
        t: usize,
        s: usize,
    },
    /// Empty common intersection.
    NoCommonElement,
}

impl SideConstraint {
    fn holds(&self, family: &Family) -> Result<bool> {
        Ok(match *self {
            SideConstraint::None => true,
            SideConstraint::MinEll { t, s } => ell(family, t)?.value >= s,
            SideConstraint::NoCommonElement => family.common_intersection() == Some(0),
        })
    }
}

impl fmt::Display for SideConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideConstraint::None => f.write_str("none"),
            SideConstraint::MinEll { t, s } => write!(f, "min-ell {t}:{s}"),
            SideConstraint::NoCommonElement => f.write_str("no-common-element"),
        }
    }
}

/// Parses `t:s` as `MinEll`.
impl FromStr for SideConstraint {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::ParamsInfeasible(format!("expected `t:s`, got `{text}`"));
        let (t, s) = text.split_once(':').ok_or_else(bad)?;
        let t: usize = t.trim().parse().map_err(|_| bad())?;
        let s: usize = s.trim().parse().map_err(|_| bad())?;
        if t < 2 {
            return Err(Error::ParamsInfeasible(format!(
                "t must be at least 2, got {t}"
            )));
        }
        Ok(SideConstraint::MinEll { t, s })
    }
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub n: usize,
    pub k: usize,
    pub pattern: PatternGraph,
    pub side: SideConstraint,
    /// Branch-and-bound node limit.
    pub budget: u64,
}

impl SearchProblem {
    pub fn new(n: usize, k: usize, pattern: PatternGraph) -> Self {
        SearchProblem {
            n,
            k,
            pattern,
            side: SideConstraint::None,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_side(mut self, side: SideConstraint) -> Self {
        self.side = side;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn check_caps(&self) -> Result<()> {
        if self.k == 0 || self.k > self.n {
            return Err(Error::ParamsInfeasible(format!(
                "need 1 <= k <= n, got n={} k={}",
                self.n, self.k
            )));
        }
        let vertices = binom(self.n as i64, self.k as i64);
        if vertices > MAX_SEARCH_VERTICES.into() {
            return Err(Error::CapExceeded(format!(
                "C({},{}) = {vertices} exceeds {MAX_SEARCH_VERTICES}",
                self.n, self.k
            )));
        }
        let order = self.pattern.order();
        if order == 0 {
            return Err(Error::InvalidPattern(
                "pattern must have at least one vertex".into(),
            ));
        }
        if order > MAX_SEARCH_PATTERN {
            return Err(Error::CapExceeded(format!(
                "pattern order {order} exceeds {MAX_SEARCH_PATTERN}"
            )));
        }
        Ok(())
    }

    fn host(&self) -> Result<InducedGraph> {
        Ok(induced_kneser_graph(&Family::complete(self.n, self.k)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Proven,
    BudgetExhausted { lower: usize, upper: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub optimum: usize,
    pub witness: Family,
    pub status: SearchStatus,
    pub nodes: u64,
}

struct Bnb<'a> {
    host: &'a InducedGraph,
    matcher: Matcher,
    side: SideConstraint,
    isolated_ok: bool,
    budget: u64,
    nodes: u64,
    aborted: bool,
    frontier: usize,
    included: FixedBitSet,
    blocked: FixedBitSet,
    best: Option<Vec<usize>>,
}

impl Bnb<'_> {
    fn family(&self, indices: &[usize]) -> Result<Family> {
        let sets: Vec<KSet> = indices.iter().map(|&i| self.host.label(i)).collect();
        let first = self.host.label(0);
        Family::new(first.n(), first.k(), sets)
    }

    fn best_len(&self) -> Option<usize> {
        self.best.as_ref().map(Vec::len)
    }

    fn unblocked_after(&self, pos: usize) -> usize {
        let n = self.host.order();
        let mut free = FixedBitSet::with_capacity(n);
        free.insert_range(pos..);
        free.difference_with(&self.blocked);
        free.count_ones(..)
    }

    /// Would adding `w` to the included set create a copy of the pattern?
    fn closes_copy(&self, w: usize) -> bool {
        if !self.isolated_ok && self.host.neighbors(w).is_disjoint(&self.included) {
            return false;
        }
        self.matcher
            .find_through(self.host, &self.included, w)
            .is_some()
    }

    fn dfs(&mut self, pos: usize, size: usize) -> Result<()> {
        let bound = size + self.unblocked_after(pos);
        if self.best_len().is_some_and(|b| bound <= b) {
            return Ok(());
        }
        if self.aborted {
            self.frontier = self.frontier.max(bound);
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            self.frontier = self.frontier.max(bound);
            return Ok(());
        }
        let order = self.host.order();
        let next = (pos..order).find(|&v| !self.blocked.contains(v));
        let Some(v) = next else {
            let chosen: Vec<usize> = self.included.ones().collect();
            if self.side.holds(&self.family(&chosen)?)? {
                self.best = Some(chosen);
            }
            return Ok(());
        };

        self.included.insert(v);
        let mut newly = Vec::new();
        for w in v + 1..order {
            if !self.blocked.contains(w) && self.closes_copy(w) {
                self.blocked.insert(w);
                newly.push(w);
            }
        }
        let include = self.dfs(v + 1, size + 1);
        for w in newly {
            self.blocked.set(w, false);
        }
        self.included.set(v, false);
        include?;

        self.blocked.insert(v);
        let exclude = self.dfs(v + 1, size);
        self.blocked.set(v, false);
        exclude
    }
}

/// Exact maximum pattern-free family satisfying the side constraint.
pub fn max_f_free(p: &SearchProblem) -> Result<SearchOutcome> {
    p.check_caps()?;
    let host = p.host()?;
    let order = host.order();
    let isolated_ok = (0..p.pattern.order()).any(|v| p.pattern.degree(v) == 0);
    let mut bnb = Bnb {
        host: &host,
        matcher: Matcher::new(&p.pattern),
        side: p.side,
        isolated_ok,
        budget: p.budget,
        nodes: 0,
        aborted: false,
        frontier: 0,
        included: FixedBitSet::with_capacity(order),
        blocked: FixedBitSet::with_capacity(order),
        best: None,
    };
    bnb.dfs(0, 0)?;
    let best = bnb.best.clone();
    let lower = best.as_ref().map_or(0, Vec::len);
    let witness = match &best {
        Some(chosen) => bnb.family(chosen)?,
        None if !bnb.aborted => {
            return Err(Error::ParamsInfeasible(format!(
                "no {}-free family on K({},{}) satisfies {}",
                p.pattern, p.n, p.k, p.side
            )))
        }
        None => Family::empty(p.n, p.k)?,
    };
    let status = if bnb.aborted {
        SearchStatus::BudgetExhausted {
            lower,
            upper: lower.max(bnb.frontier),
        }
    } else {
        SearchStatus::Proven
    };
    Ok(SearchOutcome {
        optimum: lower,
        witness,
        status,
        nodes: bnb.nodes,
    })
}

/// Vertices of `K(n,k)` by descending degree, ties by canonical index.
pub fn degree_order(host: &InducedGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..host.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(host.degree(v)), v));
    order
}

/// Adds vertices in `order` whenever the family stays pattern-free; the
/// result cannot be extended. Vertices missing from `order` are tried last
/// in canonical order.
pub fn greedy_f_free(p: &SearchProblem, order: &[usize]) -> Result<Family> {
    p.check_caps()?;
    let host = p.host()?;
    let matcher = Matcher::new(&p.pattern);
    let n = host.order();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut sequence = Vec::with_capacity(n);
    for v in order.iter().copied().chain(0..n).filter(|&v| v < n) {
        if !seen.put(v) {
            sequence.push(v);
        }
    }
    let mut included = FixedBitSet::with_capacity(n);
    for v in sequence {
        if matcher.find_through(&host, &included, v).is_none() {
            included.insert(v);
        }
    }
    let sets: Vec<KSet> = included.ones().map(|v| host.label(v)).collect();
    Family::new(p.n, p.k, sets)
}

/// `true` when no k-set outside `family` can be added without creating a
/// copy of `pattern`.
pub fn verify_local_maximality(family: &Family, pattern: &PatternGraph) -> bool {
    let Ok(all) = Family::complete(family.n(), family.k()) else {
        return false;
    };
    let host = induced_kneser_graph(&all);
    let matcher = Matcher::new(pattern);
    let mut inside = FixedBitSet::with_capacity(host.order());
    for m in family {
        if let Some(i) = all.index_of(m) {
            inside.insert(i);
        }
    }
    (0..host.order())
        .filter(|&v| !inside.contains(v))
        .all(|v| matcher.find_through(&host, &inside, v).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{binom_usize, hm_bound};
    use crate::constructions::{gen_g6, gen_hm_star};
    use crate::subgraph::is_free;

    fn edge() -> PatternGraph {
        PatternGraph::clique(2).unwrap()
    }

    /// Every subset of `K(n,k)`, largest first.
    fn exhaustive(n: usize, k: usize, p: &PatternGraph, side: SideConstraint) -> usize {
        let all = Family::complete(n, k).unwrap();
        let m = all.len();
        assert!(m <= 20);
        let mut best = 0;
        for mask in 0u32..1 << m {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let idx: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let f = all.select(&idx);
            if is_free(&induced_kneser_graph(&f), p) && side.holds(&f).unwrap() {
                best = size;
            }
        }
        best
    }

    #[test]
    fn petersen_values() {
        let p = SearchProblem::new(5, 2, edge());
        let out = max_f_free(&p).unwrap();
        assert_eq!(out.optimum, 4);
        assert_eq!(out.status, SearchStatus::Proven);
        let stars: Vec<_> = out.witness.iter().map(|s| s.elements()).collect();
        assert_eq!(stars, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![1, 5]]);

        let out = max_f_free(&p.clone().with_side(SideConstraint::NoCommonElement)).unwrap();
        assert_eq!(out.optimum, 3);
        assert_eq!(out.witness, gen_hm_star(5, 2).unwrap());
        assert_eq!(hm_bound(5, 2).integer_value().unwrap(), &out.optimum.into());
    }

    #[test]
    fn agrees_with_exhaustive_enumeration() {
        let patterns = [
            edge(),
            PatternGraph::clique(3).unwrap(),
            PatternGraph::path(3).unwrap(),
            PatternGraph::even_cycle(4).unwrap(),
        ];
        for (n, k) in [(5, 2), (6, 2), (4, 1)] {
            if binom_usize(n as i64, k as i64) > 20 {
                continue;
            }
            for pat in &patterns {
                for side in [SideConstraint::None, SideConstraint::MinEll { t: 2, s: 1 }] {
                    let want = exhaustive(n, k, pat, side);
                    let p = SearchProblem::new(n, k, pat.clone()).with_side(side);
                    match max_f_free(&p) {
                        Ok(out) => {
                            assert_eq!(out.optimum, want, "n={n} k={k} {pat} {side}");
                            assert!(is_free(&induced_kneser_graph(&out.witness), pat));
                        }
                        Err(Error::ParamsInfeasible(_)) => assert_eq!(want, 0),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_brackets_optimum() {
        let p = SearchProblem::new(6, 2, edge()).with_budget(5);
        let out = max_f_free(&p).unwrap();
        match out.status {
            SearchStatus::BudgetExhausted { lower, upper } => {
                assert!(lower <= 5 && 5 <= upper, "{lower} {upper}");
            }
            SearchStatus::Proven => panic!("budget of 5 nodes should not suffice"),
        }
    }

    #[test]
    fn caps_enforced() {
        let p = SearchProblem::new(13, 4, edge());
        assert!(matches!(max_f_free(&p), Err(Error::CapExceeded(_))));
        let p = SearchProblem::new(5, 2, PatternGraph::path(9).unwrap());
        assert!(matches!(max_f_free(&p), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn greedy_is_maximal_and_dominated() {
        let p = SearchProblem::new(5, 2, edge());
        let host = p.host().unwrap();
        let g = greedy_f_free(&p, &degree_order(&host)).unwrap();
        assert!(g.len() >= 3);
        assert!(is_free(&induced_kneser_graph(&g), &edge()));
        assert!(verify_local_maximality(&g, &edge()));
        assert!(g.len() <= max_f_free(&p).unwrap().optimum);
        let reversed: Vec<usize> = (0..host.order()).rev().collect();
        let g = greedy_f_free(&p, &reversed).unwrap();
        assert!(verify_local_maximality(&g, &edge()));
    }

    #[test]
    fn local_maximality() {
        let single = Family::from_sets(6, 2, &[[1, 2]]).unwrap();
        assert!(!verify_local_maximality(&single, &edge()));
        let all = Family::complete(5, 2).unwrap();
        assert!(verify_local_maximality(
            &all,
            &PatternGraph::clique(3).unwrap()
        ));
        let g6 = gen_g6(7, 2).unwrap();
        assert!(verify_local_maximality(
            &g6,
            &PatternGraph::even_cycle(6).unwrap()
        ));
    }

    #[test]
    fn side_constraint_literal() {
        assert_eq!(
            "2:3".parse::<SideConstraint>().unwrap(),
            SideConstraint::MinEll { t: 2, s: 3 }
        );
        assert!("1:3".parse::<SideConstraint>().is_err());
        assert!("x".parse::<SideConstraint>().is_err());
    }
}
