//! `ℓ_t`: the fewest members whose removal leaves no `t` pairwise disjoint sets.
//!
//! Equivalently, a minimum vertex set hitting every `t`-clique of the
//! disjointness graph. For `t = 2` the search is vertex-cover branching on a
//! maximum-degree vertex; for `t > 2` it branches over the vertices of a
//! violating clique found on demand, so cliques are never materialized.
//! Removal witnesses are the lexicographically smallest optimal index sets.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induced_kneser_graph, Graph};
use crate::kset::Family;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllResult {
    pub value: usize,
    /// Member indices, ascending.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllConfig {
    /// Search nodes allowed across all branch-and-bound calls.
    pub node_budget: u64,
}

impl Default for EllConfig {
    fn default() -> Self {
        EllConfig {
            node_budget: 50_000_000,
        }
    }
}

struct BudgetExhausted;

struct Solver<'a> {
    graph: &'a Graph,
    t: usize,
    nodes: u64,
    budget: u64,
}

impl<'a> Solver<'a> {
    fn tick(&mut self) -> std::result::Result<(), BudgetExhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(BudgetExhausted)
        } else {
            Ok(())
        }
    }

    /// Lexicographically first `t`-clique inside `alive`.
    fn find_clique(&self, alive: &FixedBitSet) -> Option<Vec<usize>> {
        fn go(g: &Graph, cand: &FixedBitSet, need: usize, acc: &mut Vec<usize>) -> bool {
            if need == 0 {
                return true;
            }
            if cand.count_ones(..) < need {
                return false;
            }
            for v in cand.ones() {
                let mut next = cand.clone();
                next.intersect_with(g.neighbors(v));
                next.set_range(..v + 1, false);
                acc.push(v);
                if go(g, &next, need - 1, acc) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        let mut acc = Vec::with_capacity(self.t);
        go(self.graph, alive, self.t, &mut acc).then_some(acc)
    }

    /// Size of a greedy packing of vertex-disjoint `t`-cliques; each needs a removal.
    fn packing_bound(&self, alive: &FixedBitSet) -> usize {
        let mut rest = alive.clone();
        let mut count = 0;
        while let Some(clique) = self.find_clique(&rest) {
            for v in clique {
                rest.set(v, false);
            }
            count += 1;
        }
        count
    }

    fn alive_degree(&self, v: usize, alive: &FixedBitSet) -> usize {
        self.graph.neighbors(v).intersection_count(alive)
    }

    /// Whether removing at most `budget` vertices of `alive \ forbidden` kills all `t`-cliques.
    fn feasible(
        &mut self,
        alive: &FixedBitSet,
        forbidden: &FixedBitSet,
        budget: usize,
    ) -> std::result::Result<bool, BudgetExhausted> {
        self.tick()?;
        if self.t == 2 {
            self.cover_feasible(alive, forbidden, budget)
        } else {
            self.clique_feasible(alive, forbidden, budget)
        }
    }

    fn cover_feasible(
        &mut self,
        alive: &FixedBitSet,
        forbidden: &FixedBitSet,
        budget: usize,
    ) -> std::result::Result<bool, BudgetExhausted> {
        // A kept (forbidden) vertex with live edges forces its neighbours out.
        let mut alive = alive.clone();
        let mut budget = budget;
        loop {
            let forced = alive
                .ones()
                .find(|&v| forbidden.contains(v) && self.alive_degree(v, &alive) > 0);
            let Some(v) = forced else { break };
            let mut nbrs = self.graph.neighbors(v).clone();
            nbrs.intersect_with(&alive);
            if !nbrs.is_disjoint(forbidden) {
                return Ok(false);
            }
            let cost = nbrs.count_ones(..);
            if cost > budget {
                return Ok(false);
            }
            budget -= cost;
            alive.difference_with(&nbrs);
        }
        let pick = alive
            .ones()
            .map(|v| (self.alive_degree(v, &alive), v))
            .filter(|&(d, _)| d > 0)
            .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)));
        let Some((degree, v)) = pick else {
            return Ok(true);
        };
        if budget == 0 {
            return Ok(false);
        }
        if greedy_matching(self.graph, &alive) > budget {
            return Ok(false);
        }
        // Remove v.
        let mut without = alive.clone();
        without.set(v, false);
        if self.feasible(&without, forbidden, budget - 1)? {
            return Ok(true);
        }
        // Keep v: every live neighbour goes.
        if degree > budget {
            return Ok(false);
        }
        let mut kept_forbidden = forbidden.clone();
        kept_forbidden.insert(v);
        self.feasible(&alive, &kept_forbidden, budget)
    }

    fn clique_feasible(
        &mut self,
        alive: &FixedBitSet,
        forbidden: &FixedBitSet,
        budget: usize,
    ) -> std::result::Result<bool, BudgetExhausted> {
        let Some(clique) = self.find_clique(alive) else {
            return Ok(true);
        };
        if budget == 0 || self.packing_bound(alive) > budget {
            return Ok(false);
        }
        let mut forbidden = forbidden.clone();
        for &v in &clique {
            if forbidden.contains(v) {
                continue;
            }
            let mut next = alive.clone();
            next.set(v, false);
            if self.feasible(&next, &forbidden, budget - 1)? {
                return Ok(true);
            }
            // Branches are disjoint: later ones keep v.
            forbidden.insert(v);
        }
        Ok(false)
    }

    /// Greedy hitting set: repeatedly remove the highest-degree vertex of a violating clique.
    fn greedy_upper(&self, alive: &FixedBitSet) -> Vec<usize> {
        let mut alive = alive.clone();
        let mut removed = Vec::new();
        while let Some(clique) = self.find_clique(&alive) {
            let v = *clique
                .iter()
                .max_by_key(|&&v| (self.alive_degree(v, &alive), std::cmp::Reverse(v)))
                .expect("clique is non-empty");
            alive.set(v, false);
            removed.push(v);
        }
        removed.sort_unstable();
        removed
    }
}

fn greedy_matching(g: &Graph, alive: &FixedBitSet) -> usize {
    let mut free = alive.clone();
    let mut count = 0;
    for u in alive.ones() {
        if !free.contains(u) {
            continue;
        }
        if let Some(v) = g.neighbors(u).ones().find(|&v| free.contains(v)) {
            free.set(u, false);
            free.set(v, false);
            count += 1;
        }
    }
    count
}

/// Minimum number of vertices of `graph` meeting every `t`-clique, with the
/// lexicographically smallest optimal vertex set.
pub fn min_clique_hitting_set(graph: &Graph, t: usize, config: EllConfig) -> Result<EllResult> {
    if t < 2 {
        return Err(Error::ParamsInfeasible(format!(
            "t must be at least 2, got {t}"
        )));
    }
    let n = graph.order();
    let mut solver = Solver {
        graph,
        t,
        nodes: 0,
        budget: config.node_budget,
    };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let none = FixedBitSet::with_capacity(n);

    let upper = solver.greedy_upper(&all);
    let mut lower = solver.packing_bound(&all);
    let exceeded = |lower: usize| Error::SearchBudgetExceeded {
        lower,
        upper: upper.len(),
    };
    let mut value = upper.len();
    while lower < upper.len() {
        match solver.feasible(&all, &none, lower) {
            Ok(true) => {
                value = lower;
                break;
            }
            Ok(false) => lower += 1,
            Err(BudgetExhausted) => return Err(exceeded(lower)),
        }
    }

    // Canonical witness: take each vertex in index order whenever a solution
    // of the optimal size still exists with it removed.
    let mut alive = all.clone();
    let mut forbidden = none.clone();
    let mut witness = Vec::with_capacity(value);
    for v in 0..n {
        if solver.find_clique(&alive).is_none() {
            break;
        }
        let remaining = value - witness.len();
        if remaining == 0 {
            break;
        }
        let mut trial = alive.clone();
        trial.set(v, false);
        match solver.feasible(&trial, &forbidden, remaining - 1) {
            Ok(true) => {
                alive = trial;
                witness.push(v);
            }
            Ok(false) => {
                forbidden.insert(v);
            }
            Err(BudgetExhausted) => return Err(exceeded(value)),
        }
    }
    debug_assert!(solver.find_clique(&alive).is_none());
    Ok(EllResult { value, witness })
}

/// `ℓ_t(family)` with the default search budget.
pub fn ell(family: &Family, t: usize) -> Result<EllResult> {
    ell_with(family, t, EllConfig::default())
}

pub fn ell_with(family: &Family, t: usize, config: EllConfig) -> Result<EllResult> {
    let g = induced_kneser_graph(family);
    min_clique_hitting_set(&g, t, config)
}
