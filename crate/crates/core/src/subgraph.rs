//! Non-induced subgraph containment.
//!
//! The matcher maps pattern vertices one at a time in a fixed plan order:
//! a maximum-degree vertex first, then repeatedly the vertex with the most
//! already-placed neighbours (ties by degree, then index). Candidates for a
//! position are the common host neighbourhood of its placed neighbours,
//! filtered by degree. Pattern twins (vertices with equal neighbourhoods up to
//! each other) are interchangeable, so a later twin must land on a larger host
//! vertex than the earlier one. Host candidates are tried in ascending order,
//! which makes the first embedding found the lexicographic minimum when the
//! mapping is read in plan order.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kset::Family;
use crate::pattern::PatternGraph;

/// Pattern vertex `i` is mapped to host vertex `mapping[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub mapping: Vec<usize>,
}

impl EmbeddingWitness {
    /// Injective and edge-preserving.
    pub fn is_valid(&self, host: &Graph, pattern: &PatternGraph) -> bool {
        if self.mapping.len() != pattern.order() {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(host.order());
        for &h in &self.mapping {
            if h >= host.order() || seen.put(h) {
                return false;
            }
        }
        pattern
            .edges()
            .iter()
            .all(|&(u, v)| host.has_edge(self.mapping[u], self.mapping[v]))
    }
}

#[derive(Debug, Clone)]
struct Plan {
    /// Pattern vertex placed at each position.
    order: Vec<usize>,
    /// Earlier positions adjacent to each position.
    back: Vec<Vec<usize>>,
    /// Earlier twin position whose host image must be smaller.
    twin_prev: Vec<Option<usize>>,
    degree: Vec<usize>,
}

fn twin_classes(p: &PatternGraph, skip: Option<usize>) -> Vec<usize> {
    let n = p.order();
    let mut class: Vec<usize> = (0..n).collect();
    for u in 0..n {
        if Some(u) == skip || class[u] != u {
            continue;
        }
        for v in u + 1..n {
            if Some(v) == skip || class[v] != v {
                continue;
            }
            let nu = p.neighbor_mask(u) & !(1 << v);
            let nv = p.neighbor_mask(v) & !(1 << u);
            if nu == nv {
                class[v] = u;
            }
        }
    }
    class
}

impl Plan {
    fn new(p: &PatternGraph, anchor: Option<usize>) -> Plan {
        let n = p.order();
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = if order.is_empty() && anchor.is_some() {
                anchor.unwrap()
            } else {
                (0..n)
                    .filter(|&v| placed >> v & 1 == 0)
                    .max_by_key(|&v| {
                        let linked = (p.neighbor_mask(v) & placed).count_ones();
                        (linked, p.degree(v), std::cmp::Reverse(v))
                    })
                    .expect("unplaced vertex exists")
            };
            placed |= 1 << next;
            order.push(next);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| (0..i).filter(|&j| p.has_edge(v, order[j])).collect())
            .collect();
        let class = twin_classes(p, anchor);
        let twin_prev = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                (0..i)
                    .rev()
                    .find(|&j| class[order[j]] == class[v] && Some(order[j]) != anchor)
                    .filter(|_| Some(v) != anchor)
            })
            .collect();
        let degree = order.iter().map(|&v| p.degree(v)).collect();
        Plan {
            order,
            back,
            twin_prev,
            degree,
        }
    }
}

struct Search<'a> {
    host: &'a Graph,
    plan: &'a Plan,
    allowed: Option<&'a FixedBitSet>,
    images: Vec<usize>,
    used: FixedBitSet,
    scratch: Vec<FixedBitSet>,
}

impl<'a> Search<'a> {
    fn new(host: &'a Graph, plan: &'a Plan, allowed: Option<&'a FixedBitSet>) -> Self {
        let n = host.order();
        Search {
            host,
            plan,
            allowed,
            images: Vec::with_capacity(plan.order.len()),
            used: FixedBitSet::with_capacity(n),
            scratch: vec![FixedBitSet::with_capacity(n); plan.order.len()],
        }
    }

    fn run(&mut self, fixed_first: Option<usize>) -> Option<Vec<usize>> {
        let found = match fixed_first {
            Some(h) => {
                if self.plan.degree[0] > self.host.degree(h) {
                    false
                } else {
                    self.images.push(h);
                    self.used.insert(h);
                    self.extend(1)
                }
            }
            None => self.extend(0),
        };
        if !found {
            return None;
        }
        let mut mapping = vec![0; self.plan.order.len()];
        for (pos, &v) in self.plan.order.iter().enumerate() {
            mapping[v] = self.images[pos];
        }
        Some(mapping)
    }

    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.plan.order.len() {
            return true;
        }
        let mut cand = std::mem::take(&mut self.scratch[pos]);
        let back = &self.plan.back[pos];
        if let Some((&first, rest)) = back.split_first() {
            cand.clone_from(self.host.neighbors(self.images[first]));
            for &j in rest {
                cand.intersect_with(self.host.neighbors(self.images[j]));
            }
            if let Some(allowed) = self.allowed {
                cand.intersect_with(allowed);
            }
        } else {
            match self.allowed {
                Some(allowed) => cand.clone_from(allowed),
                None => {
                    cand.clear();
                    cand.grow(self.host.order());
                    cand.insert_range(..);
                }
            }
        }
        cand.difference_with(&self.used);
        let floor = self.plan.twin_prev[pos]
            .map(|j| self.images[j] + 1)
            .unwrap_or(0);
        let need = self.plan.degree[pos];
        let mut found = false;
        for c in cand.ones() {
            if c < floor || self.host.degree(c) < need {
                continue;
            }
            self.images.push(c);
            self.used.insert(c);
            if self.extend(pos + 1) {
                found = true;
                break;
            }
            self.used.set(c, false);
            self.images.pop();
        }
        self.scratch[pos] = cand;
        found
    }
}

/// Reusable matcher for one pattern; caches the search plans.
#[derive(Debug, Clone)]
pub struct Matcher {
    pattern: PatternGraph,
    plan: Plan,
    anchored: Vec<Option<Plan>>,
}

impl Matcher {
    pub fn new(pattern: &PatternGraph) -> Matcher {
        let class = twin_classes(pattern, None);
        let anchored = (0..pattern.order())
            .map(|v| (class[v] == v).then(|| Plan::new(pattern, Some(v))))
            .collect();
        Matcher {
            pattern: pattern.clone(),
            plan: Plan::new(pattern, None),
            anchored,
        }
    }

    pub fn pattern(&self) -> &PatternGraph {
        &self.pattern
    }

    /// Deterministic first embedding into `host`, restricted to `allowed` when given.
    pub fn find(&self, host: &Graph, allowed: Option<&FixedBitSet>) -> Option<EmbeddingWitness> {
        if self.pattern.order() > host.order() {
            return None;
        }
        Search::new(host, &self.plan, allowed)
            .run(None)
            .map(|mapping| EmbeddingWitness { mapping })
    }

    /// An embedding that uses host vertex `anchor`, all other images inside `allowed`.
    pub fn find_through(
        &self,
        host: &Graph,
        allowed: &FixedBitSet,
        anchor: usize,
    ) -> Option<EmbeddingWitness> {
        if self.pattern.order() > allowed.count_ones(..) + usize::from(!allowed.contains(anchor)) {
            return None;
        }
        for plan in self.anchored.iter().flatten() {
            let mut search = Search::new(host, plan, Some(allowed));
            if let Some(mapping) = search.run(Some(anchor)) {
                return Some(EmbeddingWitness { mapping });
            }
        }
        None
    }
}

pub fn contains_subgraph(host: &Graph, pattern: &PatternGraph) -> Result<Option<EmbeddingWitness>> {
    if pattern.order() == 0 {
        return Err(Error::InvalidPattern(
            "pattern must have at least one vertex".into(),
        ));
    }
    if pattern.order() > host.order() {
        return Err(Error::PatternLargerThanHost {
            pattern: pattern.order(),
            host: host.order(),
        });
    }
    Ok(Matcher::new(pattern).find(host, None))
}

/// `true` when `host` has no copy of `pattern`; a pattern larger than the host is absent.
pub fn is_free(host: &Graph, pattern: &PatternGraph) -> bool {
    !matches!(contains_subgraph(host, pattern), Ok(Some(_)))
}

pub const ORACLE_MAX_PATTERN: usize = 8;
pub const ORACLE_MAX_HOST: usize = 24;

/// Exhaustive check over injective maps in lexicographic order of pattern indices.
pub fn brute_force_contains(
    host: &Graph,
    pattern: &PatternGraph,
) -> Result<Option<EmbeddingWitness>> {
    if pattern.order() > ORACLE_MAX_PATTERN || host.order() > ORACLE_MAX_HOST {
        return Err(Error::OracleSizeExceeded {
            max_pattern: ORACLE_MAX_PATTERN,
            max_host: ORACLE_MAX_HOST,
        });
    }
    fn go(host: &Graph, p: &PatternGraph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == p.order() {
            return true;
        }
        for h in 0..host.order() {
            if map.contains(&h) {
                continue;
            }
            if (0..i).all(|j| !p.has_edge(i, j) || host.has_edge(h, map[j])) {
                map.push(h);
                if go(host, p, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    let mut map = Vec::new();
    Ok(go(host, pattern, &mut map).then_some(EmbeddingWitness { mapping: map }))
}

/// Indices of `s` pairwise disjoint members, lexicographically first.
pub fn find_matching(family: &Family, s: usize) -> Option<Vec<usize>> {
    fn go(sets: &[u128], start: usize, union: u128, need: usize, chosen: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        if sets.len() - start < need {
            return false;
        }
        for i in start..sets.len() {
            if sets.len() - i < need {
                break;
            }
            if sets[i] & union == 0 {
                chosen.push(i);
                if go(sets, i + 1, union | sets[i], need - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if s == 0 {
        return Some(Vec::new());
    }
    let sets: Vec<u128> = family.iter().map(|m| m.bits()).collect();
    // Two empty sets cannot coexist in a family, so a k=0 family only has matchings of size 1.
    let mut chosen = Vec::with_capacity(s);
    go(&sets, 0, 0, s, &mut chosen).then_some(chosen)
}

/// Whether the family contains `s` pairwise disjoint members (a copy of `K_s`).
pub fn has_matching(family: &Family, s: usize) -> bool {
    find_matching(family, s).is_some()
}

/// Member indices on the two sides of a union-intersecting violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionViolation {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Finds `s` members and `t` further members whose unions are disjoint,
/// i.e. a copy of `K_{s,t}` in the induced Kneser graph.
pub fn find_union_intersecting_violation(
    family: &Family,
    s: usize,
    t: usize,
) -> Option<UnionViolation> {
    let sets: Vec<u128> = family.iter().map(|m| m.bits()).collect();
    let (small, large) = (s.min(t), s.max(t));
    if small == 0 {
        return None;
    }
    struct Ctx<'a> {
        sets: &'a [u128],
        need_left: usize,
        need_right: usize,
    }
    fn go(ctx: &Ctx, start: usize, union: u128, left: &mut Vec<usize>) -> Option<Vec<usize>> {
        let right: Vec<usize> = (0..ctx.sets.len())
            .filter(|&j| ctx.sets[j] & union == 0 && !left.contains(&j))
            .take(ctx.need_right)
            .collect();
        if !left.is_empty() && right.len() < ctx.need_right {
            return None;
        }
        if left.len() == ctx.need_left {
            return Some(right);
        }
        for i in start..ctx.sets.len() {
            left.push(i);
            if let Some(r) = go(ctx, i + 1, union | ctx.sets[i], left) {
                return Some(r);
            }
            left.pop();
        }
        None
    }
    let ctx = Ctx {
        sets: &sets,
        need_left: small,
        need_right: large,
    };
    let mut left = Vec::with_capacity(small);
    let right = go(&ctx, 0, 0, &mut left)?;
    if s <= t {
        Some(UnionViolation { left, right })
    } else {
        Some(UnionViolation {
            left: right,
            right: left,
        })
    }
}

pub fn is_union_intersecting_violation(family: &Family, s: usize, t: usize) -> bool {
    find_union_intersecting_violation(family, s, t).is_some()
}

/// Largest number of members disjoint from a single member; the family is
/// `l`-almost intersecting (no `K_{1,l+1}`) iff this is at most `l`.
pub fn max_disjoint_degree(family: &Family) -> usize {
    let sets: Vec<u128> = family.iter().map(|m| m.bits()).collect();
    sets.iter()
        .map(|a| sets.iter().filter(|b| a & *b == 0 && *b != a).count())
        .max()
        .unwrap_or(0)
}
