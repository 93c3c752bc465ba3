//! The acceptance grid as a library routine, shared by the `verify` command.
//!
//! Rows carry tags so a run can be narrowed with a filter: a criterion number
//! (`"3"`), a check kind (`sizes`, `freeness`, `ell`, `search`, `oracle`,
//! `bbn`, `invariants`, `identities`) or a family (`stab`, `multi`,
//! `cycles`, `hm`).

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    at_bound, binom, easy_lemma_bound, hm_bound, stabmulti_bound, stabst_bound, BoundNumber,
};
use crate::constructions::{
    gen_f_multi, gen_f_st, gen_g2s, gen_g2s_disjoint, gen_g2s_plus, gen_g6,
};
use crate::error::{Error, Result};
use crate::graph::induced_kneser_graph;
use crate::invariants::{bipartite_classes, chromatic_profile, ell, is_isomorphic};
use crate::kset::Family;
use crate::oracle;
use crate::pattern::PatternGraph;
use crate::search::{max_f_free, SearchProblem, SearchStatus, SideConstraint};
use crate::subgraph::{brute_force_contains, contains_subgraph, is_free};

pub const DEFAULT_SEED: u64 = 0x6b6e_6573;
pub const RANDOM_INSTANCES: usize = 200;

/// A deliberately wrong formula, to confirm the grid notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// `+ s + t` in place of `+ s + t - 1` in the expected `F_{s,t}` size.
    StabStSize,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stabst-size" => Ok(Fault::StabStSize),
            other => Err(Error::ParamsInfeasible(format!("unknown fault `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub filter: Option<String>,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            filter: None,
            seed: DEFAULT_SEED,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub criterion: u8,
    pub name: String,
    pub tags: Vec<&'static str>,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionSummary {
    pub criterion: u8,
    pub title: &'static str,
    pub rows: usize,
    pub failures: usize,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_millis: Option<u128>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter: Option<String>,
    pub criteria: Vec<CriterionSummary>,
    pub rows: Vec<Row>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    /// One line per criterion that ran, then every failing row.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            let _ = writeln!(
                out,
                "{} criterion {} {:<34} rows={:<4} failed={:<3} {:>7} ms{}",
                if c.passed { "PASS" } else { "FAIL" },
                c.criterion,
                c.title,
                c.rows,
                c.failures,
                c.millis,
                c.limit_millis
                    .map(|l| format!(" (limit {l} ms)"))
                    .unwrap_or_default()
            );
        }
        for r in self.rows.iter().filter(|r| !r.passed) {
            let _ = writeln!(out, "  failed [{}] {}: {}", r.criterion, r.name, r.detail);
        }
        out
    }
}

const TITLES: [(u8, &str, Option<u64>); 8] = [
    (1, "construction sizes", Some(10)),
    (2, "freeness", Some(60)),
    (3, "ell values", None),
    (4, "extremal numbers by search", Some(120)),
    (5, "matcher vs brute force", None),
    (6, "edge lower bound from ell", None),
    (7, "chromatic invariants", None),
    (8, "formula identities", None),
];

type Check = std::result::Result<(), String>;

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Runner {
    config: VerifyConfig,
    rows: Vec<Row>,
}

impl Runner {
    fn wanted(&self, criterion: u8, tags: &[&'static str]) -> bool {
        match &self.config.filter {
            None => true,
            Some(f) => *f == criterion.to_string() || tags.iter().any(|t| t == f),
        }
    }

    fn row(
        &mut self,
        criterion: u8,
        name: String,
        tags: &[&'static str],
        check: impl FnOnce() -> Check,
    ) {
        if !self.wanted(criterion, tags) {
            return;
        }
        let result = check();
        self.rows.push(Row {
            criterion,
            name,
            tags: tags.to_vec(),
            passed: result.is_ok(),
            detail: result.err().unwrap_or_default(),
        });
    }
}

/// The size and freeness grid: `k ∈ {2,3}`, `n ∈ [3k+2, 3k+8]`.
fn grid() -> impl Iterator<Item = (usize, usize)> {
    [2usize, 3]
        .into_iter()
        .flat_map(|k| (3 * k + 2..=3 * k + 8).map(move |n| (n, k)))
}

const ST_PAIRS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];
const PARTS: [&[usize]; 3] = [&[2, 2], &[2, 2, 1], &[2, 2, 2]];
const CYCLE_S: usize = 4;

fn c(n: usize, k: usize) -> BigInt {
    binom(n as i64, k as i64)
}

fn size_of(f: &Family) -> BigInt {
    BigInt::from(f.len())
}

fn criterion_sizes(r: &mut Runner) {
    let fault = r.config.fault;
    for (n, k) in grid() {
        for (s, t) in ST_PAIRS {
            let Ok(f) = gen_f_st(n, k, s, t) else {
                continue;
            };
            r.row(
                1,
                format!("F_st n={n} k={k} s={s} t={t}"),
                &["sizes", "stab"],
                || {
                    let offset = if fault == Some(Fault::StabStSize) {
                        s + t
                    } else {
                        s + t - 1
                    };
                    let want = c(n - 1, k - 1) - binom(n as i64 - (s * k) as i64 - 1, k as i64 - 1)
                        + BigInt::from(offset);
                    expect_eq(size_of(&f), want)?;
                    expect_eq(
                        Some(size_of(&f)),
                        stabst_bound(n as i64, k as i64, s as i64, t as i64)
                            .integer_value()
                            .cloned(),
                    )
                },
            );
        }
        for parts in PARTS {
            let Ok(f) = gen_f_multi(n, k, parts) else {
                continue;
            };
            r.row(
                1,
                format!("F_multi n={n} k={k} parts={parts:?}"),
                &["sizes", "multi"],
                || {
                    let want = lift(stabmulti_bound(n as i64, k as i64, parts))?;
                    expect_eq(Some(size_of(&f)), want.integer_value().cloned())
                },
            );
        }
        if let Ok(f) = gen_g6(n, k) {
            r.row(1, format!("G_6 n={n} k={k}"), &["sizes", "cycles"], || {
                let want = c(n - 1, k - 1) - binom(n as i64 - 2 * k as i64 - 1, k as i64 - 1) + 3;
                expect_eq(size_of(&f), want)
            });
        }
        let s = CYCLE_S;
        if let Ok(f) = gen_g2s(n, k, s) {
            r.row(
                1,
                format!("G_2s n={n} k={k} s={s}"),
                &["sizes", "cycles"],
                || {
                    let want = c(n - 1, k - 1) - c(n - 2 * k, k - 1) + BigInt::from(s);
                    expect_eq(size_of(&f), want)
                },
            );
        }
        if let Ok(ext) = gen_g2s_plus(n, k, s) {
            r.row(
                1,
                format!("G_2s^+ n={n} k={k} s={s}"),
                &["sizes", "cycles"],
                || {
                    let base = lift(gen_g2s_disjoint(n, k, s))?;
                    let extra = lift(ext.difference(&base))?;
                    let want = binom(n as i64 - k as i64 - s as i64 + 1, k as i64 - s as i64 + 1);
                    expect_eq(size_of(&extra), want)
                },
            );
        }
    }
}

fn free_check(f: &Family, p: &PatternGraph) -> Check {
    let g = induced_kneser_graph(f);
    match contains_subgraph(&g, p) {
        Ok(None) | Err(Error::PatternLargerThanHost { .. }) => Ok(()),
        Ok(Some(w)) => Err(format!("{p} found at {:?}", w.mapping)),
        Err(e) => Err(e.to_string()),
    }
}

fn criterion_freeness(r: &mut Runner) {
    for (n, k) in grid() {
        for (s, t) in ST_PAIRS {
            let Ok(f) = gen_f_st(n, k, s, t) else {
                continue;
            };
            r.row(
                2,
                format!("F_st n={n} k={k} s={s} t={t}"),
                &["freeness", "stab"],
                || free_check(&f, &lift(PatternGraph::complete_multipartite(&[s, t]))?),
            );
        }
        for parts in PARTS {
            let Ok(f) = gen_f_multi(n, k, parts) else {
                continue;
            };
            r.row(
                2,
                format!("F_multi n={n} k={k} parts={parts:?}"),
                &["freeness", "multi"],
                || free_check(&f, &lift(PatternGraph::complete_multipartite(parts))?),
            );
        }
        if let Ok(f) = gen_g6(n, k) {
            r.row(
                2,
                format!("G_6 n={n} k={k}"),
                &["freeness", "cycles"],
                || free_check(&f, &lift(PatternGraph::even_cycle(6))?),
            );
        }
        let s = CYCLE_S;
        if let Ok(f) = gen_g2s(n, k, s) {
            r.row(
                2,
                format!("G_2s C_2s n={n} k={k} s={s}"),
                &["freeness", "cycles"],
                || free_check(&f, &lift(PatternGraph::even_cycle(2 * s))?),
            );
            r.row(
                2,
                format!("G_2s P_2s n={n} k={k} s={s}"),
                &["freeness", "cycles"],
                || free_check(&f, &lift(PatternGraph::path(2 * s))?),
            );
        }
        if let Ok(f) = gen_g2s_plus(n, k, s) {
            r.row(
                2,
                format!("G_2s^+ C_2s n={n} k={k} s={s}"),
                &["freeness", "cycles"],
                || free_check(&f, &lift(PatternGraph::even_cycle(2 * s))?),
            );
        }
    }
}

/// Smallest `n` (from `start`) at which `gen` succeeds.
fn minimal<F: Fn(usize) -> Result<Family>>(start: usize, gen: F) -> Option<(usize, Family)> {
    (start..start + 32).find_map(|n| gen(n).ok().map(|f| (n, f)))
}

fn ell_check(f: &Family, want: usize) -> Check {
    let solved = lift(ell(f, 2))?;
    expect_eq(solved.value, want)?;
    let g = induced_kneser_graph(f);
    let (brute, _) = oracle::min_clique_hitting_brute(&g, 2);
    expect_eq(brute, want).map_err(|e| format!("oracle: {e}"))?;
    if is_free(
        &induced_kneser_graph(&f.without(&solved.witness)),
        &PatternGraph::clique(2).expect("K2"),
    ) {
        Ok(())
    } else {
        Err("witness removal leaves a disjoint pair".into())
    }
}

fn criterion_ell(r: &mut Runner) {
    for k in [2usize, 3] {
        for (s, t) in ST_PAIRS {
            let Some((n, f)) = minimal(s * k + 1, |n| gen_f_st(n, k, s, t)) else {
                continue;
            };
            r.row(
                3,
                format!("F_st n={n} k={k} s={s} t={t} |F|={}", f.len()),
                &["ell", "stab"],
                || ell_check(&f, s),
            );
        }
        if let Some((n, f)) = minimal(3 * k + 1, |n| gen_g6(n, k)) {
            r.row(
                3,
                format!("G_6 n={n} k={k} |F|={}", f.len()),
                &["ell", "cycles"],
                || ell_check(&f, 3),
            );
        }
    }
    // With k = 2 the sets {K, {1,2}, {1,3}} already cover, so G_2s is checked at k = 3.
    let (k, s) = (3, CYCLE_S);
    if let Some((n, f)) = minimal(2 * k + s - 1, |n| gen_g2s(n, k, s)) {
        r.row(
            3,
            format!("G_2s n={n} k={k} s={s} |F|={}", f.len()),
            &["ell", "cycles"],
            || ell_check(&f, s),
        );
    }
}

fn criterion_search(r: &mut Runner) {
    let cases = [(5usize, 2usize, 4usize, 3usize), (7, 3, 15, 13)];
    for (n, k, ekr, hm) in cases {
        let edge = PatternGraph::clique(2).expect("K2");
        r.row(
            4,
            format!("intersecting K({n},{k})"),
            &["search", "hm"],
            || {
                let out = lift(max_f_free(&SearchProblem::new(n, k, edge.clone())))?;
                expect_eq(out.status, SearchStatus::Proven)?;
                expect_eq(out.optimum, ekr)?;
                expect_eq(BigInt::from(ekr), c(n - 1, k - 1))
            },
        );
        r.row(
            4,
            format!("Hilton-Milner K({n},{k})"),
            &["search", "hm"],
            || {
                let p = SearchProblem::new(n, k, edge.clone())
                    .with_side(SideConstraint::NoCommonElement);
                let out = lift(max_f_free(&p))?;
                expect_eq(out.status, SearchStatus::Proven)?;
                expect_eq(out.optimum, hm)?;
                expect_eq(
                    Some(BigInt::from(hm)),
                    hm_bound(n as i64, k as i64).integer_value().cloned(),
                )
            },
        );
    }
}

fn criterion_oracle(r: &mut Runner) {
    let seed = r.config.seed;
    r.row(
        5,
        format!("{RANDOM_INSTANCES} random instances, seed {seed}"),
        &["oracle"],
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..RANDOM_INSTANCES {
                let order = rng.gen_range(1..=14);
                let density = rng.gen_range(0.15..0.85);
                let host = oracle::random_graph(&mut rng, order, density);
                let pattern = oracle::random_pattern(&mut rng, order.min(5));
                let fast = lift(contains_subgraph(&host, &pattern))?;
                let slow = lift(brute_force_contains(&host, &pattern))?;
                if fast.is_some() != slow.is_some() {
                    return Err(format!(
                        "instance {i}: matcher {fast:?}, brute force {slow:?}"
                    ));
                }
                if let Some(w) = fast {
                    if !w.is_valid(&host, &pattern) {
                        return Err(format!("instance {i}: invalid witness {:?}", w.mapping));
                    }
                }
            }
            Ok(())
        },
    );
}

fn criterion_bbn(r: &mut Runner) {
    let seed = r.config.seed;
    r.row(
        6,
        format!("{RANDOM_INSTANCES} random families, seed {seed}"),
        &["bbn"],
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbb);
            for i in 0..RANDOM_INSTANCES {
                let k = rng.gen_range(2..=3);
                let n = rng.gen_range(2 * k + 1..=2 * k + 4);
                let size = rng.gen_range(1..=18);
                let f = oracle::random_family(&mut rng, n, k, size);
                let l = lift(ell(&f, 2))?.value;
                let edges = induced_kneser_graph(&f).edge_count();
                let bound = crate::bounds::bbn_lower_edges(l as u64, k as i64);
                let BoundNumber::Rational(q) = bound.value else {
                    return Err("bound is not rational".into());
                };
                if BigRational::from_integer(BigInt::from(edges)) < q {
                    return Err(format!("instance {i}: e = {edges} < {q} with ell = {l}"));
                }
            }
            Ok(())
        },
    );
}

fn criterion_invariants(r: &mut Runner) {
    let profiles: [&[usize]; 6] = [
        &[2, 2],
        &[2, 2, 1],
        &[2, 2, 2],
        &[3, 2, 2],
        &[3, 3, 1],
        &[4, 2, 1, 1],
    ];
    for parts in profiles {
        r.row(7, format!("profile K{parts:?}"), &["invariants"], || {
            let p = lift(PatternGraph::complete_multipartite(parts))?;
            let prof = lift(chromatic_profile(&p))?;
            let want = (parts.len(), *parts.last().expect("non-empty"));
            expect_eq((prof.chi, prof.eta), want)?;
            expect_eq(oracle::chromatic_brute(&p), want).map_err(|e| format!("oracle: {e}"))
        });
    }
    for parts in [[2usize, 2, 1], [3, 2, 2]] {
        r.row(
            7,
            format!("bipartite classes K{parts:?}"),
            &["invariants"],
            || {
                let p = lift(PatternGraph::complete_multipartite(&parts))?;
                let classes = lift(bipartite_classes(&p))?;
                let pair = |a: usize, b: usize| {
                    PatternGraph::complete_multipartite(&[a, b]).expect("parts")
                };
                let mut all = vec![
                    pair(parts[0], parts[1]),
                    pair(parts[0], parts[2]),
                    pair(parts[1], parts[2]),
                ];
                dedup_iso(&mut all);
                let mut matched = vec![pair(parts[0], parts[2]), pair(parts[1], parts[2])];
                dedup_iso(&mut matched);
                if !same_classes(&classes.all, &all) {
                    return Err(format!("B_F = {:?}", names(&classes.all)));
                }
                if !same_classes(&classes.eta_matched, &matched) {
                    return Err(format!("B_F,eta = {:?}", names(&classes.eta_matched)));
                }
                Ok(())
            },
        );
    }
}

fn dedup_iso(list: &mut Vec<PatternGraph>) {
    let mut out: Vec<PatternGraph> = Vec::new();
    for p in list.drain(..) {
        if !out.iter().any(|q| is_isomorphic(q, &p)) {
            out.push(p);
        }
    }
    *list = out;
}

fn same_classes(a: &[PatternGraph], b: &[PatternGraph]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| is_isomorphic(x, y)))
        && b.iter().all(|y| a.iter().any(|x| is_isomorphic(x, y)))
}

fn names(list: &[PatternGraph]) -> Vec<String> {
    list.iter().map(|p| p.to_string()).collect()
}

fn criterion_identities(r: &mut Runner) {
    r.row(
        8,
        "at_bound(n,k,2,1) = C(n-1,k-1)".into(),
        &["identities"],
        || {
            for n in 1..=40i64 {
                for k in 1..=n {
                    expect_eq(
                        at_bound(n, k, 2, 1).integer_value().cloned(),
                        Some(binom(n - 1, k - 1)),
                    )
                    .map_err(|e| format!("n={n} k={k}: {e}"))?;
                }
            }
            Ok(())
        },
    );
    r.row(
        8,
        "stabmulti with r = 1 equals stabst".into(),
        &["identities"],
        || {
            for n in 4..=30i64 {
                for k in 1..=n / 2 {
                    for s in 1..=4usize {
                        for t in s..=5 {
                            let multi = lift(stabmulti_bound(n, k, &[t, s]))?;
                            let st = stabst_bound(n, k, s as i64, t as i64);
                            expect_eq(multi.integer_value(), st.integer_value())
                                .map_err(|e| format!("n={n} k={k} s={s} t={t}: {e}"))?;
                        }
                    }
                }
            }
            Ok(())
        },
    );
    r.row(
        8,
        "easy_lemma(s=t=1) = C(n-1,k-1) - C(n-k-1,k-1)".into(),
        &["identities"],
        || {
            for n in 2..=40i64 {
                for k in 1..=n / 2 {
                    let want = binom(n - 1, k - 1) - binom(n - k - 1, k - 1);
                    expect_eq(
                        easy_lemma_bound(n, k, 1, 1).integer_value().cloned(),
                        Some(want.clone()),
                    )?;
                    let hm = hm_bound(n, k).integer_value().cloned().expect("integer");
                    expect_eq(hm, want + 1)?;
                }
            }
            Ok(())
        },
    );
    r.row(
        8,
        "binom agrees with Pascal for n <= 64".into(),
        &["identities"],
        || {
            let mut row = vec![BigInt::from(1)];
            for n in 0..=64i64 {
                for k in -1..=n + 1 {
                    let want = if (0..=n).contains(&k) {
                        row[k as usize].clone()
                    } else {
                        BigInt::from(0)
                    };
                    expect_eq(binom(n, k), want).map_err(|e| format!("C({n},{k}): {e}"))?;
                }
                let mut next = vec![BigInt::from(1)];
                next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
                next.push(BigInt::from(1));
                row = next;
            }
            Ok(())
        },
    );
}

/// Runs every criterion (or those matching the filter).
pub fn run(config: VerifyConfig) -> VerifyReport {
    let mut runner = Runner {
        config,
        rows: Vec::new(),
    };
    let stages: [fn(&mut Runner); 8] = [
        criterion_sizes,
        criterion_freeness,
        criterion_ell,
        criterion_search,
        criterion_oracle,
        criterion_bbn,
        criterion_invariants,
        criterion_identities,
    ];
    let mut criteria = Vec::new();
    for ((criterion, title, limit), stage) in TITLES.into_iter().zip(stages) {
        let before = runner.rows.len();
        let start = Instant::now();
        stage(&mut runner);
        let elapsed = start.elapsed();
        let rows = &runner.rows[before..];
        if rows.is_empty() {
            continue;
        }
        let failures = rows.iter().filter(|r| !r.passed).count();
        let limit = limit.map(Duration::from_secs);
        let in_time = limit.is_none_or(|l| elapsed < l);
        criteria.push(CriterionSummary {
            criterion,
            title,
            rows: rows.len(),
            failures,
            millis: elapsed.as_millis(),
            limit_millis: limit.map(|l| l.as_millis()),
            passed: failures == 0 && in_time,
        });
    }
    VerifyReport {
        seed: runner.config.seed,
        filter: runner.config.filter,
        criteria,
        rows: runner.rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only(filter: &str) -> VerifyConfig {
        VerifyConfig {
            filter: Some(filter.into()),
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn cycles_filter_selects_cycle_rows() {
        let report = run(only("cycles"));
        assert!(!report.rows.is_empty());
        assert!(report.rows.iter().all(|r| r.tags.contains(&"cycles")));
        assert!(report.rows.iter().all(|r| (1..=3).contains(&r.criterion)));
        assert!(report.passed(), "{}", report.table());
    }

    #[test]
    fn fault_fails_only_its_rows() {
        let mut config = only("1");
        config.fault = Some(Fault::StabStSize);
        let report = run(config);
        assert!(!report.passed());
        let failed: Vec<_> = report.rows.iter().filter(|r| !r.passed).collect();
        assert!(!failed.is_empty());
        assert!(failed
            .iter()
            .all(|r| r.criterion == 1 && r.tags.contains(&"stab")));
        assert!(report.rows.iter().any(|r| r.passed));
    }

    #[test]
    fn identities_pass() {
        let report = run(only("identities"));
        assert_eq!(report.criteria.len(), 1);
        assert!(report.passed(), "{}", report.table());
    }
}
