//! Extremal families.
//!
//! Wherever a construction leaves a choice of sets open, the generators take
//! the smallest qualifying sets in canonical (bit-value) order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bounds::{binom, hm_bound, stabmulti_bound, stabst_bound};
use crate::error::{Error, Result};
use crate::kset::{interval_mask, Family, KSet};

fn infeasible(msg: impl Into<String>) -> Error {
    Error::ParamsInfeasible(msg.into())
}

fn bit(e: usize) -> u128 {
    1u128 << (e - 1)
}

/// The first `count` sets of the form `must ∪ X`, `X` a `size`-subset of
/// `pool`, in ascending bit-value order.
fn first_sets(n: usize, pool: u128, must: u128, size: usize, count: usize) -> Result<Vec<KSet>> {
    let positions: Vec<u32> = (0..128).filter(|&b| pool >> b & 1 == 1).collect();
    if size > positions.len() {
        return if count == 0 {
            Ok(Vec::new())
        } else {
            Err(infeasible("not enough free elements"))
        };
    }
    let mut out = Vec::with_capacity(count);
    let mut idx: Vec<usize> = (0..size).collect();
    while out.len() < count {
        let bits = idx.iter().fold(must, |acc, &i| acc | 1u128 << positions[i]);
        out.push(KSet::from_bits(bits, n)?);
        // Next combination in colex order, which preserves bit-value order.
        let mut j = 0;
        loop {
            if j == size {
                if out.len() < count {
                    return Err(infeasible(format!(
                        "only {} qualifying sets, {count} needed",
                        out.len()
                    )));
                }
                return Ok(out);
            }
            let limit = if j + 1 < size {
                idx[j + 1]
            } else {
                positions.len()
            };
            if idx[j] + 1 < limit {
                idx[j] += 1;
                for (i, slot) in idx.iter_mut().enumerate().take(j) {
                    *slot = i;
                }
                break;
            }
            j += 1;
        }
    }
    Ok(out)
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(infeasible(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    Ok(())
}

/// `{F : 1 ∈ F, F ∩ [2,k+1] ≠ ∅} ∪ {[2,k+1]}`: intersecting, trivial common intersection.
pub fn gen_hm_star(n: usize, k: usize) -> Result<Family> {
    check_nk(n, k)?;
    if n < 2 * k + 1 {
        return Err(infeasible(format!("needs n >= 2k+1, got n={n} k={k}")));
    }
    let head = interval_mask(2, k + 1);
    let mut members: Vec<KSet> = Family::filtered(n, k, |b| b & 1 != 0 && b & head != 0)?
        .members()
        .to_vec();
    members.push(KSet::from_bits(head, n)?);
    Family::new(n, k, members)
}

/// `F_{s,t}`: the star at 1 restricted to sets meeting `S = [2, sk+1]`, the
/// blocks `H_i = [(i-1)k+2, ik+1]`, and `t-1` sets through 1 avoiding `S`.
pub fn gen_f_st(n: usize, k: usize, s: usize, t: usize) -> Result<Family> {
    check_nk(n, k)?;
    if s < 2 || s > t {
        return Err(infeasible(format!("needs 2 <= s <= t, got s={s} t={t}")));
    }
    if s * k + 1 > n {
        return Err(infeasible(format!("S = [2, {}] exceeds n={n}", s * k + 1)));
    }
    let big_s = interval_mask(2, s * k + 1);
    if binom((n - s * k - 1) as i64, (k - 1) as i64) < BigInt::from(t - 1) {
        return Err(infeasible(format!(
            "fewer than t-1={} sets through 1 avoid S at n={n} k={k} s={s}",
            t - 1
        )));
    }
    let mut members: Vec<KSet> = Family::filtered(n, k, |b| b & 1 != 0 && b & big_s != 0)?
        .members()
        .to_vec();
    for i in 1..=s {
        members.push(KSet::interval((i - 1) * k + 2, i * k + 1, n)?);
    }
    let pool = interval_mask(s * k + 2, n);
    members.extend(first_sets(n, pool, 1, k - 1, t - 1)?);
    Family::new(n, k, members)
}

/// `F_{s_1,...,s_{r+1}}` for parts sorted non-increasingly: `s_{r+1}` disjoint
/// sets avoiding `[r]`, all sets meeting `[r-1]`, sets through `r` meeting the
/// disjoint sets, and `s_r - 1` further sets through `r`.
pub fn gen_f_multi(n: usize, k: usize, parts: &[usize]) -> Result<Family> {
    check_nk(n, k)?;
    if parts.len() < 2 || parts.contains(&0) {
        return Err(infeasible("needs at least two positive parts"));
    }
    let mut sorted = parts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let r = sorted.len() - 1;
    let last = sorted[r];
    let second_last = sorted[r - 1];
    if r + last * k > n {
        return Err(infeasible(format!(
            "{last} disjoint {k}-sets avoiding [{r}] do not fit in [{n}]"
        )));
    }
    let low = interval_mask(1, r - 1);
    let r_bit = bit(r);
    let mut disjoint = Vec::with_capacity(last);
    let mut union = 0u128;
    for j in 1..=last {
        let set = KSet::interval(r + 1 + (j - 1) * k, r + j * k, n)?;
        union |= set.bits();
        disjoint.push(set);
    }
    let mut members: Vec<KSet> =
        Family::filtered(n, k, |b| b & low != 0 || (b & r_bit != 0 && b & union != 0))?
            .members()
            .to_vec();
    members.extend(disjoint);
    let pool = interval_mask(r + 1, n) & !union;
    members.extend(first_sets(n, pool, r_bit, k - 1, second_last - 1)?);
    Family::new(n, k, members)
}

/// `G_6`: sets through 1 meeting `[2,2k+1]`, plus three consecutive disjoint blocks.
pub fn gen_g6(n: usize, k: usize) -> Result<Family> {
    check_nk(n, k)?;
    if n < 3 * k + 1 {
        return Err(infeasible(format!("needs n >= 3k+1, got n={n} k={k}")));
    }
    let window = interval_mask(2, 2 * k + 1);
    let mut members: Vec<KSet> = Family::filtered(n, k, |b| b & 1 != 0 && b & window != 0)?
        .members()
        .to_vec();
    for (lo, hi) in [(2, k + 1), (k + 2, 2 * k + 1), (2 * k + 2, 3 * k + 1)] {
        members.push(KSet::interval(lo, hi, n)?);
    }
    Family::new(n, k, members)
}

fn check_g2s(n: usize, k: usize, s: usize) -> Result<()> {
    check_nk(n, k)?;
    if s < 4 {
        return Err(infeasible(format!(
            "G_2s needs s >= 4 (s = 3 is G_6), got {s}"
        )));
    }
    if k < 2 {
        return Err(infeasible("G_2s needs k >= 2"));
    }
    if n < 2 * k + s - 1 {
        return Err(infeasible(format!(
            "needs n >= 2k+s-1 = {}, got {n}",
            2 * k + s - 1
        )));
    }
    Ok(())
}

fn g2s_with(n: usize, k: usize, hs: Vec<KSet>) -> Result<Family> {
    let window = interval_mask(2, 2 * k);
    let mut members: Vec<KSet> = Family::filtered(n, k, |b| b & 1 != 0 && b & window != 0)?
        .members()
        .to_vec();
    members.push(KSet::interval(2, k + 1, n)?);
    members.extend(hs);
    Family::new(n, k, members)
}

/// `G_{2s}`: sets through 1 meeting `K ∪ K'` (`K = [2,k+1]`, `K' = [k+2,2k]`),
/// plus `K` and the `s-1` smallest sets `H_i ⊇ K'` avoiding 1.
///
/// For `s-1 <= k` the `H_i` all meet `K`, so the sets avoiding 1 are pairwise
/// intersecting.
pub fn gen_g2s(n: usize, k: usize, s: usize) -> Result<Family> {
    check_g2s(n, k, s)?;
    let k_prime = interval_mask(k + 2, 2 * k);
    let pool = interval_mask(2, n) & !k_prime;
    g2s_with(n, k, first_sets(n, pool, k_prime, 1, s - 1)?)
}

/// `G_{2s}` with `H_i = K' ∪ {2k+i}`, all disjoint from `K`.
pub fn gen_g2s_disjoint(n: usize, k: usize, s: usize) -> Result<Family> {
    check_g2s(n, k, s)?;
    let k_prime = interval_mask(k + 2, 2 * k);
    let hs = (1..s)
        .map(|i| KSet::from_bits(k_prime | bit(2 * k + i), n))
        .collect::<Result<Vec<_>>>()?;
    g2s_with(n, k, hs)
}

/// `G_{2s}^+`: all sets containing `{1, 2k+1, ..., 2k+s-2}`.
pub fn gen_g2s_plus_part(n: usize, k: usize, s: usize) -> Result<Family> {
    check_g2s(n, k, s)?;
    if s - 1 > k {
        return Err(infeasible(format!("needs s-1 <= k, got s={s} k={k}")));
    }
    let core = 1 | interval_mask(2 * k + 1, 2 * k + s - 2);
    Family::filtered(n, k, |b| b & core == core)
}

/// `G_{2s} ∪ G_{2s}^+`, with the `H_i` of `G_{2s}` disjoint from `K`.
pub fn gen_g2s_plus(n: usize, k: usize, s: usize) -> Result<Family> {
    gen_g2s_disjoint(n, k, s)?.union(&gen_g2s_plus_part(n, k, s)?)
}

/// `|G_{2s}^+ \ G_{2s}| = C(n-2k-s+2, k-s+1)`: the extra sets avoid `[2,2k]`
/// and contain the `s-1` fixed elements.
pub fn g2s_plus_extra_count(n: usize, k: usize, s: usize) -> BigInt {
    binom(
        n as i64 - 2 * k as i64 - s as i64 + 2,
        k as i64 - s as i64 + 1,
    )
}

/// `G_F ∪ {K : K ∩ [n-χ+3, n] ≠ ∅}` with `G_F` re-embedded from `[n-χ+2]` into `[n]`.
pub fn compose_chi3(base: &Family, chi: usize, n: usize) -> Result<Family> {
    if chi < 3 {
        return Err(infeasible(format!("needs chi >= 3, got {chi}")));
    }
    if n + 2 < chi || base.n() != n + 2 - chi {
        return Err(Error::GroundSetMismatch {
            left: base.n(),
            right: (n + 2).saturating_sub(chi),
        });
    }
    let k = base.k();
    let top = interval_mask(n + 3 - chi, n);
    let mut members: Vec<KSet> = Family::filtered(n, k, |b| b & top != 0)?.members().to_vec();
    for m in base {
        members.push(KSet::from_bits(m.bits(), n)?);
    }
    Family::new(n, k, members)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    HmStar,
    FSt,
    FMulti,
    G6,
    G2s,
    G2sPlus,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 6] = [
        ConstructionKind::HmStar,
        ConstructionKind::FSt,
        ConstructionKind::FMulti,
        ConstructionKind::G6,
        ConstructionKind::G2s,
        ConstructionKind::G2sPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::HmStar => "hm-star",
            ConstructionKind::FSt => "f-st",
            ConstructionKind::FMulti => "f-multi",
            ConstructionKind::G6 => "g6",
            ConstructionKind::G2s => "g2s",
            ConstructionKind::G2sPlus => "g2s-plus",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| infeasible(format!("unknown construction `{s}`")))
    }
}

/// A named construction with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<usize>,
}

impl ConstructionSpec {
    pub fn new(kind: ConstructionKind, n: usize, k: usize) -> Self {
        ConstructionSpec {
            kind,
            n,
            k,
            s: None,
            t: None,
            parts: Vec::new(),
        }
    }

    pub fn with_s(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_parts(mut self, parts: &[usize]) -> Self {
        self.parts = parts.to_vec();
        self
    }

    fn need_s(&self) -> Result<usize> {
        self.s
            .ok_or_else(|| infeasible(format!("{} needs s", self.kind)))
    }

    fn need_t(&self) -> Result<usize> {
        self.t
            .ok_or_else(|| infeasible(format!("{} needs t", self.kind)))
    }

    pub fn generate(&self) -> Result<Family> {
        let (n, k) = (self.n, self.k);
        match self.kind {
            ConstructionKind::HmStar => gen_hm_star(n, k),
            ConstructionKind::FSt => gen_f_st(n, k, self.need_s()?, self.need_t()?),
            ConstructionKind::FMulti => gen_f_multi(n, k, &self.parts),
            ConstructionKind::G6 => gen_g6(n, k),
            ConstructionKind::G2s => gen_g2s(n, k, self.need_s()?),
            ConstructionKind::G2sPlus => gen_g2s_plus(n, k, self.need_s()?),
        }
    }

    /// Closed-form size of the generated family.
    pub fn expected_size(&self) -> Result<BigInt> {
        let (n, k) = (self.n as i64, self.k as i64);
        let exact =
            |b: crate::bounds::BoundValue| b.integer_value().cloned().expect("integer bound");
        Ok(match self.kind {
            ConstructionKind::HmStar => exact(hm_bound(n, k)),
            ConstructionKind::FSt => exact(stabst_bound(
                n,
                k,
                self.need_s()? as i64,
                self.need_t()? as i64,
            )),
            ConstructionKind::FMulti => exact(stabmulti_bound(n, k, &self.parts)?),
            ConstructionKind::G6 => binom(n - 1, k - 1) - binom(n - 2 * k - 1, k - 1) + 3,
            ConstructionKind::G2s => {
                binom(n - 1, k - 1) - binom(n - 2 * k, k - 1) + self.need_s()? as i64
            }
            ConstructionKind::G2sPlus => {
                let s = self.need_s()?;
                binom(n - 1, k - 1) - binom(n - 2 * k, k - 1)
                    + s as i64
                    + g2s_plus_extra_count(self.n, self.k, s)
            }
        })
    }

    /// Choices made where the construction leaves freedom.
    pub fn notes(&self) -> &'static str {
        match self.kind {
            ConstructionKind::FSt => "F'_j: smallest sets through 1 avoiding S",
            ConstructionKind::FMulti => {
                "disjoint sets are consecutive blocks after r; extra sets through r are the smallest available"
            }
            ConstructionKind::G2s => "H_i: the smallest sets containing K' = [k+2, 2k] and avoiding 1",
            ConstructionKind::G2sPlus => "H_i = K' ∪ {2k+i}, K' = [k+2, 2k]",
            ConstructionKind::HmStar | ConstructionKind::G6 => "",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::induced_kneser_graph;
    use crate::invariants::ell;
    use crate::pattern::PatternGraph;
    use crate::subgraph::{has_matching, is_free, is_union_intersecting_violation};

    fn size(f: &Family) -> BigInt {
        BigInt::from(f.len())
    }

    #[test]
    fn first_sets_order() {
        let sets = first_sets(8, interval_mask(5, 8), 1, 2, 3).unwrap();
        let elems: Vec<_> = sets.iter().map(|s| s.elements()).collect();
        assert_eq!(elems, vec![vec![1, 5, 6], vec![1, 5, 7], vec![1, 6, 7]]);
        assert!(first_sets(8, interval_mask(7, 8), 1, 2, 2).is_err());
        assert_eq!(first_sets(8, interval_mask(7, 8), 1, 2, 0).unwrap(), vec![]);
    }

    #[test]
    fn hm_star() {
        let f = gen_hm_star(5, 2).unwrap();
        let elems: Vec<_> = f.iter().map(|s| s.elements()).collect();
        assert_eq!(elems, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(gen_hm_star(7, 3).unwrap().len(), 13);
        let f = gen_hm_star(9, 3).unwrap();
        assert!(!has_matching(&f, 2));
        assert_eq!(f.common_intersection(), Some(0));
        assert!(gen_hm_star(4, 2).is_err());
    }

    #[test]
    fn f_st_small() {
        let f = gen_f_st(10, 2, 2, 2).unwrap();
        assert_eq!(f.len(), 7);
        assert!(!is_union_intersecting_violation(&f, 2, 2));
        assert_eq!(ell(&f, 2).unwrap().value, 2);
        assert!(gen_f_st(11, 3, 3, 2).is_err());
        assert!(gen_f_st(12, 2, 3, 2).is_err());
    }

    #[test]
    fn f_multi_matches_closed_form() {
        let f = gen_f_multi(12, 2, &[2, 2, 1]).unwrap();
        let spec = ConstructionSpec::new(ConstructionKind::FMulti, 12, 2).with_parts(&[2, 2, 1]);
        assert_eq!(size(&f), spec.expected_size().unwrap());
        let g = induced_kneser_graph(&f);
        assert!(is_free(
            &g,
            &PatternGraph::complete_multipartite(&[2, 2, 1]).unwrap()
        ));
    }

    #[test]
    fn f_multi_two_parts_agrees_with_f_st() {
        for (n, k, s, t) in [(8, 2, 2, 2), (9, 2, 2, 3), (11, 3, 2, 3)] {
            let a = gen_f_multi(n, k, &[t, s]).unwrap();
            let b = gen_f_st(n, k, s, t).unwrap();
            assert_eq!(a.len(), b.len());
            let p = PatternGraph::complete_multipartite(&[s, t]).unwrap();
            assert!(is_free(&induced_kneser_graph(&a), &p));
            assert!(is_free(&induced_kneser_graph(&b), &p));
        }
    }

    #[test]
    fn g6_small() {
        let f = gen_g6(9, 2).unwrap();
        assert_eq!(f.len(), 7);
        assert!(is_free(
            &induced_kneser_graph(&f),
            &PatternGraph::even_cycle(6).unwrap()
        ));
        assert_eq!(ell(&f, 2).unwrap().value, 3);
        assert!(gen_g6(6, 2).is_err());
    }

    #[test]
    fn g2s_small() {
        let f = gen_g2s(12, 3, 4).unwrap();
        assert_eq!(f.len(), 44);
        let g = induced_kneser_graph(&f);
        assert!(is_free(&g, &PatternGraph::even_cycle(8).unwrap()));
        assert!(is_free(&g, &PatternGraph::path(8).unwrap()));
        assert_eq!(ell(&f, 2).unwrap().value, 4);
        assert!(gen_g2s(12, 3, 3).is_err());
        assert!(gen_g2s(8, 3, 4).is_err());
    }

    #[test]
    fn g2s_h_choices() {
        // Smallest choice: every H_i meets K.
        let f = gen_g2s(12, 3, 4).unwrap();
        let outside: Vec<_> = f
            .iter()
            .filter(|m| !m.contains(1))
            .map(|m| m.elements())
            .collect();
        assert_eq!(
            outside,
            vec![vec![2, 3, 4], vec![2, 5, 6], vec![3, 5, 6], vec![4, 5, 6]]
        );
        // K-disjoint choice keeps C_8 out but lets a P_8 through K.
        let d = gen_g2s_disjoint(12, 3, 4).unwrap();
        assert_eq!(d.len(), f.len());
        let g = induced_kneser_graph(&d);
        assert!(is_free(&g, &PatternGraph::even_cycle(8).unwrap()));
        assert!(!is_free(&g, &PatternGraph::path(8).unwrap()));
    }

    #[test]
    fn g2s_with_k2_has_small_ell() {
        // {K, {1,2}, {1,3}} covers every disjoint pair when k = 2.
        for (n, s) in [(7, 4), (10, 4), (12, 5)] {
            assert_eq!(ell(&gen_g2s(n, 2, s).unwrap(), 2).unwrap().value, 3);
        }
    }

    #[test]
    fn g2s_plus_counts() {
        for (n, k, s) in [(14, 4, 4), (12, 3, 4), (13, 4, 5), (11, 3, 4), (16, 5, 4)] {
            let base = gen_g2s_disjoint(n, k, s).unwrap();
            let ext = gen_g2s_plus(n, k, s).unwrap();
            let extra = ext.difference(&base).unwrap();
            assert_eq!(
                size(&extra),
                g2s_plus_extra_count(n, k, s),
                "n={n} k={k} s={s}"
            );
        }
        for (n, k, s) in [(12, 3, 4), (11, 3, 4)] {
            let ext = gen_g2s_plus(n, k, s).unwrap();
            let c = PatternGraph::even_cycle(2 * s).unwrap();
            assert!(is_free(&induced_kneser_graph(&ext), &c));
        }
        assert_eq!(g2s_plus_extra_count(14, 4, 4), BigInt::from(4));
        // s = k + 1: only {1, 2k+1, ..., 2k+s-2} itself.
        assert_eq!(g2s_plus_extra_count(14, 3, 4), BigInt::from(1));
        assert!(gen_g2s_plus(14, 2, 4).is_err());
    }

    #[test]
    fn compose_adds_top_sets() {
        let n = 9;
        let empty = Family::empty(n - 1, 2).unwrap();
        let f = compose_chi3(&empty, 3, n).unwrap();
        assert_eq!(size(&f), binom(9, 2) - binom(8, 2));
        let base = gen_f_st(8, 2, 2, 2).unwrap();
        let f = compose_chi3(&base, 3, n).unwrap();
        assert_eq!(f.len() - base.len(), 8);
        assert!(compose_chi3(&base, 3, 10).is_err());
    }

    #[test]
    fn spec_dispatch() {
        for kind in ConstructionKind::ALL {
            assert_eq!(kind.name().parse::<ConstructionKind>().unwrap(), kind);
        }
        let spec = ConstructionSpec::new(ConstructionKind::G6, 9, 2);
        assert_eq!(
            size(&spec.generate().unwrap()),
            spec.expected_size().unwrap()
        );
        let missing = ConstructionSpec::new(ConstructionKind::FSt, 10, 2);
        assert!(missing.generate().is_err());
    }
}
