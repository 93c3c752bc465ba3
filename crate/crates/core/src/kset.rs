//! k-subsets of a small ground set and uniform families built from them.
//!
//! Element `i` of `[n] = {1, ..., n}` is stored as bit `i - 1` of a `u128`,
//! so disjointness is a single AND. A family keeps its members sorted by that
//! bit value; the index of a member in that order is its vertex label in the
//! induced Kneser graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 128;

/// The ground set `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::GroundSetTooLarge(n));
        }
        Ok(GroundSet { n })
    }

    pub fn size(self) -> usize {
        self.n
    }

    /// Mask with bits `0..n` set.
    pub fn mask(self) -> u128 {
        low_mask(self.n)
    }
}

fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Mask of the interval `[lo, hi]` (1-based, inclusive); empty when `lo > hi`.
pub fn interval_mask(lo: usize, hi: usize) -> u128 {
    if lo > hi || hi == 0 {
        return 0;
    }
    let lo = lo.max(1);
    low_mask(hi) & !low_mask(lo - 1)
}

/// One subset of `[n]`, with its cardinality cached.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    bits: u128,
    n: u8,
    k: u8,
}

impl KSet {
    /// Builds a set from 1-based elements.
    pub fn new(elements: &[usize], n: usize) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut bits = 0u128;
        for &e in elements {
            if e == 0 || e > ground.size() {
                return Err(Error::ElementOutOfRange {
                    element: e as i64,
                    n,
                });
            }
            let bit = 1u128 << (e - 1);
            if bits & bit != 0 {
                return Err(Error::DuplicateElement(e));
            }
            bits |= bit;
        }
        Ok(KSet::from_bits_unchecked(bits, n))
    }

    pub fn from_bits(bits: u128, n: usize) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if bits & !ground.mask() != 0 {
            let element = 128 - bits.leading_zeros() as usize;
            return Err(Error::ElementOutOfRange {
                element: element as i64,
                n,
            });
        }
        Ok(KSet::from_bits_unchecked(bits, n))
    }

    pub(crate) fn from_bits_unchecked(bits: u128, n: usize) -> Self {
        debug_assert!(n >= 1 && n <= MAX_N);
        debug_assert_eq!(bits & !low_mask(n), 0);
        KSet {
            bits,
            n: (n - 1) as u8,
            k: bits.count_ones() as u8,
        }
    }

    /// The interval `[lo, hi]` as a set.
    pub fn interval(lo: usize, hi: usize, n: usize) -> Result<Self> {
        if lo >= 1 && hi > n {
            return Err(Error::ElementOutOfRange {
                element: hi as i64,
                n,
            });
        }
        KSet::from_bits(interval_mask(lo, hi), n)
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn n(&self) -> usize {
        self.n as usize + 1
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.n() && self.bits >> (element - 1) & 1 == 1
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.k());
        let mut bits = self.bits;
        while bits != 0 {
            let tz = bits.trailing_zeros() as usize;
            out.push(tz + 1);
            bits &= bits - 1;
        }
        out
    }

    pub fn is_disjoint(&self, other: &KSet) -> bool {
        self.bits & other.bits == 0
    }

    pub fn meets_mask(&self, mask: u128) -> bool {
        self.bits & mask != 0
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ascending bit value (colex on elements).
impl Ord for KSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.cmp(&other.bits).then(self.n.cmp(&other.n))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub fn make_kset(elements: &[usize], n: usize) -> Result<KSet> {
    KSet::new(elements, n)
}

pub fn are_disjoint(a: &KSet, b: &KSet) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::GroundSetMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(a.is_disjoint(b))
}

/// All k-subsets of `[n]` in ascending bit-value order (Gosper's hack).
#[derive(Debug, Clone)]
pub struct KSets {
    n: usize,
    next: Option<u128>,
}

impl Iterator for KSets {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        let cur = self.next?;
        self.next = next_same_popcount(cur, self.n);
        Some(KSet::from_bits_unchecked(cur, self.n))
    }
}

fn next_same_popcount(x: u128, n: usize) -> Option<u128> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let (r, overflow) = x.overflowing_add(c);
    if overflow || r == 0 {
        return None;
    }
    let ones = ((r ^ x) >> 2) / c;
    let y = r | ones;
    if y & !low_mask(n) != 0 {
        None
    } else {
        Some(y)
    }
}

/// Streams the vertex set of `K(n, k)`.
pub fn enumerate_all_ksets(n: usize, k: usize) -> Result<KSets> {
    GroundSet::new(n)?;
    if k > n {
        return Err(Error::ParamsInfeasible(format!("k={k} exceeds n={n}")));
    }
    Ok(KSets {
        n,
        next: Some(low_mask(k)),
    })
}

/// A duplicate-free uniform family, members in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    into = "crate::format::FamilyJson",
    try_from = "crate::format::FamilyJson"
)]
pub struct Family {
    n: usize,
    k: usize,
    members: Vec<KSet>,
}

impl Family {
    pub fn new(n: usize, k: usize, mut members: Vec<KSet>) -> Result<Self> {
        GroundSet::new(n)?;
        if k > n {
            return Err(Error::ParamsInfeasible(format!("k={k} exceeds n={n}")));
        }
        for m in &members {
            if m.n() != n {
                return Err(Error::GroundSetMismatch {
                    left: n,
                    right: m.n(),
                });
            }
            if m.k() != k {
                return Err(Error::UniformityMismatch {
                    expected: k,
                    found: m.k(),
                });
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(w[0].to_string()));
        }
        Ok(Family { n, k, members })
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Family::new(n, k, Vec::new())
    }

    /// Builds a family from 1-based element lists.
    pub fn from_sets<S: AsRef<[usize]>>(n: usize, k: usize, sets: &[S]) -> Result<Self> {
        let members = sets
            .iter()
            .map(|s| KSet::new(s.as_ref(), n))
            .collect::<Result<Vec<_>>>()?;
        Family::new(n, k, members)
    }

    /// Every k-subset of `[n]`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        let members = enumerate_all_ksets(n, k)?.collect();
        Ok(Family { n, k, members })
    }

    /// Sets of `K(n,k)` selected by a predicate on the bit mask.
    pub fn filtered(n: usize, k: usize, keep: impl Fn(u128) -> bool) -> Result<Self> {
        let members = enumerate_all_ksets(n, k)?
            .filter(|s| keep(s.bits()))
            .collect();
        Ok(Family { n, k, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    pub fn index_of(&self, set: &KSet) -> Option<usize> {
        self.members.binary_search(set).ok()
    }

    pub fn contains(&self, set: &KSet) -> bool {
        self.index_of(set).is_some()
    }

    /// Set union with another family on the same ground set.
    pub fn union(&self, other: &Family) -> Result<Family> {
        self.check_compatible(other)?;
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        Ok(Family {
            n: self.n,
            k: self.k,
            members,
        })
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.check_compatible(other)?;
        let members = self
            .members
            .iter()
            .filter(|m| !other.contains(m))
            .copied()
            .collect();
        Ok(Family {
            n: self.n,
            k: self.k,
            members,
        })
    }

    /// The family with the members at `indices` removed.
    pub fn without(&self, indices: &[usize]) -> Family {
        let members = self
            .members
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, m)| *m)
            .collect();
        Family {
            n: self.n,
            k: self.k,
            members,
        }
    }

    /// Subfamily made of the members at `indices`.
    pub fn select(&self, indices: &[usize]) -> Family {
        let mut members: Vec<KSet> = indices.iter().map(|&i| self.members[i]).collect();
        members.sort_unstable();
        members.dedup();
        Family {
            n: self.n,
            k: self.k,
            members,
        }
    }

    /// Intersection of all members; `None` for the empty family.
    pub fn common_intersection(&self) -> Option<u128> {
        self.members.iter().map(|m| m.bits()).reduce(|a, b| a & b)
    }

    fn check_compatible(&self, other: &Family) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.k != other.k {
            return Err(Error::UniformityMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a KSet;
    type IntoIter = std::slice::Iter<'a, KSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn make_kset_encodes_bits() {
        let s = make_kset(&[1, 2], 5).unwrap();
        assert_eq!(s.bits(), 0b00011);
        assert_eq!(s.k(), 2);
        let empty = make_kset(&[], 5).unwrap();
        assert_eq!(empty.k(), 0);
        assert_eq!(empty.bits(), 0);
    }

    #[test]
    fn make_kset_construction_interval() {
        // K = [2, k+1] from the cycle construction, k = 3
        let s = make_kset(&[2, 3, 4], 9).unwrap();
        assert_eq!(s, KSet::interval(2, 4, 9).unwrap());
        assert_eq!(s.elements(), vec![2, 3, 4]);
    }

    #[test]
    fn make_kset_errors() {
        assert!(matches!(
            make_kset(&[0, 1], 5),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            make_kset(&[6], 5),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert_eq!(make_kset(&[2, 2], 5), Err(Error::DuplicateElement(2)));
        assert!(make_kset(&[1], 129).is_err());
        assert!(make_kset(&[128], 128).is_ok());
    }

    #[test]
    fn disjointness() {
        let a = make_kset(&[1, 2], 5).unwrap();
        let b = make_kset(&[3, 4], 5).unwrap();
        let c = make_kset(&[2, 3], 5).unwrap();
        assert!(are_disjoint(&a, &b).unwrap());
        assert!(!are_disjoint(&a, &c).unwrap());
        assert!(!are_disjoint(&a, &a).unwrap());
        let d = make_kset(&[3, 4], 6).unwrap();
        assert_eq!(
            are_disjoint(&a, &d),
            Err(Error::GroundSetMismatch { left: 5, right: 6 })
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all_ksets(4, 2).unwrap().count(), 6);
        let petersen: Vec<_> = enumerate_all_ksets(5, 2).unwrap().collect();
        assert_eq!(petersen.len(), 10);
        let zero: Vec<_> = enumerate_all_ksets(7, 0).unwrap().collect();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].k(), 0);
        assert_eq!(enumerate_all_ksets(6, 6).unwrap().count(), 1);
        assert!(enumerate_all_ksets(3, 4).is_err());
    }

    #[test]
    fn enumeration_at_full_width() {
        assert_eq!(enumerate_all_ksets(128, 1).unwrap().count(), 128);
        assert_eq!(enumerate_all_ksets(128, 2).unwrap().count(), 128 * 127 / 2);
        assert_eq!(enumerate_all_ksets(128, 128).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_matches_binomial_and_is_sorted() {
        for n in 1..=10 {
            for k in 0..=n {
                let sets: Vec<_> = enumerate_all_ksets(n, k).unwrap().collect();
                assert_eq!(sets.len(), binom(n, k), "n={n} k={k}");
                assert!(sets.windows(2).all(|w| w[0] < w[1]));
                assert!(sets.iter().all(|s| s.k() == k && s.n() == n));
            }
        }
    }

    #[test]
    fn family_rejects_duplicates_and_sorts() {
        let f = Family::from_sets(5, 2, &[vec![3, 4], vec![1, 2]]).unwrap();
        assert_eq!(f.members()[0].elements(), vec![1, 2]);
        assert!(matches!(
            Family::from_sets(5, 2, &[vec![1, 2], vec![2, 1]]),
            Err(Error::DuplicateMember(_))
        ));
        assert!(matches!(
            Family::from_sets(5, 2, &[vec![1, 2, 3]]),
            Err(Error::UniformityMismatch { .. })
        ));
    }

    #[test]
    fn family_set_operations() {
        let a = Family::from_sets(6, 2, &[vec![1, 2], vec![1, 3]]).unwrap();
        let b = Family::from_sets(6, 2, &[vec![1, 3], vec![4, 5]]).unwrap();
        assert_eq!(a.union(&b).unwrap().len(), 3);
        assert_eq!(b.difference(&a).unwrap().len(), 1);
        assert_eq!(a.common_intersection(), Some(1));
        assert_eq!(Family::empty(6, 2).unwrap().common_intersection(), None);
    }

    #[test]
    fn interval_masks() {
        assert_eq!(interval_mask(2, 4), 0b1110);
        assert_eq!(interval_mask(5, 4), 0);
        assert_eq!(interval_mask(1, 128), u128::MAX);
    }
}
