//! Set families over a small ground set `[n]`, stored as sorted bitmasks.
//!
//! Element `i` (1-based) lives at bit `i - 1`. Every [`SetFamily`] is kept
//! sorted by mask value and free of duplicates, so membership is a binary
//! search and two families are equal exactly when their member lists are.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// Largest supported ground set.
pub const MAX_GROUND_SET: usize = 62;

/// Largest support that [`SetFamily::canonical_form`] will search over.
pub const MAX_CANONICAL_SUPPORT: usize = 8;

/// A subset of `[n]` as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetMask(u64);

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SetMask(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `[n] = {1, ..., n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n >= 64 {
            SetMask(u64::MAX)
        } else {
            SetMask((1u64 << n) - 1)
        }
    }

    pub fn singleton(element: usize) -> Self {
        debug_assert!((1..=64).contains(&element));
        SetMask(1u64 << (element - 1))
    }

    /// Builds a mask from 1-based element indices.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for element in elements {
            if element == 0 || element > MAX_GROUND_SET {
                return Err(Error::ElementOutOfRange {
                    element,
                    n: MAX_GROUND_SET,
                });
            }
            bits |= 1u64 << (element - 1);
        }
        Ok(SetMask(bits))
    }

    pub fn contains(self, element: usize) -> bool {
        (1..=64).contains(&element) && self.0 & (1u64 << (element - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: SetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: SetMask) -> bool {
        self.0 & other.0 == 0
    }

    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(SetMask::full(n))
    }

    /// Highest element present, or 0 for the empty set.
    pub fn max_element(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Shifts every element up by `offset` labels.
    pub fn shifted(self, offset: usize) -> Self {
        SetMask(self.0 << offset)
    }
}

impl BitOr for SetMask {
    type Output = SetMask;
    fn bitor(self, rhs: SetMask) -> SetMask {
        SetMask(self.0 | rhs.0)
    }
}

impl BitAnd for SetMask {
    type Output = SetMask;
    fn bitand(self, rhs: SetMask) -> SetMask {
        SetMask(self.0 & rhs.0)
    }
}

impl Sub for SetMask {
    type Output = SetMask;
    fn sub(self, rhs: SetMask) -> SetMask {
        SetMask(self.0 & !rhs.0)
    }
}

impl Not for SetMask {
    type Output = SetMask;
    fn not(self) -> SetMask {
        SetMask(!self.0)
    }
}

impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (idx, e) in self.elements().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SetMask {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for SetMask {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        SetMask::from_elements(elements).map_err(serde::de::Error::custom)
    }
}

/// Iterator over the 1-based elements of a [`SetMask`].
#[derive(Debug, Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(bit + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// A nonempty, sorted, duplicate-free collection of subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetFamily {
    n: usize,
    members: Vec<SetMask>,
}

impl SetFamily {
    /// Sorts and deduplicates `members`; fails if any member escapes `[n]`
    /// or nothing is left.
    pub fn new<I: IntoIterator<Item = SetMask>>(n: usize, members: I) -> Result<Self> {
        check_ground_set(n)?;
        let mut members: Vec<SetMask> = members.into_iter().collect();
        if let Some(&set) = members.iter().find(|m| !m.fits(n)) {
            return Err(Error::SetOutOfRange { set, n });
        }
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(SetFamily { n, members })
    }

    /// Caller guarantees the members are sorted, unique, nonempty and fit in `[n]`.
    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<SetMask>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.fits(n)));
        SetFamily { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[SetMask] {
        &self.members
    }

    /// `m = |F|`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SetMask> {
        self.members.iter()
    }

    pub fn contains(&self, set: SetMask) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn contains_empty(&self) -> bool {
        self.members[0].is_empty()
    }

    /// Same members over a different ground set size.
    pub fn with_ground_set(&self, n: usize) -> Result<Self> {
        SetFamily::new(n, self.members.iter().copied())
    }

    pub fn is_union_closed(&self) -> bool {
        let members = &self.members;
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| self.contains(a | b)))
    }

    /// Smallest union-closed family containing every generator.
    pub fn union_closure<I: IntoIterator<Item = SetMask>>(generators: I, n: usize) -> Result<Self> {
        check_ground_set(n)?;
        let mut seen = HashSet::new();
        let mut members = Vec::new();
        for g in generators {
            if !g.fits(n) {
                return Err(Error::SetOutOfRange { set: g, n });
            }
            if seen.insert(g) {
                members.push(g);
            }
        }
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        // Every pair (i, j) with j < i is joined exactly once.
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..i {
                let u = a | members[j];
                if seen.insert(u) {
                    members.push(u);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Ok(SetFamily { n, members })
    }

    /// Adds `∅` if it is not already a member.
    pub fn normalize_with_empty(&self) -> Self {
        if self.contains_empty() {
            return self.clone();
        }
        let mut members = Vec::with_capacity(self.members.len() + 1);
        members.push(SetMask::EMPTY);
        members.extend_from_slice(&self.members);
        SetFamily { n: self.n, members }
    }

    /// Union of all members.
    pub fn support(&self) -> SetMask {
        self.members.iter().fold(SetMask::EMPTY, |acc, &m| acc | m)
    }

    /// Number of members containing each element; index 0 is element 1.
    pub fn element_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n];
        for m in &self.members {
            for e in m.elements() {
                counts[e - 1] += 1;
            }
        }
        counts
    }

    /// Number of members containing `element`.
    pub fn count_containing(&self, element: usize) -> Result<usize> {
        self.check_element(element)?;
        Ok(self.members.iter().filter(|m| m.contains(element)).count())
    }

    /// `Freq(i) = |{F in F : i in F}| / m`.
    pub fn frequency(&self, element: usize) -> Result<Rational> {
        let count = self.count_containing(element)?;
        Ok(ratio(count, self.len()))
    }

    /// All element frequencies, index 0 is element 1.
    pub fn frequencies(&self) -> Vec<Rational> {
        let m = BigInt::from(self.len());
        self.element_counts()
            .into_iter()
            .map(|c| Rational::new(BigInt::from(c), m.clone()))
            .collect()
    }

    pub fn frequency_order(&self) -> FrequencyOrder {
        FrequencyOrder::from_counts(&self.element_counts())
    }

    /// `f_k`, the k-th largest element frequency.
    pub fn kth_frequency(&self, k: usize) -> Result<Rational> {
        Ok(ratio(self.kth_count(k)?, self.len()))
    }

    /// Member count behind `f_k`.
    pub fn kth_count(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.n {
            return Err(Error::KOutOfRange {
                k,
                min: 1,
                max: self.n,
            });
        }
        let mut counts = self.element_counts();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(counts[k - 1])
    }

    /// Removes the `k - 1` most frequent elements from every member.
    pub fn project_away_top(&self, k: usize) -> Result<Projection> {
        self.check_projection_k(k)?;
        let order = self.frequency_order();
        let removed = order.top(k - 1);
        Ok(self.project_away(removed, order))
    }

    /// Projection away from an explicit set of removed elements.
    pub fn project_away(&self, removed: SetMask, order: FrequencyOrder) -> Projection {
        let mut preimages: BTreeMap<SetMask, usize> = BTreeMap::new();
        for &m in &self.members {
            *preimages.entry(m - removed).or_insert(0) += 1;
        }
        let (members, preimage_sizes): (Vec<_>, Vec<_>) = preimages.into_iter().unzip();
        Projection {
            family: SetFamily::from_sorted_unchecked(self.n, members),
            preimage_sizes,
            removed,
            order,
        }
    }

    /// Number of members of `F` over each projected set, aligned with the
    /// projected family's members.
    pub fn preimage_sizes(&self, k: usize) -> Result<Vec<usize>> {
        Ok(self.project_away_top(k)?.preimage_sizes)
    }

    /// Applies a relabeling: `mapping[i - 1]` is the new label of element `i`.
    pub fn relabel(&self, mapping: &[usize], n: usize) -> Result<Self> {
        check_ground_set(n)?;
        let members = self.members.iter().map(|&m| {
            m.elements().fold(SetMask::EMPTY, |acc, e| {
                acc | SetMask::singleton(mapping[e - 1])
            })
        });
        SetFamily::new(n, members)
    }

    /// Lexicographically least relabeling of the family over its support.
    ///
    /// The result lives on `[s]` where `s` is the support size (or `[1]` for
    /// `{∅}`), so padding elements that no member uses are ignored.
    pub fn canonical_form(&self) -> Result<Self> {
        let support: Vec<usize> = self.support().elements().collect();
        let s = support.len();
        if s > MAX_CANONICAL_SUPPORT {
            return Err(Error::SupportTooLarge {
                support: s,
                max: MAX_CANONICAL_SUPPORT,
            });
        }
        // Compress to bits 0..s, remembering each member as a list of positions.
        let compressed: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|m| {
                m.elements()
                    .map(|e| support.binary_search(&e).expect("element in support"))
                    .collect()
            })
            .collect();

        let mut perm: Vec<usize> = (0..s).collect();
        let mut best: Option<Vec<u64>> = None;
        let mut image = Vec::with_capacity(compressed.len());
        loop {
            image.clear();
            image.extend(
                compressed
                    .iter()
                    .map(|pos| pos.iter().fold(0u64, |acc, &p| acc | (1u64 << perm[p]))),
            );
            image.sort_unstable();
            if best
                .as_ref()
                .map_or(true, |b| image.as_slice() < b.as_slice())
            {
                best = Some(image.clone());
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let members = best
            .expect("at least one permutation")
            .into_iter()
            .map(SetMask::from_bits)
            .collect();
        Ok(SetFamily::from_sorted_unchecked(s.max(1), members))
    }

    /// Every `T` of `j` elements such that each element of `T` is at least as
    /// frequent as each element outside it. The first entry is the default
    /// tie-break (ascending index).
    pub fn tie_consistent_tops(&self, j: usize) -> Vec<SetMask> {
        let counts = self.element_counts();
        if j == 0 {
            return vec![SetMask::EMPTY];
        }
        if j > self.n {
            return Vec::new();
        }
        let order = FrequencyOrder::from_counts(&counts);
        let cutoff = counts[order.as_slice()[j - 1] - 1];
        let forced = (1..=self.n)
            .filter(|&e| counts[e - 1] > cutoff)
            .fold(SetMask::EMPTY, |acc, e| acc | SetMask::singleton(e));
        let tied: Vec<usize> = (1..=self.n).filter(|&e| counts[e - 1] == cutoff).collect();
        let need = j - forced.len();
        let mut tops = Vec::new();
        for_each_combination(tied.len(), need, &mut |chosen| {
            let extra = chosen
                .iter()
                .fold(SetMask::EMPTY, |acc, &i| acc | SetMask::singleton(tied[i]));
            tops.push(forced | extra);
        });
        tops
    }

    fn check_element(&self, element: usize) -> Result<()> {
        if element == 0 || element > self.n {
            return Err(Error::ElementOutOfRange { element, n: self.n });
        }
        Ok(())
    }

    pub(crate) fn check_projection_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n + 1 {
            return Err(Error::KOutOfRange {
                k,
                min: 1,
                max: self.n + 1,
            });
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a SetMask;
    type IntoIter = std::slice::Iter<'a, SetMask>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, m) in self.members.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}} over [{}]", self.n)
    }
}

pub(crate) fn check_ground_set(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND_SET {
        return Err(Error::GroundSetSize(n));
    }
    Ok(())
}

/// Elements in nonincreasing frequency, ties broken by ascending index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FrequencyOrder(Vec<usize>);

impl FrequencyOrder {
    /// `counts[i]` is the member count of element `i + 1`.
    pub fn from_counts(counts: &[usize]) -> Self {
        let mut order: Vec<usize> = (1..=counts.len()).collect();
        order.sort_by(|&a, &b| match counts[b - 1].cmp(&counts[a - 1]) {
            Ordering::Equal => a.cmp(&b),
            other => other,
        });
        FrequencyOrder(order)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// The `j` most frequent elements.
    pub fn top(&self, j: usize) -> SetMask {
        self.0
            .iter()
            .take(j)
            .fold(SetMask::EMPTY, |acc, &e| acc | SetMask::singleton(e))
    }

    /// `mapping[e - 1]` = rank (1-based) of element `e`; relabels the family
    /// so that element 1 is the most frequent.
    pub fn rank_mapping(&self) -> Vec<usize> {
        let mut mapping = vec![0; self.0.len()];
        for (rank, &e) in self.0.iter().enumerate() {
            mapping[e - 1] = rank + 1;
        }
        mapping
    }
}

/// Result of deleting the top elements from every member of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    /// Projected family, still labeled over the original `[n]`; removed
    /// elements never occur in it.
    pub family: SetFamily,
    /// `preimage_sizes[i]` members of the original family map to `family.members()[i]`.
    pub preimage_sizes: Vec<usize>,
    pub removed: SetMask,
    pub order: FrequencyOrder,
}

/// Lower bound on the frequency of an element `a` that lies in `f` of the `p`
/// projected sets, when each projected set has at most `2^(k-1)` preimages:
/// `f / (f + 2^(k-1) (p - f))`.
pub fn projected_frequency_bound(f: u64, p: u64, k: u32) -> Result<Rational> {
    if f == 0 || f > p || k == 0 {
        return Err(Error::InvalidCount { f, p });
    }
    let fiber = BigInt::from(1u8) << (k - 1);
    let f_big = BigInt::from(f);
    let denom = f_big.clone() + fiber * BigInt::from(p - f);
    Ok(Rational::new(f_big, denom))
}

/// Advances `perm` to the next lexicographic permutation; false after the last.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Calls `visit` with every `r`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, r: usize, visit: &mut dyn FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        visit(&idx);
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - r {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn set(elements: &[usize]) -> SetMask {
        SetMask::from_elements(elements.iter().copied()).unwrap()
    }

    fn family(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| set(s))).unwrap()
    }

    fn near_cube_3() -> SetFamily {
        family(3, &[&[], &[1], &[2], &[1, 2], &[1, 2, 3]])
    }

    fn powerset(n: usize) -> SetFamily {
        SetFamily::new(n, (0..1u64 << n).map(SetMask::from_bits)).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            SetFamily::new(0, [SetMask::EMPTY]),
            Err(Error::GroundSetSize(0))
        );
        assert_eq!(
            SetFamily::new(63, [SetMask::EMPTY]),
            Err(Error::GroundSetSize(63))
        );
        assert_eq!(SetFamily::new(2, []), Err(Error::EmptyFamily));
        assert!(matches!(
            SetFamily::new(2, [set(&[3])]),
            Err(Error::SetOutOfRange { .. })
        ));
        let f = SetFamily::new(2, [set(&[2]), set(&[1]), set(&[2])]).unwrap();
        assert_eq!(f.members(), &[set(&[1]), set(&[2])]);
    }

    #[test]
    fn union_closed_examples() {
        assert!(family(1, &[&[]]).is_union_closed());
        assert!(!family(2, &[&[1], &[2]]).is_union_closed());
        assert!(near_cube_3().is_union_closed());
    }

    #[test]
    fn closure_examples() {
        let c = SetFamily::union_closure([set(&[1]), set(&[2])], 2).unwrap();
        assert_eq!(c, family(2, &[&[1], &[2], &[1, 2]]));
        let c = SetFamily::union_closure([SetMask::EMPTY], 1).unwrap();
        assert_eq!(c, family(1, &[&[]]));
    }

    #[test]
    fn closure_of_singletons_matches_fixpoint_oracle() {
        // Oracle: repeated pairwise unions until nothing new appears.
        let mut current: std::collections::BTreeSet<u64> = [1u64, 2, 4].into_iter().collect();
        loop {
            let next: std::collections::BTreeSet<u64> = current
                .iter()
                .flat_map(|&a| current.iter().map(move |&b| a | b))
                .chain(current.iter().copied())
                .collect();
            if next == current {
                break;
            }
            current = next;
        }
        assert_eq!(current.len(), 7);
        let c = SetFamily::union_closure([set(&[1]), set(&[2]), set(&[3])], 3).unwrap();
        let got: Vec<u64> = c.iter().map(|m| m.bits()).collect();
        assert_eq!(got, current.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            family(1, &[&[1]]).normalize_with_empty(),
            family(1, &[&[], &[1]])
        );
        let f = family(1, &[&[], &[1]]);
        assert_eq!(f.normalize_with_empty(), f);
        let f = family(2, &[&[1], &[1, 2]]);
        assert_eq!(f.frequency(1).unwrap(), ratio(1, 1));
        let g = f.normalize_with_empty();
        assert_eq!(g, family(2, &[&[], &[1], &[1, 2]]));
        assert_eq!(g.frequency(1).unwrap(), ratio(2, 3));
    }

    #[test]
    fn frequency_examples() {
        assert_eq!(near_cube_3().frequency(3).unwrap(), ratio(1, 5));
        assert_eq!(powerset(2).frequency(1).unwrap(), ratio(1, 2));
        assert_eq!(
            family(2, &[&[], &[1], &[1, 2]]).frequency(1).unwrap(),
            ratio(2, 3)
        );
        assert!(matches!(
            powerset(2).frequency(3),
            Err(Error::ElementOutOfRange { element: 3, n: 2 })
        ));
        assert!(powerset(2).frequency(0).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(near_cube_3().frequency_order().as_slice(), &[1, 2, 3]);
        assert_eq!(
            family(2, &[&[], &[2]]).frequency_order().as_slice(),
            &[2, 1]
        );
        assert_eq!(powerset(3).frequency_order().as_slice(), &[1, 2, 3]);
    }

    #[test]
    fn kth_frequency_examples() {
        let near4 = family(
            4,
            &[
                &[],
                &[1],
                &[2],
                &[3],
                &[1, 2],
                &[1, 3],
                &[2, 3],
                &[1, 2, 3],
                &[1, 2, 3, 4],
            ],
        );
        assert_eq!(near4.kth_frequency(4).unwrap(), ratio(1, 9));
        assert_eq!(powerset(2).kth_frequency(2).unwrap(), ratio(1, 2));
        assert_eq!(
            family(2, &[&[], &[1], &[1, 2]]).kth_frequency(2).unwrap(),
            ratio(1, 3)
        );
        assert!(powerset(2).kth_frequency(3).is_err());
        assert!(powerset(2).kth_frequency(0).is_err());
    }

    #[test]
    fn support_examples() {
        assert_eq!(family(1, &[&[]]).support(), SetMask::EMPTY);
        assert_eq!(near_cube_3().support(), set(&[1, 2, 3]));
        assert_eq!(family(3, &[&[1], &[3]]).support(), set(&[1, 3]));
    }

    #[test]
    fn projection_examples() {
        let p = near_cube_3().project_away_top(3).unwrap();
        assert_eq!(p.family, family(3, &[&[], &[3]]));
        assert_eq!(p.preimage_sizes, vec![4, 1]);
        assert_eq!(p.removed, set(&[1, 2]));

        let f = near_cube_3();
        assert_eq!(f.project_away_top(1).unwrap().family, f);

        let p = powerset(2).project_away_top(3).unwrap();
        assert_eq!(p.family, family(2, &[&[]]));
        assert_eq!(powerset(2).preimage_sizes(2).unwrap(), vec![2, 2]);
        assert_eq!(family(3, &[&[]]).preimage_sizes(2).unwrap(), vec![1]);
        assert!(powerset(2).project_away_top(4).is_err());
    }

    #[test]
    fn projected_bound_examples() {
        assert_eq!(projected_frequency_bound(5, 5, 4).unwrap(), ratio(1, 1));
        assert_eq!(projected_frequency_bound(1, 2, 2).unwrap(), ratio(1, 3));
        assert_eq!(projected_frequency_bound(2, 3, 3).unwrap(), ratio(1, 3));
        assert!(projected_frequency_bound(0, 3, 3).is_err());
        assert!(projected_frequency_bound(4, 3, 3).is_err());
    }

    #[test]
    fn canonical_examples() {
        let f = family(2, &[&[], &[2]]);
        assert_eq!(f.canonical_form().unwrap(), family(1, &[&[], &[1]]));
        assert_eq!(near_cube_3().canonical_form().unwrap(), near_cube_3());
        assert_eq!(powerset(2).canonical_form().unwrap(), powerset(2));
        assert_eq!(
            family(5, &[&[]]).canonical_form().unwrap(),
            family(1, &[&[]])
        );
        let wide = SetFamily::new(9, [SetMask::full(9)]).unwrap();
        assert!(matches!(
            wide.canonical_form(),
            Err(Error::SupportTooLarge { .. })
        ));
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        // {∅,{3},{1,3},{1,2,3}} with labels permuted.
        let a = family(3, &[&[], &[3], &[1, 3], &[1, 2, 3]]);
        let b = family(4, &[&[], &[2], &[2, 4], &[1, 2, 4]]);
        assert_eq!(a.canonical_form().unwrap(), b.canonical_form().unwrap());
        assert_ne!(
            a.canonical_form().unwrap(),
            near_cube_3().canonical_form().unwrap()
        );
    }

    #[test]
    fn tie_consistent_tops_enumerates_ties() {
        // All three elements tie in the cube.
        assert_eq!(powerset(3).tie_consistent_tops(1).len(), 3);
        assert_eq!(powerset(3).tie_consistent_tops(2).len(), 3);
        assert_eq!(powerset(3).tie_consistent_tops(2)[0], set(&[1, 2]));
        // 1 and 2 tie above 3.
        assert_eq!(near_cube_3().tie_consistent_tops(2), vec![set(&[1, 2])]);
        assert_eq!(near_cube_3().tie_consistent_tops(1).len(), 2);
        assert_eq!(near_cube_3().tie_consistent_tops(0), vec![SetMask::EMPTY]);
    }

    #[test]
    fn combinations_are_complete() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, &mut |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        let mut seen = 0;
        for_each_combination(3, 0, &mut |_| seen += 1);
        assert_eq!(seen, 1);
        let mut seen = 0;
        for_each_combination(3, 3, &mut |_| seen += 1);
        assert_eq!(seen, 1);
    }

    #[test]
    fn mask_display() {
        assert_eq!(SetMask::EMPTY.to_string(), "∅");
        assert_eq!(set(&[1, 3]).to_string(), "{1,3}");
        assert_eq!(set(&[62]).elements().collect::<Vec<_>>(), vec![62]);
    }
}
