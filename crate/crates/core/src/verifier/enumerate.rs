//! Enumeration of every union-closed family over `[n]` for `n <= 5`.
//!
//! Two independent routes:
//!
//! - [`NaiveFilter`] walks all selections of subsets of `2^[n]` and keeps the
//!   union-closed ones (`n <= 4`).
//! - [`OrderlyDfs`] adds candidate sets in decreasing mask order. Every union
//!   involving a new set is numerically at least as large as the set itself,
//!   so its membership has already been decided and consistency is checked
//!   on the spot; no branch ever dead-ends (`n <= 5`).
//!
//! Selections are bitmaps over mask values, so `2^n <= 64`.

use crate::error::{Error, Result};
use crate::family::{SetFamily, SetMask};

pub const MAX_FILTER_N: usize = 4;
pub const MAX_ENUMERATION_N: usize = 5;

fn check_n(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::EnumerationSize { n, max });
    }
    Ok(())
}

fn family_from_selection(n: usize, selection: u64) -> SetFamily {
    let members = (0..64u64)
        .filter(|&bit| selection & (1 << bit) != 0)
        .map(SetMask::from_bits)
        .collect();
    SetFamily::from_sorted_unchecked(n, members)
}

/// Every union-closed family over `[n]`, each exactly once, deterministic
/// order. `require_empty` restricts to families containing `∅`.
pub fn enumerate_union_closed(n: usize, require_empty: bool) -> Result<UnionClosedFamilies> {
    check_n(n, MAX_ENUMERATION_N)?;
    if n <= MAX_FILTER_N {
        Ok(UnionClosedFamilies::Filter(NaiveFilter::new(
            n,
            require_empty,
        )?))
    } else {
        Ok(UnionClosedFamilies::Dfs(OrderlyDfs::new(n, require_empty)?))
    }
}

#[derive(Debug, Clone)]
pub enum UnionClosedFamilies {
    Filter(NaiveFilter),
    Dfs(OrderlyDfs),
}

impl Iterator for UnionClosedFamilies {
    type Item = SetFamily;

    fn next(&mut self) -> Option<SetFamily> {
        match self {
            UnionClosedFamilies::Filter(it) => it.next(),
            UnionClosedFamilies::Dfs(it) => it.next(),
        }
    }
}

/// Filters every selection of candidate sets through [`SetFamily::is_union_closed`].
#[derive(Debug, Clone)]
pub struct NaiveFilter {
    n: usize,
    candidates: Vec<SetMask>,
    require_empty: bool,
    next_selection: u64,
    end: u64,
}

impl NaiveFilter {
    pub fn new(n: usize, require_empty: bool) -> Result<Self> {
        check_n(n, MAX_FILTER_N)?;
        let first = if require_empty { 1 } else { 0 };
        let candidates: Vec<SetMask> = (first..1u64 << n).map(SetMask::from_bits).collect();
        Ok(NaiveFilter {
            n,
            end: 1u64 << candidates.len(),
            candidates,
            require_empty,
            next_selection: 0,
        })
    }
}

impl Iterator for NaiveFilter {
    type Item = SetFamily;

    fn next(&mut self) -> Option<SetFamily> {
        while self.next_selection < self.end {
            let selection = self.next_selection;
            self.next_selection += 1;
            let mut members: Vec<SetMask> = self
                .candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| selection & (1 << i) != 0)
                .map(|(_, &m)| m)
                .collect();
            if self.require_empty {
                members.push(SetMask::EMPTY);
            }
            let Ok(family) = SetFamily::new(self.n, members) else {
                continue;
            };
            if family.is_union_closed() {
                return Some(family);
            }
        }
        None
    }
}

/// Depth-first generation with immediate closure checks.
#[derive(Debug, Clone)]
pub struct OrderlyDfs {
    n: usize,
    /// Candidate masks in decreasing order, `∅` last.
    order: Vec<u64>,
    require_empty: bool,
    stack: Vec<(usize, u64)>,
}

impl OrderlyDfs {
    pub fn new(n: usize, require_empty: bool) -> Result<Self> {
        check_n(n, MAX_ENUMERATION_N)?;
        Ok(OrderlyDfs {
            n,
            order: (0..1u64 << n).rev().collect(),
            require_empty,
            stack: vec![(0, 0)],
        })
    }

    fn consistent(selection: u64, candidate: u64) -> bool {
        let mut rest = selection;
        while rest != 0 {
            let other = rest.trailing_zeros() as u64;
            rest &= rest - 1;
            let union = other | candidate;
            if union != candidate && selection & (1 << union) == 0 {
                return false;
            }
        }
        true
    }
}

impl Iterator for OrderlyDfs {
    type Item = SetFamily;

    fn next(&mut self) -> Option<SetFamily> {
        while let Some((idx, selection)) = self.stack.pop() {
            if idx == self.order.len() {
                if selection != 0 {
                    return Some(family_from_selection(self.n, selection));
                }
                continue;
            }
            let candidate = self.order[idx];
            let forced = candidate == 0 && self.require_empty;
            if !forced {
                self.stack.push((idx + 1, selection));
            }
            if Self::consistent(selection, candidate) {
                self.stack.push((idx + 1, selection | (1 << candidate)));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_union_closed(1, true).unwrap().count(), 2);
        assert_eq!(enumerate_union_closed(1, false).unwrap().count(), 3);
        // Every selection of {1},{2},{1,2} except {{1},{2}}.
        assert_eq!(enumerate_union_closed(2, true).unwrap().count(), 7);
    }

    #[test]
    fn n2_families_listed() {
        let got: Vec<String> = enumerate_union_closed(2, true)
            .unwrap()
            .map(|f| f.to_string())
            .collect();
        assert!(got.iter().all(|s| s.starts_with("{∅")));
        assert!(!got.contains(&"{∅, {1}, {2}} over [2]".to_string()));
    }

    #[test]
    fn routes_agree_up_to_four() {
        for n in 1..=4 {
            for require_empty in [true, false] {
                let naive: BTreeSet<SetFamily> =
                    NaiveFilter::new(n, require_empty).unwrap().collect();
                let dfs: Vec<SetFamily> = OrderlyDfs::new(n, require_empty).unwrap().collect();
                let dfs_set: BTreeSet<SetFamily> = dfs.iter().cloned().collect();
                assert_eq!(dfs.len(), dfs_set.len(), "dfs duplicates at n={n}");
                assert_eq!(naive, dfs_set, "n={n} require_empty={require_empty}");
            }
        }
    }

    #[test]
    fn moore_family_counts() {
        // Union-closed families with ∅ on [n] are complements of closure systems.
        let expected = [2usize, 7, 61, 2480];
        for (n, &count) in (1..=4).zip(&expected) {
            assert_eq!(enumerate_union_closed(n, true).unwrap().count(), count);
        }
    }

    #[test]
    fn rejects_large_n() {
        assert!(enumerate_union_closed(6, true).is_err());
        assert!(enumerate_union_closed(0, true).is_err());
        assert!(NaiveFilter::new(5, true).is_err());
    }
}
