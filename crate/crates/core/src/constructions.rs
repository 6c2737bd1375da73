//! Named families: cubes, near-cubes, direct sums and the slow-convergence
//! example whose k-th frequency stays strictly below one half.

use crate::error::{Error, Result};
use crate::family::{check_ground_set, SetFamily, SetMask, MAX_GROUND_SET};

/// Constructions refuse to materialize more members than this.
pub const MAX_FAMILY_SIZE: u128 = 1 << 24;

fn check_size(size: u128) -> Result<()> {
    if size > MAX_FAMILY_SIZE {
        return Err(Error::FamilyTooLarge {
            size,
            limit: MAX_FAMILY_SIZE,
        });
    }
    Ok(())
}

/// All `2^d` subsets of `[d]`. For `d = 0` this is `{∅}` over `[1]`.
pub fn power_cube(d: usize) -> Result<SetFamily> {
    if d > MAX_GROUND_SET {
        return Err(Error::GroundSetSize(d));
    }
    check_size(1u128 << d)?;
    let members = (0..1u64 << d).map(SetMask::from_bits).collect();
    Ok(SetFamily::from_sorted_unchecked(d.max(1), members))
}

/// `2^[k-1] ∪ {[k-1] ∪ extra}` with `extra` nonempty and disjoint from `[k-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NearKCubeSpec {
    k: usize,
    extra: SetMask,
}

impl NearKCubeSpec {
    pub fn new(k: usize, extra: SetMask) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidNearCube("k must be at least 1"));
        }
        if extra.is_empty() {
            return Err(Error::InvalidNearCube(
                "the extra elements must be nonempty",
            ));
        }
        if k - 1 > MAX_GROUND_SET || !extra.is_disjoint(SetMask::full(k - 1)) {
            return Err(Error::InvalidNearCube(
                "the extra elements must avoid [k-1]",
            ));
        }
        if extra.max_element() > MAX_GROUND_SET {
            return Err(Error::GroundSetSize(extra.max_element()));
        }
        Ok(NearKCubeSpec { k, extra })
    }

    /// The smallest instance, `extra = {k}`.
    pub fn minimal(k: usize) -> Result<Self> {
        if k == 0 || k > MAX_GROUND_SET {
            return Err(Error::InvalidNearCube("k must lie in 1..=62"));
        }
        NearKCubeSpec::new(k, SetMask::singleton(k))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn extra(&self) -> SetMask {
        self.extra
    }

    /// The single member outside the cube.
    pub fn top_set(&self) -> SetMask {
        SetMask::full(self.k - 1) | self.extra
    }
}

pub fn near_k_cube(spec: NearKCubeSpec) -> Result<SetFamily> {
    let k = spec.k();
    check_size((1u128 << (k - 1)) + 1)?;
    let top = spec.top_set();
    let mut members: Vec<SetMask> = (0..1u64 << (k - 1)).map(SetMask::from_bits).collect();
    members.push(top);
    Ok(SetFamily::from_sorted_unchecked(top.max_element(), members))
}

/// Direct sum of families whose ground sets are shifted into consecutive,
/// disjoint label ranges: part `i` occupies the labels right after part `i - 1`.
pub fn direct_sum(parts: &[SetFamily]) -> Result<SetFamily> {
    let total_n: usize = parts.iter().map(SetFamily::n).sum();
    if total_n > MAX_GROUND_SET {
        return Err(Error::GroundSetSize(total_n));
    }
    let mut offset = 0;
    let shifted: Vec<Vec<SetMask>> = parts
        .iter()
        .map(|p| {
            let s = p.iter().map(|m| m.shifted(offset)).collect();
            offset += p.n();
            s
        })
        .collect();
    sum_of_disjoint(total_n.max(1), &shifted)
}

/// Direct sum of families that already live on a common `[n]` with pairwise
/// disjoint supports.
pub fn direct_sum_disjoint(n: usize, parts: &[SetFamily]) -> Result<SetFamily> {
    check_ground_set(n)?;
    let mut used = SetMask::EMPTY;
    for part in parts {
        let support = part.support();
        if !support.fits(n) {
            return Err(Error::SetOutOfRange { set: support, n });
        }
        let overlap = used & support;
        if !overlap.is_empty() {
            return Err(Error::OverlappingSupports(overlap));
        }
        used = used | support;
    }
    let members: Vec<Vec<SetMask>> = parts.iter().map(|p| p.members().to_vec()).collect();
    sum_of_disjoint(n, &members)
}

fn sum_of_disjoint(n: usize, parts: &[Vec<SetMask>]) -> Result<SetFamily> {
    let size = parts
        .iter()
        .try_fold(1u128, |acc, p| acc.checked_mul(p.len() as u128))
        .unwrap_or(u128::MAX);
    check_size(size)?;
    let mut acc = vec![SetMask::EMPTY];
    for part in parts {
        acc = acc
            .iter()
            .flat_map(|&a| part.iter().map(move |&b| a | b))
            .collect();
    }
    SetFamily::new(n, acc)
}

/// `k - 1` disjoint blocks of `n + 1` elements each; block `i` contributes
/// `{∅} ∪ {F ⊆ S_i : s_i ∈ F}` where `s_i` is the block's first element.
pub fn nagel_example(n: usize, k: usize) -> Result<SetFamily> {
    if k < 2 {
        return Err(Error::KOutOfRange {
            k,
            min: 2,
            max: usize::MAX,
        });
    }
    if n == 0 {
        return Err(Error::GroundSetSize(0));
    }
    let width = (n + 1)
        .checked_mul(k - 1)
        .filter(|&w| w <= MAX_GROUND_SET)
        .ok_or(Error::GroundSetSize((n + 1).saturating_mul(k - 1)))?;
    let block = nagel_block(n)?;
    let parts = vec![block; k - 1];
    let family = direct_sum(&parts)?;
    debug_assert_eq!(family.n(), width);
    Ok(family)
}

/// `{∅} ∪ {F ⊆ [n + 1] : 1 ∈ F}`.
fn nagel_block(n: usize) -> Result<SetFamily> {
    check_size((1u128 << n) + 1)?;
    let members = std::iter::once(SetMask::EMPTY)
        .chain((0..1u64 << n).map(|rest| SetMask::from_bits((rest << 1) | 1)));
    SetFamily::new(n + 1, members)
}
