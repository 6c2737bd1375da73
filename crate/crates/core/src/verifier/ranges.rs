//! Which of the three size regimes settles a given `(m, k)`.
//!
//! - small families: `m <= 2^k + 1`;
//! - medium families (`k >= 5`): `2^k + 2 <= m <= 2^(3(k-1))`;
//! - large families: `m >= 4, 6, 14` for `k = 2, 3, 4`, and
//!   `m >= 2^(2.71(k-1))` for `k >= 5`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Small,
    Medium,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeKind {
    Small,
    Medium,
    Large,
    Multiple,
}

/// Inclusive interval of family sizes; `hi = None` means unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeInterval {
    #[serde(serialize_with = "decimal")]
    pub lo: BigUint,
    #[serde(serialize_with = "decimal_opt")]
    pub hi: Option<BigUint>,
}

impl SizeInterval {
    pub fn contains(&self, m: &BigUint) -> bool {
        *m >= self.lo && self.hi.as_ref().map_or(true, |hi| m <= hi)
    }
}

fn decimal<S: Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

fn decimal_opt<S: Serializer>(
    value: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeTag {
    pub m: u64,
    pub k: usize,
    pub kind: RangeKind,
    pub applicable: Vec<Regime>,
    pub intervals: Vec<(Regime, SizeInterval)>,
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Smallest integer `m` with `m >= 2^(2.71 (k-1))`, i.e. `m^100 >= 2^(271 (k-1))`.
pub fn large_threshold_exponential(k: usize) -> BigUint {
    let target = pow2(271 * (k - 1));
    let root = target.nth_root(100);
    if root.pow(100) < target {
        root + 1u32
    } else {
        root
    }
}

/// The size intervals on which each regime applies for this `k`.
pub fn regime_intervals(k: usize) -> Vec<(Regime, SizeInterval)> {
    let mut out = vec![(
        Regime::Small,
        SizeInterval {
            lo: BigUint::one(),
            hi: Some(pow2(k) + 1u32),
        },
    )];
    // The medium regime rests on f_k >= (m - 2^(k-1)) / (m log₂ m) >= 1/(2 log₂ m).
    // For k = 5 that general form stops short at m = 2^(17/2); beyond it
    // m - 16 > 15m/16 gives f_5 >= 15/(16 log₂ m) >= 5/64 > 1/17 up to 2^12.
    // Only the interval endpoints matter here, so the refinement is not coded.
    if k >= 5 {
        out.push((
            Regime::Medium,
            SizeInterval {
                lo: pow2(k) + 2u32,
                hi: Some(pow2(3 * (k - 1))),
            },
        ));
    }
    let large_lo = match k {
        2 => BigUint::from(4u32),
        3 => BigUint::from(6u32),
        4 => BigUint::from(14u32),
        _ => large_threshold_exponential(k),
    };
    out.push((
        Regime::Large,
        SizeInterval {
            lo: large_lo,
            hi: None,
        },
    ));
    out
}

pub fn classify_range(m: u64, k: usize) -> Result<RangeTag> {
    if k < 2 {
        return Err(Error::KOutOfRange {
            k,
            min: 2,
            max: usize::MAX,
        });
    }
    if m == 0 {
        return Err(Error::EmptyFamily);
    }
    let intervals = regime_intervals(k);
    let m_big = BigUint::from(m);
    let applicable: Vec<Regime> = intervals
        .iter()
        .filter(|(_, iv)| iv.contains(&m_big))
        .map(|(r, _)| *r)
        .collect();
    let kind = match applicable.as_slice() {
        [] => return Err(Error::UncoveredRange { m, k }),
        [Regime::Small] => RangeKind::Small,
        [Regime::Medium] => RangeKind::Medium,
        [Regime::Large] => RangeKind::Large,
        _ => RangeKind::Multiple,
    };
    Ok(RangeTag {
        m,
        k,
        kind,
        applicable,
        intervals,
    })
}

/// Per-k evidence that the regimes leave no gap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageRow {
    pub k: usize,
    /// Small reaches up to medium's start (or to large's start when `k <= 4`).
    pub small_meets_next: bool,
    /// Medium reaches up to large's start; vacuous for `k <= 4`.
    pub medium_meets_large: bool,
    /// For `k <= 4`, the small and large rows overlap on this interval.
    pub overlap: Option<SizeInterval>,
}

impl CoverageRow {
    pub fn covered(&self) -> bool {
        self.small_meets_next && self.medium_meets_large
    }
}

pub fn coverage_rows(k_max: usize) -> Vec<CoverageRow> {
    (2..=k_max)
        .map(|k| {
            let intervals = regime_intervals(k);
            let get = |r: Regime| intervals.iter().find(|(x, _)| *x == r).map(|(_, iv)| iv);
            let small = get(Regime::Small).expect("always present");
            let large = get(Regime::Large).expect("always present");
            let small_hi = small.hi.clone().expect("bounded");
            match get(Regime::Medium) {
                Some(medium) => {
                    let medium_hi = medium.hi.clone().expect("bounded");
                    CoverageRow {
                        k,
                        small_meets_next: small_hi + 1u32 >= medium.lo,
                        medium_meets_large: medium_hi + 1u32 >= large.lo,
                        overlap: None,
                    }
                }
                None => {
                    let meets = small_hi.clone() + 1u32 >= large.lo;
                    let overlap = (large.lo <= small_hi).then(|| SizeInterval {
                        lo: large.lo.clone(),
                        hi: Some(small_hi),
                    });
                    CoverageRow {
                        k,
                        small_meets_next: meets,
                        medium_meets_large: true,
                        overlap,
                    }
                }
            }
        })
        .collect()
}

/// True when, for every `k` in `2..=k_max`, the regimes jointly cover every `m >= 1`.
pub fn full_coverage_check(k_max: usize) -> bool {
    k_max >= 2 && coverage_rows(k_max).iter().all(CoverageRow::covered)
}

/// Number of `m` values in `[1, limit]` no regime covers, by walking the
/// interval endpoints; an independent audit of [`full_coverage_check`].
pub fn uncovered_count_up_to(k: usize, limit: &BigUint) -> BigUint {
    let intervals = regime_intervals(k).into_iter().map(|(_, iv)| iv).collect();
    uncovered_in(intervals, limit)
}

fn uncovered_in(mut intervals: Vec<SizeInterval>, limit: &BigUint) -> BigUint {
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut gaps = BigUint::zero();
    // Smallest size not yet known to be covered.
    let mut next = BigUint::one();
    for iv in intervals {
        if &next > limit {
            break;
        }
        if iv.lo > next {
            let gap_end = (&iv.lo - 1u32).min(limit.clone());
            gaps += gap_end - &next + 1u32;
            next = iv.lo.clone();
        }
        match iv.hi {
            None => return gaps,
            Some(hi) => next = next.max(hi + 1u32),
        }
    }
    if &next <= limit {
        gaps += limit - &next + 1u32;
    }
    gaps
}
