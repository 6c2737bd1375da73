//! Exhaustive and randomized checks of the k-th frequency lower bound.

mod enumerate;
mod nagel;
mod random;
mod ranges;
mod sweep;

pub use enumerate::{
    enumerate_union_closed, NaiveFilter, OrderlyDfs, UnionClosedFamilies, MAX_ENUMERATION_N,
    MAX_FILTER_N,
};
pub use nagel::{
    check_nagel, is_near_k_cube, nagel_threshold, near_cube_canonical_forms, NagelCheck,
    NagelStatus,
};
pub use random::{random_union_closed, PRNG_NAME};
pub use ranges::{
    classify_range, coverage_rows, full_coverage_check, large_threshold_exponential,
    regime_intervals, uncovered_count_up_to, CoverageRow, RangeKind, RangeTag, Regime,
    SizeInterval,
};
pub use sweep::{
    audit_family, random_check, sweep, AuditContext, Failure, FailureKind, FamilyAudit, KAudit,
    KRange, KSummary, RandomCheckOptions, RandomCheckReport, RuntimeStats, SweepOptions,
    SweepReport, VerifyError,
};
