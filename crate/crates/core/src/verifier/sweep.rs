//! Sweep engine shared by the exhaustive and random checks.
//!
//! Each family goes through [`audit_family`]: the k-th frequency is compared
//! with `1 / (2^(k-1) + 1)`, equality cases are classified, and for every
//! tie-consistent choice of the `k - 1` most frequent elements a good-set
//! certificate and the projected-frequency bound are checked. Families are
//! processed in batches; within a batch work is spread over a thread pool
//! and results are merged in enumeration order, so reports do not depend on
//! the worker count.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::enumerate::enumerate_union_closed;
use super::nagel::{is_near_k_cube, near_cube_canonical_forms, status_from_count, NagelStatus};
use super::random::{random_union_closed, PRNG_NAME};
use crate::error::Error;
use crate::family::{SetFamily, SetMask, MAX_CANONICAL_SUPPORT};
use crate::format;
use crate::good_sets::{check_certificate, minimal_good_set_for_top, CertificateFault};

const BATCH_SIZE: usize = 4096;

/// Which values of k a sweep checks. `All` means `2..=|support|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRange {
    All,
    Single(usize),
}

impl KRange {
    fn ks(self, support: usize) -> impl Iterator<Item = usize> {
        let range = match self {
            KRange::All => 2..=support,
            KRange::Single(k) => k..=k,
        };
        range.filter(move |&k| k <= support)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    NagelViolation,
    NonNearCubeEquality,
    ClassificationDisagreement,
    TieStatusMismatch,
    CertificateConstruction,
    Certificate(CertificateFault),
    KnillAboveFrequency,
    LogBoundAboveFrequency,
    ProjectedBoundViolated,
}

/// A family on which some check failed, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub k: usize,
    pub family: SetFamily,
    pub top: Option<SetMask>,
    /// Seed that generated the family, for random checks.
    pub seed: Option<u64>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at k = {}", self.kind, self.k)?;
        if let Some(top) = self.top {
            write!(f, " with top elements {top}")?;
        }
        if let Some(seed) = self.seed {
            write!(f, " (seed {seed})")?;
        }
        write!(f, "; reproducer:\n{}", format::to_text(&self.family))
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{0}")]
    Setup(#[from] Error),
    #[error("verification failed: {0}")]
    Failure(Box<Failure>),
}

/// Result of auditing one family at one k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KAudit {
    pub k: usize,
    pub status: NagelStatus,
    /// Canonical form of an equality family, when its support is small enough.
    pub canonical: Option<SetFamily>,
    pub tie_orderings: usize,
    pub certificates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyAudit {
    pub per_k: Vec<KAudit>,
}

/// Canonical near-cube forms, cached per k.
#[derive(Debug, Default)]
pub struct AuditContext {
    near_forms: HashMap<usize, Vec<SetFamily>>,
}

impl AuditContext {
    pub fn new(max_k: usize) -> Self {
        let near_forms = (1..=max_k.min(MAX_CANONICAL_SUPPORT))
            .map(|k| {
                let forms = near_cube_canonical_forms(k, MAX_CANONICAL_SUPPORT)
                    .expect("near-cubes on at most 8 elements");
                (k, forms)
            })
            .collect();
        AuditContext { near_forms }
    }

    fn is_canonical_near_cube(&self, k: usize, canonical: &SetFamily) -> bool {
        self.near_forms
            .get(&k)
            .is_some_and(|forms| forms.contains(canonical))
    }
}

/// Runs every per-family check for the given values of k. The family must be
/// union-closed.
pub fn audit_family(
    ctx: &AuditContext,
    family: &SetFamily,
    k_range: KRange,
) -> Result<FamilyAudit, Failure> {
    let m = family.len();
    let counts = family.element_counts();
    let mut sorted = counts.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let support = family.support().len();

    let fail = |kind, k, top| Failure {
        kind,
        k,
        family: family.clone(),
        top,
        seed: None,
    };

    let mut per_k = Vec::new();
    for k in k_range.ks(support) {
        let kth = sorted[k - 1];
        let status = status_from_count(kth, m, k);
        if status == NagelStatus::Violation {
            return Err(fail(FailureKind::NagelViolation, k, None));
        }

        let mut canonical = None;
        if status == NagelStatus::Equality && k >= 2 {
            let structural = is_near_k_cube(family, k);
            if !structural {
                return Err(fail(FailureKind::NonNearCubeEquality, k, None));
            }
            if support <= MAX_CANONICAL_SUPPORT {
                let form = family.canonical_form().expect("support checked");
                if !ctx.is_canonical_near_cube(k, &form) {
                    return Err(fail(FailureKind::ClassificationDisagreement, k, None));
                }
                canonical = Some(form);
            }
        }

        let cube = 1u128 << (k - 1);
        let tops = family.tie_consistent_tops(k - 1);
        let mut certificates = 0;
        for &top in &tops {
            // Under any tie-consistent ordering the k-th element is the most
            // frequent one outside `top`.
            let outside = (1..=family.n())
                .filter(|&e| !top.contains(e))
                .map(|e| counts[e - 1])
                .max()
                .unwrap_or(0);
            if outside != kth {
                return Err(fail(FailureKind::TieStatusMismatch, k, Some(top)));
            }

            let cert = minimal_good_set_for_top(family, k, top)
                .map_err(|_| fail(FailureKind::CertificateConstruction, k, Some(top)))?;
            check_certificate(family, &cert)
                .map_err(|fault| fail(FailureKind::Certificate(fault), k, Some(top)))?;
            certificates += 1;
            if m as u128 > cube {
                // (m - 2^(k-1)) / (m |S|) <= kth / m
                if m as u128 - cube > kth as u128 * cert.good_set.len() as u128 {
                    return Err(fail(FailureKind::KnillAboveFrequency, k, Some(top)));
                }
                if cert.bound_by_log > kth as f64 / m as f64 + 1e-12 {
                    return Err(fail(FailureKind::LogBoundAboveFrequency, k, Some(top)));
                }
            }

            if !projected_bound_holds(family, &counts, top, cube) {
                return Err(fail(FailureKind::ProjectedBoundViolated, k, Some(top)));
            }
        }

        per_k.push(KAudit {
            k,
            status,
            canonical,
            tie_orderings: tops.len(),
            certificates,
        });
    }
    Ok(FamilyAudit { per_k })
}

/// Take the most frequent element `a` of the projected family `π(F)`, lying
/// in `f` of its `p` sets. Each projected set has at most `2^(k-1)`
/// preimages, so `Freq_F(a) >= f / (f + 2^(k-1) (p - f))`.
fn projected_bound_holds(family: &SetFamily, counts: &[usize], top: SetMask, cube: u128) -> bool {
    let projected: BTreeSet<SetMask> = family.iter().map(|&m| m - top).collect();
    let p = projected.len() as u128;
    let mut proj_counts = vec![0u128; family.n()];
    for s in &projected {
        for e in s.elements() {
            proj_counts[e - 1] += 1;
        }
    }
    let Some((a, f)) = proj_counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))
        .map(|(i, &c)| (i + 1, c))
    else {
        return true;
    };
    let m = family.len() as u128;
    let count_a = counts[a - 1] as u128;
    count_a * (f + cube * (p - f)) >= f * m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KSummary {
    pub k: usize,
    pub families_checked: u64,
    pub strict: u64,
    pub equality: u64,
    pub violations: u64,
    pub tie_orderings_checked: u64,
    pub certificates_checked: u64,
    /// Equality families whose support was too large to canonicalize.
    pub equality_not_canonicalized: u64,
    /// Distinct canonical forms among the equality families.
    pub equality_classes: Vec<serde_json::Value>,
}

#[derive(Debug, Default)]
struct Tally {
    per_k: BTreeMap<usize, (KSummary, BTreeSet<SetFamily>)>,
}

impl Tally {
    fn add(&mut self, audit: FamilyAudit) {
        for a in audit.per_k {
            let (summary, classes) = self.per_k.entry(a.k).or_insert_with(|| {
                (
                    KSummary {
                        k: a.k,
                        families_checked: 0,
                        strict: 0,
                        equality: 0,
                        violations: 0,
                        tie_orderings_checked: 0,
                        certificates_checked: 0,
                        equality_not_canonicalized: 0,
                        equality_classes: Vec::new(),
                    },
                    BTreeSet::new(),
                )
            });
            summary.families_checked += 1;
            summary.tie_orderings_checked += a.tie_orderings as u64;
            summary.certificates_checked += a.certificates as u64;
            match a.status {
                NagelStatus::Strict => summary.strict += 1,
                NagelStatus::Equality => {
                    summary.equality += 1;
                    match a.canonical {
                        Some(form) => {
                            classes.insert(form);
                        }
                        None if a.k >= 2 => summary.equality_not_canonicalized += 1,
                        // At k = 1 the bound is 1/2 and many families meet it.
                        None => {}
                    }
                }
                NagelStatus::Violation => summary.violations += 1,
            }
        }
    }

    fn finish(self) -> Vec<KSummary> {
        self.per_k
            .into_values()
            .map(|(mut summary, classes)| {
                summary.equality_classes = classes.iter().map(format::to_json_value).collect();
                summary
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuntimeStats {
    pub elapsed_ms: u128,
    pub slowest_family_us: u128,
    pub jobs: usize,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub n: usize,
    pub k_range: KRange,
    pub require_empty: bool,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub budget: Option<Duration>,
}

impl SweepOptions {
    pub fn new(n: usize) -> Self {
        SweepOptions {
            n,
            k_range: KRange::All,
            require_empty: true,
            jobs: 1,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub require_empty: bool,
    /// False when the time budget stopped the enumeration early.
    pub complete: bool,
    pub families_enumerated: u64,
    /// Distinct families after adding `∅`.
    pub families_audited: u64,
    pub violations: u64,
    pub per_k: Vec<KSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime: Option<RuntimeStats>,
}

impl SweepReport {
    pub fn summary(&self, k: usize) -> Option<&KSummary> {
        self.per_k.iter().find(|s| s.k == k)
    }

    /// Drops the timing section so two runs can be compared byte for byte.
    pub fn without_runtime(mut self) -> Self {
        self.runtime = None;
        self
    }
}

fn build_pool(jobs: usize) -> Result<rayon::ThreadPool, VerifyError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|_| VerifyError::Setup(Error::InvalidDistribution("thread pool unavailable")))
}

fn audit_batch(
    pool: &rayon::ThreadPool,
    ctx: &AuditContext,
    batch: &[(SetFamily, Option<u64>)],
    k_range: KRange,
) -> Vec<(Result<FamilyAudit, Failure>, Duration)> {
    pool.install(|| {
        batch
            .par_iter()
            .map(|(family, seed)| {
                let started = Instant::now();
                let result = audit_family(ctx, family, k_range).map_err(|mut f| {
                    f.seed = *seed;
                    f
                });
                (result, started.elapsed())
            })
            .collect()
    })
}

/// Audits every union-closed family on `[n]` with `∅` added to each.
///
/// Adding `∅` to a family that lacks it gives another union-closed family
/// that the enumeration also yields, so only families already containing `∅`
/// are audited; the rest are counted in `families_enumerated` alone.
pub fn sweep(options: &SweepOptions) -> Result<SweepReport, VerifyError> {
    let started = Instant::now();
    let families = enumerate_union_closed(options.n, options.require_empty)?;
    let pool = build_pool(options.jobs)?;
    let ctx = AuditContext::new(options.n);

    let mut tally = Tally::default();
    let mut enumerated = 0u64;
    let mut audited = 0u64;
    let mut slowest = Duration::ZERO;
    let mut complete = true;
    let mut families = families.peekable();
    loop {
        let raw: Vec<SetFamily> = families.by_ref().take(BATCH_SIZE).collect();
        if raw.is_empty() {
            break;
        }
        enumerated += raw.len() as u64;
        let batch: Vec<_> = raw
            .into_iter()
            .filter(SetFamily::contains_empty)
            .map(|f| (f, None))
            .collect();
        audited += batch.len() as u64;
        for (result, elapsed) in audit_batch(&pool, &ctx, &batch, options.k_range) {
            slowest = slowest.max(elapsed);
            tally.add(result.map_err(|f| VerifyError::Failure(Box::new(f)))?);
        }
        if options.budget.is_some_and(|b| started.elapsed() >= b) {
            complete = families.peek().is_none();
            break;
        }
    }

    Ok(SweepReport {
        n: options.n,
        require_empty: options.require_empty,
        complete,
        families_enumerated: enumerated,
        families_audited: audited,
        violations: 0,
        per_k: tally.finish(),
        runtime: Some(RuntimeStats {
            elapsed_ms: started.elapsed().as_millis(),
            slowest_family_us: slowest.as_micros(),
            jobs: pool.current_num_threads(),
        }),
    })
}

#[derive(Debug, Clone)]
pub struct RandomCheckOptions {
    pub n: usize,
    pub generators: usize,
    pub count: u64,
    pub seed: u64,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomCheckReport {
    pub n: usize,
    pub generators: usize,
    pub count: u64,
    pub seed: u64,
    pub prng: &'static str,
    pub violations: u64,
    pub max_family_size: usize,
    pub per_k: Vec<KSummary>,
}

/// Audits `count` random union-closed families; family `i` uses seed `seed + i`.
pub fn random_check(options: &RandomCheckOptions) -> Result<RandomCheckReport, VerifyError> {
    let pool = build_pool(options.jobs)?;
    let ctx = AuditContext::new(options.n);
    let mut tally = Tally::default();
    let mut max_family_size = 0;
    let mut next = 0u64;
    while next < options.count {
        let end = (next + BATCH_SIZE as u64).min(options.count);
        let batch = (next..end)
            .map(|i| {
                let seed = options.seed.wrapping_add(i);
                random_union_closed(options.n, options.generators, seed).map(|f| (f, Some(seed)))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        max_family_size = batch
            .iter()
            .map(|(f, _)| f.len())
            .fold(max_family_size, usize::max);
        for (result, _) in audit_batch(&pool, &ctx, &batch, KRange::All) {
            tally.add(result.map_err(|f| VerifyError::Failure(Box::new(f)))?);
        }
        next = end;
    }
    Ok(RandomCheckReport {
        n: options.n,
        generators: options.generators,
        count: options.count,
        seed: options.seed,
        prng: PRNG_NAME,
        violations: 0,
        max_family_size,
        per_k: tally.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{near_k_cube, power_cube, NearKCubeSpec};

    fn set(elements: &[usize]) -> SetMask {
        SetMask::from_elements(elements.iter().copied()).unwrap()
    }

    #[test]
    fn sweep_n2_equality_is_the_small_near_cube() {
        let report = sweep(&SweepOptions::new(2)).unwrap();
        assert!(report.complete);
        assert_eq!(report.families_enumerated, 7);
        let k2 = report.summary(2).unwrap();
        // {∅,{1},{1,2}} and {∅,{2},{1,2}}.
        assert_eq!(k2.equality, 2);
        assert_eq!(k2.equality_classes.len(), 1);
        assert_eq!(
            k2.equality_classes[0].to_string(),
            r#"{"n":2,"sets":[[],[1],[1,2]]}"#
        );
    }

    #[test]
    fn sweep_n3_k3_equality_classes() {
        let mut options = SweepOptions::new(3);
        options.k_range = KRange::Single(3);
        let report = sweep(&options).unwrap();
        let k3 = report.summary(3).unwrap();
        // 2^[2] ∪ {[3]} under the three choices of the cube's elements.
        assert_eq!(k3.equality, 3);
        assert_eq!(k3.equality_classes.len(), 1);
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn sweep_n3_k2_has_no_violations() {
        let mut options = SweepOptions::new(3);
        options.k_range = KRange::Single(2);
        let report = sweep(&options).unwrap();
        assert_eq!(report.summary(2).unwrap().violations, 0);
        assert_eq!(report.summary(2).unwrap().equality_classes.len(), 2);
    }

    #[test]
    fn families_without_empty_add_nothing() {
        let with = sweep(&SweepOptions::new(3)).unwrap();
        let all = sweep(&SweepOptions {
            require_empty: false,
            ..SweepOptions::new(3)
        })
        .unwrap();
        // 61 families contain ∅ and 60 nonempty ones lack it.
        assert_eq!(with.families_enumerated, 61);
        assert_eq!(all.families_enumerated, 121);
        assert_eq!(all.families_audited, 61);
        assert_eq!(all.per_k, with.per_k);
    }

    #[test]
    fn reports_independent_of_jobs() {
        let mut one = SweepOptions::new(4);
        one.jobs = 1;
        let mut four = one.clone();
        four.jobs = 4;
        let a = serde_json::to_string(&sweep(&one).unwrap().without_runtime()).unwrap();
        let b = serde_json::to_string(&sweep(&four).unwrap().without_runtime()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn audit_flags_a_violation() {
        // Not union-closed ({1,2,3} is missing), so f_2 = 1/4 < 1/3 can occur.
        let g = SetFamily::new(3, [set(&[]), set(&[1]), set(&[1, 2]), set(&[1, 3])]).unwrap();
        let ctx = AuditContext::new(3);
        let err = audit_family(&ctx, &g, KRange::Single(2)).unwrap_err();
        assert_eq!(err.kind, FailureKind::NagelViolation);
        assert!(err
            .to_string()
            .contains("reproducer:\nn=3\n-\n1\n1 2\n1 3\n"));

        let ok = SetFamily::new(2, [set(&[]), set(&[1]), set(&[1, 2])]).unwrap();
        assert!(audit_family(&ctx, &ok, KRange::All).is_ok());
    }

    #[test]
    fn audit_near_cube_and_cube() {
        let ctx = AuditContext::new(6);
        let near = near_k_cube(NearKCubeSpec::new(4, set(&[4, 5, 6])).unwrap()).unwrap();
        let audit = audit_family(&ctx, &near, KRange::Single(4)).unwrap();
        assert_eq!(audit.per_k[0].status, NagelStatus::Equality);
        assert!(audit.per_k[0].canonical.is_some());
        let cube = power_cube(4).unwrap();
        let audit = audit_family(&ctx, &cube, KRange::All).unwrap();
        assert_eq!(audit.per_k.len(), 3);
        // C(4, k-1) tie-consistent tops for each k.
        let ties: Vec<usize> = audit.per_k.iter().map(|a| a.tie_orderings).collect();
        assert_eq!(ties, vec![4, 6, 4]);
    }

    #[test]
    fn random_check_is_deterministic() {
        let options = RandomCheckOptions {
            n: 9,
            generators: 5,
            count: 300,
            seed: 7,
            jobs: 2,
        };
        let a = random_check(&options).unwrap();
        let b = random_check(&RandomCheckOptions {
            jobs: 1,
            ..options.clone()
        })
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
    }

    #[test]
    fn budget_can_stop_early() {
        let mut options = SweepOptions::new(5);
        options.budget = Some(Duration::ZERO);
        options.jobs = 2;
        let report = sweep(&options).unwrap();
        assert!(!report.complete);
        assert_eq!(report.families_enumerated, BATCH_SIZE as u64);
    }
}
