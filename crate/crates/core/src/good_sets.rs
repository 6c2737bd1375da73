//! Hitting-set certificates for the k-th frequency of small families.
//!
//! Let `T` be the `k - 1` most frequent elements and `R` the members not
//! contained in `T`. A set `S` disjoint from `T` is *k-good* when it meets
//! every member of `R`. A minimal k-good `S` comes with witnesses `F_y`
//! (`F_y ∩ S = {y}`) whose unions are pairwise distinct members of a
//! union-closed family, so `2^|S| <= m`. Averaging incidences over `S` then
//! yields `f_k >= (m - 2^(k-1)) / (m |S|) >= (m - 2^(k-1)) / (m log₂ m)`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{SetFamily, SetMask};
use crate::rational::Rational;

/// A minimal k-good set together with its witnesses and the bounds it implies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoodSetCertificate {
    pub k: usize,
    /// The `k - 1` elements treated as most frequent.
    pub top: SetMask,
    /// The minimal k-good set `S`.
    pub good_set: SetMask,
    /// `(y, F_y)` for each `y ∈ S`, ascending in `y`.
    pub witnesses: Vec<(usize, SetMask)>,
    pub m: usize,
    /// `|R|`, the number of members not inside `top`.
    pub restricted_size: usize,
    /// `(m - 2^(k-1)) / (m |S|)`, or 0 when `m <= 2^(k-1)`.
    #[serde(serialize_with = "crate::serde_util::fraction")]
    pub bound_by_size: Rational,
    /// `(m - 2^(k-1)) / (m log₂ m)`, or 0 when `m <= 2^(k-1)`.
    pub bound_by_log: f64,
}

/// Ways a certificate can fail to check out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateFault {
    NotGood,
    NotMinimal,
    MeetsTop,
    BadWitness(usize),
    MissingUnion,
    TraceMismatch,
    InjectionExceedsFamily,
}

fn cube_size(k: usize) -> u128 {
    1u128 << (k - 1)
}

fn check_k(family: &SetFamily, k: usize) -> Result<()> {
    if k == 0 || k > family.n() {
        return Err(Error::KOutOfRange {
            k,
            min: 1,
            max: family.n(),
        });
    }
    Ok(())
}

fn default_top(family: &SetFamily, k: usize) -> SetMask {
    family.frequency_order().top(k - 1)
}

/// Members of `family` not contained in the `k - 1` most frequent elements.
pub fn restricted_family(family: &SetFamily, k: usize) -> Result<Vec<SetMask>> {
    check_k(family, k)?;
    Ok(restricted_for_top(family, default_top(family, k)))
}

pub fn restricted_for_top(family: &SetFamily, top: SetMask) -> Vec<SetMask> {
    family
        .iter()
        .copied()
        .filter(|m| !m.is_subset_of(top))
        .collect()
}

fn hits_all(restricted: &[SetMask], candidate: SetMask) -> bool {
    restricted.iter().all(|m| !m.is_disjoint(candidate))
}

/// Whether `candidate` meets every member outside the top `k - 1` elements.
pub fn is_k_good(family: &SetFamily, k: usize, candidate: SetMask) -> Result<bool> {
    check_k(family, k)?;
    let top = default_top(family, k);
    if !candidate.is_disjoint(top) {
        return Err(Error::CandidateMeetsTop {
            set: candidate,
            top,
        });
    }
    Ok(hits_all(&restricted_for_top(family, top), candidate))
}

/// Greedy minimal k-good set for the default (ascending-index) tie-break.
pub fn minimal_k_good(family: &SetFamily, k: usize) -> Result<GoodSetCertificate> {
    check_k(family, k)?;
    minimal_good_set_for_top(family, k, default_top(family, k))
}

/// Greedy minimal k-good set when `top` plays the role of the `k - 1` most
/// frequent elements. Starts from everything outside `top` and drops
/// elements in ascending order while goodness survives.
pub fn minimal_good_set_for_top(
    family: &SetFamily,
    k: usize,
    top: SetMask,
) -> Result<GoodSetCertificate> {
    check_k(family, k)?;
    let support = family.support().len();
    if support < k {
        return Err(Error::SupportTooSmall { support, k });
    }
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    let restricted = restricted_for_top(family, top);
    if restricted.is_empty() {
        return Err(Error::SupportTooSmall { support, k });
    }

    let mut good = SetMask::full(family.n()) - top;
    for e in good.elements() {
        let smaller = good - SetMask::singleton(e);
        if hits_all(&restricted, smaller) {
            good = smaller;
        }
    }

    // `restricted` is sorted, so the first hit is the smallest mask.
    let witnesses = good
        .elements()
        .map(|y| {
            let w = restricted
                .iter()
                .copied()
                .find(|&m| m & good == SetMask::singleton(y))
                .expect("minimality leaves a private member for every element");
            (y, w)
        })
        .collect();

    let m = family.len();
    let (bound_by_size, bound_by_log) = if m as u128 > cube_size(k) {
        let excess = BigInt::from(m as u128 - cube_size(k));
        let by_size = Rational::new(excess, BigInt::from(m * good.len()));
        let by_log = (m as u128 - cube_size(k)) as f64 / (m as f64 * (m as f64).log2());
        (by_size, by_log)
    } else {
        (Rational::zero(), 0.0)
    };

    Ok(GoodSetCertificate {
        k,
        top,
        good_set: good,
        witnesses,
        m,
        restricted_size: restricted.len(),
        bound_by_size,
        bound_by_log,
    })
}

/// Checks that every union `F_Y` of witnesses over nonempty `Y ⊆ S` is a
/// member whose trace on `S` is exactly `Y`, which makes the `2^|S|` unions
/// distinct; `F_∅ = ∅` has trace `∅` by convention.
pub fn verify_union_injection(family: &SetFamily, cert: &GoodSetCertificate) -> bool {
    let s = cert.good_set;
    let size = s.len();
    if size >= 63 || cert.witnesses.len() != size {
        return false;
    }
    if (1u128 << size) > family.len() as u128 {
        return false;
    }
    for selection in 1u64..(1u64 << size) {
        let mut union = SetMask::EMPTY;
        let mut expected = SetMask::EMPTY;
        for (idx, &(y, w)) in cert.witnesses.iter().enumerate() {
            if selection & (1 << idx) != 0 {
                union = union | w;
                expected = expected | SetMask::singleton(y);
            }
        }
        if union & s != expected || !family.contains(union) {
            return false;
        }
    }
    true
}

/// Full audit of a certificate against the family it was built for.
pub fn check_certificate(
    family: &SetFamily,
    cert: &GoodSetCertificate,
) -> std::result::Result<(), CertificateFault> {
    let s = cert.good_set;
    if !s.is_disjoint(cert.top) {
        return Err(CertificateFault::MeetsTop);
    }
    let restricted = restricted_for_top(family, cert.top);
    if !hits_all(&restricted, s) {
        return Err(CertificateFault::NotGood);
    }
    if s.elements()
        .any(|y| hits_all(&restricted, s - SetMask::singleton(y)))
    {
        return Err(CertificateFault::NotMinimal);
    }
    let ys: Vec<usize> = cert.witnesses.iter().map(|&(y, _)| y).collect();
    if ys != s.elements().collect::<Vec<_>>() {
        return Err(CertificateFault::BadWitness(0));
    }
    for &(y, w) in &cert.witnesses {
        if !family.contains(w) || w.is_subset_of(cert.top) || w & s != SetMask::singleton(y) {
            return Err(CertificateFault::BadWitness(y));
        }
    }
    if (1u128 << s.len()) > family.len() as u128 {
        return Err(CertificateFault::InjectionExceedsFamily);
    }
    for selection in 1u64..(1u64 << s.len()) {
        let (union, expected) = cert
            .witnesses
            .iter()
            .enumerate()
            .filter(|(idx, _)| selection & (1 << idx) != 0)
            .fold((SetMask::EMPTY, SetMask::EMPTY), |(u, e), (_, &(y, w))| {
                (u | w, e | SetMask::singleton(y))
            });
        if !family.contains(union) {
            return Err(CertificateFault::MissingUnion);
        }
        if union & s != expected {
            return Err(CertificateFault::TraceMismatch);
        }
    }
    Ok(())
}

/// Certified lower bound on `f_k` from a minimal k-good set.
///
/// The size-based bound always dominates the logarithmic one, because the
/// union injection gives `|S| <= log₂ m`.
pub fn knill_lower_bound(family: &SetFamily, k: usize) -> Result<Rational> {
    check_k(family, k)?;
    let m = family.len();
    if m as u128 <= cube_size(k) {
        return Err(Error::VacuousBound {
            m,
            cube: cube_size(k) as u64,
        });
    }
    Ok(minimal_k_good(family, k)?.bound_by_size)
}
