use serde::Serialize;

use crate::constructions::{near_k_cube, NearKCubeSpec};
use crate::error::{Error, Result};
use crate::family::{SetFamily, SetMask};
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NagelStatus {
    Strict,
    Equality,
    Violation,
}

/// Comparison of `f_k` against `1 / (2^(k-1) + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NagelCheck {
    pub k: usize,
    #[serde(serialize_with = "crate::serde_util::fraction")]
    pub f_k: Rational,
    #[serde(serialize_with = "crate::serde_util::fraction")]
    pub threshold: Rational,
    pub status: NagelStatus,
}

/// `1 / (2^(k-1) + 1)`.
pub fn nagel_threshold(k: usize) -> Rational {
    let cube = num_bigint::BigInt::from(1u8) << (k - 1);
    Rational::new(1.into(), cube + 1)
}

fn status_of(count: usize, m: usize, k: usize) -> NagelStatus {
    // count/m against 1/(2^(k-1)+1), cross-multiplied.
    let lhs = count as u128 * ((1u128 << (k - 1)) + 1);
    match lhs.cmp(&(m as u128)) {
        std::cmp::Ordering::Greater => NagelStatus::Strict,
        std::cmp::Ordering::Equal => NagelStatus::Equality,
        std::cmp::Ordering::Less => NagelStatus::Violation,
    }
}

pub fn check_nagel(family: &SetFamily, k: usize) -> Result<NagelCheck> {
    let count = nagel_count(family, k)?;
    Ok(NagelCheck {
        k,
        f_k: ratio(count, family.len()),
        threshold: nagel_threshold(k),
        status: status_of(count, family.len(), k),
    })
}

/// Validates the hypotheses and returns the member count behind `f_k`.
fn nagel_count(family: &SetFamily, k: usize) -> Result<usize> {
    if k == 0 || k > family.n() {
        return Err(Error::KOutOfRange {
            k,
            min: 1,
            max: family.n(),
        });
    }
    let support = family.support().len();
    if support < k {
        return Err(Error::SupportTooSmall { support, k });
    }
    if !family.is_union_closed() {
        return Err(Error::NotUnionClosed);
    }
    family.kth_count(k)
}

/// Status computed from raw counts, for callers that already validated the family.
pub(crate) fn status_from_count(count: usize, m: usize, k: usize) -> NagelStatus {
    status_of(count, m, k)
}

/// Structural test for `2^T ∪ {S}` with `|T| = k - 1` and `T ⊊ S`.
pub fn is_near_k_cube(family: &SetFamily, k: usize) -> bool {
    if k == 0 || k > 63 || family.len() as u128 != (1u128 << (k - 1)) + 1 {
        return false;
    }
    let top = *family
        .members()
        .iter()
        .max_by_key(|m| (m.len(), m.bits()))
        .expect("nonempty");
    let cube: SetMask = family
        .iter()
        .filter(|&&m| m != top)
        .fold(SetMask::EMPTY, |acc, &m| acc | m);
    // 2^(k-1) distinct subsets of a (k-1)-set are all of its subsets.
    cube.len() == k - 1 && cube.is_subset_of(top) && cube != top
}

/// Canonical forms of every near-k-cube whose support has at most `n` elements.
pub fn near_cube_canonical_forms(k: usize, n: usize) -> Result<Vec<SetFamily>> {
    (1..=n.saturating_sub(k - 1))
        .map(|extra| {
            let extra_mask = SetMask::full(k - 1 + extra) - SetMask::full(k - 1);
            near_k_cube(NearKCubeSpec::new(k, extra_mask)?)?.canonical_form()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::power_cube;

    fn set(elements: &[usize]) -> SetMask {
        SetMask::from_elements(elements.iter().copied()).unwrap()
    }

    #[test]
    fn near_cubes_are_equality_cases() {
        for k in 2..=10 {
            let f = near_k_cube(NearKCubeSpec::minimal(k).unwrap()).unwrap();
            let check = check_nagel(&f, k).unwrap();
            assert_eq!(check.status, NagelStatus::Equality, "k={k}");
            assert_eq!(check.f_k, check.threshold);
            assert!(is_near_k_cube(&f, k));
        }
    }

    #[test]
    fn cube_is_strict() {
        let check = check_nagel(&power_cube(3).unwrap(), 2).unwrap();
        assert_eq!(check.status, NagelStatus::Strict);
        assert_eq!(check.f_k, ratio(1, 2));
        assert_eq!(check.threshold, ratio(1, 3));
    }

    #[test]
    fn small_equality() {
        let f = SetFamily::new(2, [set(&[]), set(&[1]), set(&[1, 2])]).unwrap();
        assert_eq!(check_nagel(&f, 2).unwrap().status, NagelStatus::Equality);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let f = SetFamily::new(3, [set(&[]), set(&[1])]).unwrap();
        assert!(matches!(
            check_nagel(&f, 2),
            Err(Error::SupportTooSmall { .. })
        ));
        let g = SetFamily::new(2, [set(&[1]), set(&[2])]).unwrap();
        assert_eq!(check_nagel(&g, 2), Err(Error::NotUnionClosed));
        assert!(check_nagel(&g, 3).is_err());
    }

    #[test]
    fn violation_status_from_counts() {
        assert_eq!(status_from_count(1, 4, 2), NagelStatus::Violation);
        assert_eq!(status_from_count(1, 3, 2), NagelStatus::Equality);
        assert_eq!(status_from_count(2, 5, 2), NagelStatus::Strict);
    }

    #[test]
    fn structural_near_cube_test() {
        let f = SetFamily::new(3, [set(&[]), set(&[2]), set(&[1, 2, 3])]).unwrap();
        assert!(is_near_k_cube(&f, 2));
        let g = SetFamily::new(3, [set(&[]), set(&[2]), set(&[1, 3])]).unwrap();
        assert!(!is_near_k_cube(&g, 2));
        assert!(!is_near_k_cube(&power_cube(2).unwrap(), 2));
    }

    #[test]
    fn canonical_near_cube_forms() {
        let forms = near_cube_canonical_forms(2, 3).unwrap();
        assert_eq!(forms.len(), 2);
        assert_eq!(forms[0].len(), 3);
        assert!(near_cube_canonical_forms(4, 3).unwrap().is_empty());
    }
}
