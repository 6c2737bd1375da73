use std::collections::BTreeMap;

use proptest::prelude::*;
use ucfreq::entropy::{
    binary_entropy, check_union_entropy_inequality_for, conditional_entropy_given_projection,
    entropy, projected_distribution, union_distribution, DistributionOnSets,
};
use ucfreq::format::{parse_family, to_json, to_text};
use ucfreq::good_sets::{check_certificate, minimal_k_good};
use ucfreq::rational::{parse_rational, ratio, to_fraction_string};
use ucfreq::verifier::{check_nagel, classify_range, NagelStatus};
use ucfreq::{direct_sum, nagel_example, near_k_cube, NearKCubeSpec, SetFamily, SetMask};

fn closure_of(n: usize, generators: &[u64]) -> SetFamily {
    let full = SetMask::full(n).bits();
    SetFamily::union_closure(generators.iter().map(|&g| SetMask::from_bits(g & full)), n).unwrap()
}

prop_compose! {
    fn union_closed(max_n: usize)(n in 1..=max_n)(
        n in Just(n),
        generators in prop::collection::vec(any::<u64>(), 1..7),
    ) -> SetFamily {
        closure_of(n, &generators)
    }
}

prop_compose! {
    fn union_closed_with_empty(max_n: usize)(family in union_closed(max_n)) -> SetFamily {
        family.normalize_with_empty()
    }
}

fn brute_force_closed(family: &SetFamily) -> bool {
    let members = family.members();
    members
        .iter()
        .all(|&a| members.iter().all(|&b| members.contains(&(a | b))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_is_closed_and_idempotent(family in union_closed(12)) {
        prop_assert!(brute_force_closed(&family));
        prop_assert!(family.is_union_closed());
        let again = SetFamily::union_closure(family.iter().copied(), family.n()).unwrap();
        prop_assert_eq!(again, family);
    }

    #[test]
    fn closure_is_monotone(
        n in 1usize..10,
        a in prop::collection::vec(any::<u64>(), 1..5),
        b in prop::collection::vec(any::<u64>(), 0..4),
    ) {
        let small = closure_of(n, &a);
        let both: Vec<u64> = a.iter().chain(&b).copied().collect();
        let big = closure_of(n, &both);
        prop_assert!(small.iter().all(|&s| big.contains(s)));
    }

    #[test]
    fn frequencies_double_count(family in union_closed(14)) {
        let by_element: usize = family.element_counts().iter().sum();
        let by_member: usize = family.iter().map(|s| s.len()).sum();
        prop_assert_eq!(by_element, by_member);
    }

    #[test]
    fn kth_frequency_is_nonincreasing(family in union_closed(12)) {
        for k in 1..family.n() {
            prop_assert!(family.kth_frequency(k).unwrap() >= family.kth_frequency(k + 1).unwrap());
        }
    }

    #[test]
    fn adding_empty_never_raises_a_frequency(family in union_closed(12)) {
        let normalized = family.normalize_with_empty();
        prop_assert!(normalized.is_union_closed());
        for e in 1..=family.n() {
            prop_assert!(normalized.frequency(e).unwrap() <= family.frequency(e).unwrap());
        }
    }

    #[test]
    fn projection_preserves_closure_and_mass(family in union_closed(12), k_seed in any::<usize>()) {
        let k = 1 + k_seed % (family.n() + 1);
        let projection = family.project_away_top(k).unwrap();
        prop_assert!(projection.family.is_union_closed());
        prop_assert_eq!(projection.removed.len(), k - 1);
        prop_assert_eq!(projection.preimage_sizes.len(), projection.family.len());
        prop_assert_eq!(projection.preimage_sizes.iter().sum::<usize>(), family.len());
        prop_assert!(projection.preimage_sizes.iter().all(|&c| c >= 1 && c <= 1 << (k - 1)));
        prop_assert!(projection.family.iter().all(|s| s.is_disjoint(projection.removed)));
    }

    #[test]
    fn nagel_bound_holds(family in union_closed_with_empty(12)) {
        for k in 1..=family.support().len() {
            let check = check_nagel(&family, k).unwrap();
            prop_assert_ne!(check.status, NagelStatus::Violation);
        }
    }

    #[test]
    fn text_and_json_round_trip(family in union_closed(16)) {
        prop_assert_eq!(parse_family(&to_text(&family)).unwrap(), family.clone());
        prop_assert_eq!(parse_family(&to_json(&family)).unwrap(), family);
    }

    #[test]
    fn direct_sum_keeps_part_frequencies(a in union_closed(5), b in union_closed(5)) {
        let sum = direct_sum(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(sum.len(), a.len() * b.len());
        prop_assert!(sum.is_union_closed());
        for e in 1..=a.n() {
            prop_assert_eq!(sum.frequency(e).unwrap(), a.frequency(e).unwrap());
        }
        for e in 1..=b.n() {
            prop_assert_eq!(sum.frequency(a.n() + e).unwrap(), b.frequency(e).unwrap());
        }
    }

    #[test]
    fn canonical_form_ignores_labels(
        family in union_closed(6),
        shuffle in Just((1..=6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let relabeled = family.with_ground_set(6).unwrap().relabel(&shuffle, 6).unwrap();
        prop_assert_eq!(relabeled.canonical_form().unwrap(), family.canonical_form().unwrap());
    }

    #[test]
    fn good_set_certificates_check_out(family in union_closed_with_empty(12), k_seed in any::<usize>()) {
        let support = family.support().len();
        prop_assume!(support >= 2);
        let k = 2 + k_seed % (support - 1);
        let cert = minimal_k_good(&family, k).unwrap();
        prop_assert_eq!(check_certificate(&family, &cert), Ok(()));
        prop_assert!(cert.bound_by_size <= family.kth_frequency(k).unwrap());
    }

    #[test]
    fn chain_rule(family in union_closed(10), k_seed in any::<usize>()) {
        let k = 1 + k_seed % (family.n() + 1);
        let h_a = entropy(&projected_distribution(&family, k).unwrap());
        let h_x_a = conditional_entropy_given_projection(&family, k).unwrap();
        prop_assert!(((family.len() as f64).log2() - h_a - h_x_a).abs() < 1e-9);
    }

    #[test]
    fn union_entropy_below_log_size(family in union_closed_with_empty(10)) {
        prop_assume!(family.len() >= 2);
        let h = entropy(&union_distribution(&DistributionOnSets::uniform(&family)));
        prop_assert!(h < (family.len() as f64).log2());
    }

    #[test]
    fn union_entropy_inequality_on_small_marginals(
        sets in prop::collection::vec((1u64..32, 1u32..20), 1..6),
        empty_weight in 0u32..200,
    ) {
        let mut weights: BTreeMap<SetMask, u32> = BTreeMap::new();
        *weights.entry(SetMask::EMPTY).or_default() += empty_weight;
        for (mask, w) in sets {
            *weights.entry(SetMask::from_bits(mask)).or_default() += w;
        }
        let total: u32 = weights.values().sum();
        let probs = weights
            .into_iter()
            .filter(|&(_, w)| w > 0)
            .map(|(s, w)| (s, ratio(w, total)))
            .collect();
        let dist = DistributionOnSets::new(probs).unwrap();
        let alpha = ratio(19, 50);
        prop_assume!(dist.max_marginal() <= alpha);
        let report = check_union_entropy_inequality_for(&dist, &alpha).unwrap();
        prop_assert!(report.holds, "{:?}", report);
    }

    #[test]
    fn binary_entropy_symmetric_and_concave(p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
        let h = |x: f64| binary_entropy(x).unwrap();
        prop_assert!((h(p) - h(1.0 - p)).abs() < 1e-12);
        prop_assert!(h((p + q) / 2.0) + 1e-12 >= (h(p) + h(q)) / 2.0);
        prop_assert!((0.0..=1.0).contains(&h(p)));
    }

    #[test]
    fn near_cube_sits_on_the_threshold(k in 1usize..12, extra_bits in 1u64..(1 << 8)) {
        let extra = SetMask::from_bits(extra_bits << (k - 1));
        let family = near_k_cube(NearKCubeSpec::new(k, extra).unwrap()).unwrap();
        prop_assert_eq!(family.kth_frequency(k).unwrap(), ratio(1, (1usize << (k - 1)) + 1));
        prop_assert!(family.is_union_closed());
    }

    #[test]
    fn rational_strings_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let value = ratio(p, q);
        prop_assert_eq!(parse_rational(&to_fraction_string(&value)).unwrap(), value);
    }

    #[test]
    fn some_regime_always_applies(m in 1u64.., k in 2usize..40) {
        let tag = classify_range(m, k).unwrap();
        prop_assert!(!tag.applicable.is_empty());
    }
}

#[test]
fn nagel_example_closed_form() {
    for n in 1..=4usize {
        for k in 2..=5usize {
            let family = nagel_example(n, k).unwrap();
            let base = (1usize << n) + 1;
            let m = base.pow(k as u32 - 1);
            assert_eq!(family.len(), m);
            assert_eq!(
                family.kth_frequency(k).unwrap(),
                ratio(1, 2) - ratio(1, 2 * base)
            );
        }
    }
}
