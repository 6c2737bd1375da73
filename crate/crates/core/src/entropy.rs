//! Entropy side of the size bounds.
//!
//! Distributions are exact (rational probabilities); entropies are binary64
//! bits. Comparisons between entropies use [`ENTROPY_TOLERANCE`].

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::{E, LOG2_E};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{SetFamily, SetMask};
use crate::rational::{ratio, to_f64, to_fraction_string, Rational};

/// `(3 - √5) / 2`, the largest α for which the entropy-ratio constant exceeds 1.
pub const ALPHA_THRESHOLD: f64 = 0.381_966_011_250_105_1;

/// Golden ratio `(1 + √5) / 2`.
const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

pub const ENTROPY_TOLERANCE: f64 = 1e-9;

/// Exact test of `alpha < (3 - √5) / 2` for a rational `alpha = p/q`.
pub fn below_threshold(alpha: &Rational) -> bool {
    // α < (3 - √5)/2  ⇔  √5 < (3q - 2p)/q  ⇔  3q - 2p > 0 and 5q² < (3q - 2p)².
    let p = alpha.numer();
    let q = alpha.denom();
    let gap: BigInt = q * 3 - p * 2;
    gap.is_positive() && q * q * 5 < &gap * &gap
}

/// `H(p) = -p log₂ p - (1 - p) log₂ (1 - p)`, with `0 log₂ 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    Ok(plogp(p) + plogp(1.0 - p))
}

/// `-x log₂ x`, zero at zero.
fn plogp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// The entropy-ratio constant: `H(2α - α²) / H(α)` below the threshold and
/// `φ (1 - α)` at or above it. The two branches meet at the threshold.
pub fn lambda_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha.to_string(), "(0, 1)"));
    }
    if alpha < ALPHA_THRESHOLD {
        Ok(binary_entropy(2.0 * alpha - alpha * alpha)? / binary_entropy(alpha)?)
    } else {
        Ok(GOLDEN_RATIO * (1.0 - alpha))
    }
}

fn check_bound_args(alpha: f64, k: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < ALPHA_THRESHOLD) {
        return Err(Error::AlphaOutOfRange(alpha.to_string(), "(0, (3-√5)/2)"));
    }
    if k < 2 {
        return Err(Error::KOutOfRange {
            k,
            min: 2,
            max: usize::MAX,
        });
    }
    lambda_alpha(alpha)
}

/// `λ/(λ-1) · (k-1)`: if `f_k(F) <= α` then `log₂ |F|` is at most this.
pub fn simple_size_bound(alpha: f64, k: usize) -> Result<f64> {
    let lambda = check_bound_args(alpha, k)?;
    Ok(lambda / (lambda - 1.0) * (k - 1) as f64)
}

/// Size bounds for one `(α, k)` pair, in bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub alpha: f64,
    pub k: usize,
    pub lambda: f64,
    #[serde(rename = "simple_bound_bits")]
    pub simple_bound: f64,
    #[serde(rename = "refined_bound_bits")]
    pub refined_bound: f64,
    /// Projection ratio `|π(F)| / |F|` at which the refined bound is attained.
    pub rho_star: f64,
    /// `⌈2^simple_bound⌉`.
    pub min_family_size_simple: f64,
    /// `⌈2^refined_bound⌉`.
    pub min_family_size_refined: f64,
}

/// The refined bound, optimized over the projection ratio ρ:
///
/// `λ/(λ-1) · c - 1/(λ-1) · log₂(λ c e / log₂ e)` with `c = 2^(k-1)(k-1)/(2^(k-1)-1)`,
/// attained at `ρ* = log₂ e / (λ c)`.
pub fn refined_size_bound(alpha: f64, k: usize) -> Result<BoundReport> {
    let lambda = check_bound_args(alpha, k)?;
    let simple_bound = lambda / (lambda - 1.0) * (k - 1) as f64;
    let c = convexity_slope(k);
    let refined_bound =
        lambda / (lambda - 1.0) * c - (lambda * c * E / LOG2_E).log2() / (lambda - 1.0);
    let rho_star = LOG2_E / (lambda * c);
    Ok(BoundReport {
        alpha,
        k,
        lambda,
        simple_bound,
        refined_bound,
        rho_star,
        min_family_size_simple: simple_bound.exp2().ceil(),
        min_family_size_refined: refined_bound.exp2().ceil(),
    })
}

/// Like [`refined_size_bound`], but decides admissibility of `alpha` exactly.
pub fn bound_report(alpha: &Rational, k: usize) -> Result<BoundReport> {
    if !alpha.is_positive() || !below_threshold(alpha) {
        return Err(Error::AlphaOutOfRange(
            to_fraction_string(alpha),
            "(0, (3-√5)/2)",
        ));
    }
    let mut alpha_f = to_f64(alpha);
    if alpha_f >= ALPHA_THRESHOLD {
        // Exactly below but rounds onto the constant.
        alpha_f = f64::from_bits(ALPHA_THRESHOLD.to_bits() - 1);
    }
    refined_size_bound(alpha_f, k)
}

/// `2^(k-1)(k-1) / (2^(k-1) - 1)`: slope of the chord of `x log₂ x` over
/// `[1, 2^(k-1)]`. Zero for `k = 1`, where every fiber is a single set.
pub fn convexity_slope(k: usize) -> f64 {
    if k <= 1 {
        return 0.0;
    }
    let cube = ((k - 1) as f64).exp2();
    cube * (k - 1) as f64 / (cube - 1.0)
}

/// Exact probability distribution over subsets of the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionOnSets {
    probs: BTreeMap<SetMask, Rational>,
}

impl DistributionOnSets {
    /// Drops zero entries; fails on negative probabilities or a total other than 1.
    pub fn new(probs: BTreeMap<SetMask, Rational>) -> Result<Self> {
        if probs.values().any(|p| p.is_negative()) {
            return Err(Error::InvalidDistribution("negative probability"));
        }
        let probs: BTreeMap<_, _> = probs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        let total: Rational = probs.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution("probabilities must sum to 1"));
        }
        Ok(DistributionOnSets { probs })
    }

    pub fn point_mass(set: SetMask) -> Self {
        DistributionOnSets {
            probs: BTreeMap::from([(set, Rational::one())]),
        }
    }

    /// Uniform over the members of `family`.
    pub fn uniform(family: &SetFamily) -> Self {
        let p = ratio(1, family.len());
        DistributionOnSets {
            probs: family.iter().map(|&s| (s, p.clone())).collect(),
        }
    }

    pub fn probability(&self, set: SetMask) -> Rational {
        self.probs.get(&set).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (SetMask, &Rational)> {
        self.probs.iter().map(|(&s, p)| (s, p))
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    pub fn support_sets(&self) -> impl Iterator<Item = SetMask> + '_ {
        self.probs.keys().copied()
    }

    /// `Pr(element ∈ A)`.
    pub fn marginal(&self, element: usize) -> Rational {
        self.probs
            .iter()
            .filter(|(s, _)| s.contains(element))
            .map(|(_, p)| p)
            .sum()
    }

    /// Largest `Pr(i ∈ A)` over all elements, or 0 when every set is empty.
    pub fn max_marginal(&self) -> Rational {
        let top = self.probs.keys().fold(SetMask::EMPTY, |acc, &s| acc | s);
        top.elements()
            .map(|e| self.marginal(e))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Shannon entropy in bits.
pub fn entropy(dist: &DistributionOnSets) -> f64 {
    dist.probs.values().map(|p| plogp(to_f64(p))).sum()
}

/// Exact law of `A ∪ B` for `A`, `B` independent with law `dist`.
pub fn union_distribution(dist: &DistributionOnSets) -> DistributionOnSets {
    // Scale every probability to an integer weight over a common denominator.
    let denom = dist
        .probs
        .values()
        .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let weights: Vec<(SetMask, BigInt)> = dist
        .probs
        .iter()
        .map(|(&s, p)| (s, p.numer() * (&denom / p.denom())))
        .collect();

    let small: Option<(u64, Vec<(SetMask, u64)>)> =
        denom.to_u64().filter(|&d| d <= u32::MAX as u64).map(|d| {
            let w = weights
                .iter()
                .map(|(s, w)| (*s, w.to_u64().expect("weight <= denominator")));
            (d, w.collect())
        });

    let denom_sq = &denom * &denom;
    let probs = match small {
        Some((_, weights)) => {
            let mut acc: HashMap<SetMask, u128> = HashMap::new();
            for &(a, wa) in &weights {
                for &(b, wb) in &weights {
                    *acc.entry(a | b).or_insert(0) += wa as u128 * wb as u128;
                }
            }
            acc.into_iter()
                .map(|(s, c)| (s, Rational::new(BigInt::from(c), denom_sq.clone())))
                .collect()
        }
        None => {
            let mut acc: HashMap<SetMask, BigInt> = HashMap::new();
            for (a, wa) in &weights {
                for (b, wb) in &weights {
                    *acc.entry(*a | *b).or_insert_with(BigInt::zero) += wa * wb;
                }
            }
            acc.into_iter()
                .map(|(s, c)| (s, Rational::new(c, denom_sq.clone())))
                .collect()
        }
    };
    DistributionOnSets { probs }
}

/// Law of `π(X) = X \ top` for `X` uniform on `family`, where `top` holds the
/// `k - 1` most frequent elements.
pub fn projected_distribution(family: &SetFamily, k: usize) -> Result<DistributionOnSets> {
    let projection = family.project_away_top(k)?;
    let m = family.len();
    let probs = projection
        .family
        .iter()
        .zip(&projection.preimage_sizes)
        .map(|(&s, &c)| (s, ratio(c, m)))
        .collect();
    Ok(DistributionOnSets { probs })
}

/// `H(X | π(X))` for `X` uniform on `family`: `Σ (c/m) log₂ c` over fibers of size `c`.
pub fn conditional_entropy_given_projection(family: &SetFamily, k: usize) -> Result<f64> {
    let projection = family.project_away_top(k)?;
    let m = family.len() as f64;
    Ok(projection
        .preimage_sizes
        .iter()
        .map(|&c| c as f64 / m * (c as f64).log2())
        .sum())
}

/// Outcome of comparing `H(A ∪ B)` with `λ_α H(A)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionEntropyReport {
    #[serde(serialize_with = "crate::serde_util::fraction")]
    pub alpha: Rational,
    #[serde(serialize_with = "crate::serde_util::fraction")]
    pub max_marginal: Rational,
    pub lambda: f64,
    /// `H(A ∪ B)`.
    pub lhs: f64,
    /// `λ_α H(A)`.
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `H(A ∪ B) >= λ_α H(A)` for `A` uniform on `family`.
pub fn check_union_entropy_inequality(
    family: &SetFamily,
    alpha: &Rational,
) -> Result<UnionEntropyReport> {
    check_union_entropy_inequality_for(&DistributionOnSets::uniform(family), alpha)
}

/// Checks `H(A ∪ B) >= λ_α H(A)` for `A ~ dist`. Every element must satisfy
/// `Pr(i ∈ A) <= α`, and `α` must lie strictly between 0 and the threshold.
pub fn check_union_entropy_inequality_for(
    dist: &DistributionOnSets,
    alpha: &Rational,
) -> Result<UnionEntropyReport> {
    if !alpha.is_positive() || !below_threshold(alpha) {
        return Err(Error::AlphaOutOfRange(
            to_fraction_string(alpha),
            "(0, (3-√5)/2)",
        ));
    }
    let max_marginal = dist.max_marginal();
    if &max_marginal > alpha {
        return Err(Error::FrequencyAboveAlpha {
            max_frequency: to_fraction_string(&max_marginal),
            alpha: to_fraction_string(alpha),
        });
    }
    let lambda = lambda_alpha(to_f64(alpha).min(f64::from_bits(ALPHA_THRESHOLD.to_bits() - 1)))?;
    let lhs = entropy(&union_distribution(dist));
    let rhs = lambda * entropy(dist);
    Ok(UnionEntropyReport {
        alpha: alpha.clone(),
        max_marginal,
        lambda,
        lhs,
        rhs,
        holds: lhs >= rhs - ENTROPY_TOLERANCE,
    })
}
