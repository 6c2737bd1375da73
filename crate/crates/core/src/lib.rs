//! Exact tools for studying element frequencies in union-closed set families.
//!
//! The crate covers:
//!
//! - [`family`]: bitmask families over `[n]`, frequencies, the frequency order,
//!   projections that delete the most frequent elements, and canonical forms.
//! - [`constructions`]: cubes, near-k-cubes, direct sums and the slow-convergence example.
//! - [`entropy`]: binary entropy, the entropy-ratio constant `λ_α`, the two
//!   size bounds for families with a small k-th frequency, and exact
//!   distributions of `A ∪ B`.
//! - [`good_sets`]: minimal k-good sets, witness sets and the union-injection certificate.
//! - [`verifier`]: exhaustive and seeded random sweeps that check the
//!   `1 / (2^(k-1) + 1)` lower bound on the k-th frequency and classify equality cases.
//!
//! Frequencies are always exact rationals; only entropies are floating point.

pub mod constructions;
pub mod entropy;
pub mod error;
pub mod family;
pub mod format;
pub mod good_sets;
pub mod rational;
pub mod serde_util;
pub mod verifier;

pub use constructions::{direct_sum, nagel_example, near_k_cube, power_cube, NearKCubeSpec};
pub use entropy::{BoundReport, DistributionOnSets, UnionEntropyReport};
pub use error::{Error, ParseError, Result};
pub use family::{FrequencyOrder, Projection, SetFamily, SetMask};
pub use good_sets::GoodSetCertificate;
pub use rational::Rational;
pub use verifier::{NagelCheck, NagelStatus, RangeTag, SweepReport};
