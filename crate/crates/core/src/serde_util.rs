//! Serialization helpers shared by the report types.

use serde::Serializer;

use crate::rational::{to_fraction_string, Rational};

/// Exact fractions go out as `"p/q"` strings.
pub fn fraction<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&to_fraction_string(value))
}

pub fn fractions<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(to_fraction_string))
}

/// Rounds to 12 significant digits.
pub fn round_sig12(value: f64) -> f64 {
    if !value.is_finite() || value == 0.0 {
        return value;
    }
    format!("{value:.11e}").parse().unwrap_or(value)
}

pub fn sig12<S: Serializer>(value: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_f64(round_sig12(*value))
}
