//! Exact fractions used for frequencies, thresholds and probabilities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Arbitrary-precision fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rational {
    Rational::new(numer.into(), denom.into())
}

pub fn from_int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Renders `p/q`, always with an explicit denominator (`1/1`, `0/1`).
pub fn to_fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Both parts overflow f64; scale them down together.
        let shift = value
            .numer()
            .bits()
            .max(value.denom().bits())
            .saturating_sub(1000);
        let n = (value.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (value.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.38` or `-1.5e-2`, exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let text = text.trim();
    let err = |msg: &str| ParseError::new(1, 1, format!("{msg}: `{text}`"));
    if text.is_empty() {
        return Err(err("empty number"));
    }
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = text[pos + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err("not a number"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| err("not a number"))?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// True when `0 < value < 1`.
pub fn in_open_unit_interval(value: &Rational) -> bool {
    value.is_positive() && *value < Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/9").unwrap(), ratio(1, 9));
        assert_eq!(parse_rational("2/6").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("0.38").unwrap(), ratio(19, 50));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3").unwrap(), from_int(3));
        assert_eq!(parse_rational("-1.5e-2").unwrap(), ratio(-3, 200));
        assert_eq!(parse_rational("2.5E1").unwrap(), from_int(25));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", "-", "1/x", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fraction_strings_always_have_denominator() {
        assert_eq!(to_fraction_string(&from_int(1)), "1/1");
        assert_eq!(to_fraction_string(&ratio(3, 9)), "1/3");
        assert_eq!(to_fraction_string(&from_int(0)), "0/1");
    }

    #[test]
    fn huge_fractions_convert_to_f64() {
        let big = num_traits::pow(BigInt::from(3), 2000);
        let value = Rational::new(big.clone(), big * 2);
        assert!((to_f64(&value) - 0.5).abs() < 1e-12);
    }
}
