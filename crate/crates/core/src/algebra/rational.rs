use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for `n/d` as a [`Rational`].
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"` (optional sign on the numerator).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::ParseRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// `"n/d"`, or just `"n"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Nearest double. Values beyond the double range saturate to ±∞.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.numer().sign() == num_bigint::Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("25/9").unwrap(), rat(25, 9));
        assert_eq!(parse_rational("-10/4").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-14, 3)), "-14/3");
        assert_eq!(format_rational(&rat(6, 3)), "2");
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&rat(5, 3)), 5.0 / 3.0);
        assert_eq!(to_f64(&rat(-1, 4)), -0.25);
    }

    fn canonical(r: &Rational) -> bool {
        r.denom().is_positive() && r.numer().gcd(r.denom()) == BigInt::from(1)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn arithmetic_stays_canonical(
            a in -10_000i64..10_000, b in 1i64..10_000,
            c in -10_000i64..10_000, d in -10_000i64..10_000,
        ) {
            prop_assume!(d != 0);
            let x = rat(a, b);
            let y = rat(c, d);
            prop_assert!(canonical(&(&x + &y)));
            prop_assert!(canonical(&(&x - &y)));
            prop_assert!(canonical(&(&x * &y)));
            if c != 0 {
                prop_assert!(canonical(&(&x / &y)));
            }
        }
    }
}
