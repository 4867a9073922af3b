use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::RatPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense polynomial in `t` with integer coefficients, ascending powers.
///
/// Values produced by [`primitive_integer_form`] have content 1 and a
/// positive leading coefficient. Serializes as a JSON array of decimal
/// strings since coefficients leave the 64-bit range quickly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_else(BigInt::zero)
    }

    /// gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one() && self.leading().is_some_and(Signed::is_positive)
    }

    pub fn to_rat_poly(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.to_rat_poly().eval(x)
    }

    /// Largest coefficient bit length.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(BigInt::bits).max().unwrap_or(0)
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(BigInt::to_string).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_rat_poly().fmt(f)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

/// The unique primitive integer polynomial proportional to `p`, and the
/// factor `scale` with `integer = scale · p`.
pub fn primitive_integer_form(p: &RatPoly) -> Result<(IntPoly, Rational)> {
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?;
    let denominators_lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let numerators: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denominators_lcm / c.denom()))
        .collect();
    let mut content = numerators.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if lead.is_negative() {
        content = -content;
    }
    let coeffs = numerators.into_iter().map(|c| c / &content).collect();
    Ok((
        IntPoly::new(coeffs),
        Rational::new(denominators_lcm, content),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn normalizes_rational_p1() {
        let p = RatPoly::new(vec![rat(-25, 10), rat(34, 10), rat(-9, 10)]);
        let (ip, scale) = primitive_integer_form(&p).unwrap();
        assert_eq!(ip, IntPoly::from_i64s(&[25, -34, 9]));
        assert_eq!(scale, rat(-10, 1));
    }

    #[test]
    fn already_primitive() {
        let (ip, scale) = primitive_integer_form(&RatPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(ip, IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(scale, rat(1, 1));
    }

    #[test]
    fn normalizes_rational_p3() {
        let p = RatPoly::new(vec![
            rat(-105, 16),
            rat(4561, 420),
            rat(-4307, 840),
            rat(123, 140),
            rat(-27, 560),
        ]);
        let (ip, scale) = primitive_integer_form(&p).unwrap();
        assert_eq!(ip, IntPoly::from_i64s(&[11025, -18244, 8614, -1476, 81]));
        assert_eq!(scale, rat(-1680, 1));
    }

    #[test]
    fn zero_is_rejected() {
        let err = primitive_integer_form(&RatPoly::zero()).unwrap_err();
        assert_eq!(err.to_string(), "cannot normalize zero polynomial");
    }

    #[test]
    fn json_uses_decimal_strings() {
        let p = IntPoly::from_i64s(&[25, -34, 9]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["25","-34","9"]"#);
        let back: IntPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(
            cs in prop::collection::vec((-60i64..60, 1i64..30), 1..7),
        ) {
            let p = RatPoly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect());
            prop_assume!(!p.is_zero());
            let (ip, scale) = primitive_integer_form(&p).unwrap();
            prop_assert!(ip.is_primitive());
            prop_assert_eq!(ip.to_rat_poly(), p.scale(&scale));
            let (again, unit) = primitive_integer_form(&ip.to_rat_poly()).unwrap();
            prop_assert_eq!(again, ip);
            prop_assert_eq!(unit, rat(1, 1));
        }
    }
}
