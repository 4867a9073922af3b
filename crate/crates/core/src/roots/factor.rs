use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Prime factorization by trial division with divisors up to `bound`.
///
/// Fails if a cofactor remains that could still be composite, i.e. one whose
/// square root exceeds `bound`. Zero has no factorization and is rejected.
pub fn factorize(n: &BigUint, bound: u64) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::FactorBoundExceeded {
            bound,
            value: "0".to_string(),
        });
    }
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let mut divisor = 2u64;
    while divisor <= bound {
        let d = BigUint::from(divisor);
        if &d * &d > rest {
            break;
        }
        let mut exponent = 0;
        loop {
            let (quot, rem) = rest.div_rem(&d);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            exponent += 1;
        }
        if exponent > 0 {
            factors.push((d, exponent));
        }
        divisor += if divisor == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let d = BigUint::from(divisor);
        if &d * &d <= rest {
            return Err(Error::FactorBoundExceeded {
                bound,
                value: n.to_string(),
            });
        }
        factors.push((rest, 1));
    }
    Ok(factors)
}

/// All positive divisors, ascending.
pub fn divisors(factors: &[(BigUint, u32)]) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (prime, exponent) in factors {
        let mut next = Vec::with_capacity(out.len() * (*exponent as usize + 1));
        for d in &out {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..*exponent {
                power *= prime;
                next.push(power.clone());
            }
        }
        out = next;
    }
    out.sort();
    out
}
