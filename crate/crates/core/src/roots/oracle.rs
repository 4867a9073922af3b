//! Rational roots of an integer polynomial, found without any knowledge of
//! where they are expected.
//!
//! Candidates are restricted by the rational root theorem (denominator
//! divides the leading coefficient, numerator divides the constant term) and
//! located by exact real-root isolation: Descartes' rule of signs on dyadic
//! subintervals, followed by sign bisection until each isolating interval is
//! narrower than `1/|leading|`. Such an interval holds at most one admissible
//! numerator per denominator, and every survivor is checked by exact
//! evaluation.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::{divisors, factorize, DEFAULT_TRIAL_BOUND};
use crate::algebra::{IntPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest trial divisor used to factor the extreme coefficients.
    pub trial_bound: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            trial_bound: DEFAULT_TRIAL_BOUND,
        }
    }
}

/// All distinct rational roots of `p`, ascending.
pub fn rational_root_oracle(p: &IntPoly) -> Result<Vec<Rational>> {
    rational_root_oracle_with(p, OracleConfig::default())
}

pub fn rational_root_oracle_with(p: &IntPoly, config: OracleConfig) -> Result<Vec<Rational>> {
    match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    let mut coeffs = p.coeffs().to_vec();
    let mut roots = Vec::new();
    let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if leading_zeros > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..leading_zeros);
    }
    if coeffs.len() > 1 {
        let search = Search::new(coeffs, config)?;
        roots.extend(search.signed_roots(false));
        roots.extend(search.signed_roots(true));
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

struct Search {
    /// Coefficients with nonzero constant term.
    coeffs: Vec<BigInt>,
    constant: BigInt,
    /// Admissible denominators: divisors of the leading coefficient.
    denominators: Vec<BigInt>,
    leading_abs: BigInt,
}

impl Search {
    fn new(coeffs: Vec<BigInt>, config: OracleConfig) -> Result<Self> {
        let leading_abs = coeffs.last().expect("nonconstant").abs();
        let constant = coeffs[0].clone();
        let lead_factors = factorize(&leading_abs.magnitude().clone(), config.trial_bound)?;
        // The constant term's factorization only certifies that candidate
        // numerators can be checked by divisibility; it is not enumerated.
        factorize(constant.magnitude(), config.trial_bound)?;
        let denominators = divisors(&lead_factors)
            .into_iter()
            .map(|d: BigUint| BigInt::from_biguint(Sign::Plus, d))
            .collect();
        Ok(Self {
            coeffs,
            constant,
            denominators,
            leading_abs,
        })
    }

    /// Roots of sign `+` (or `−` when `negative`), via the substitution `t → −t`.
    fn signed_roots(&self, negative: bool) -> Vec<Rational> {
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if negative && i % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        let scale_exp = positive_root_bound_exp(&coeffs);
        // Q(x) = P(2^K·x): every positive root of P maps into (0, 1).
        let scaled: Vec<BigInt> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c << (scale_exp as usize * i))
            .collect();
        let mut found = Vec::new();
        let mut stack = vec![Node {
            poly: scaled,
            c: BigInt::zero(),
            k: 0,
        }];
        while let Some(node) = stack.pop() {
            let var = descartes_unit_interval(&node.poly);
            if var == 0 {
                continue;
            }
            if var == 1 {
                found.extend(self.refine_single(&coeffs, &node, scale_exp));
                continue;
            }
            let width = dyadic(BigInt::one(), node.k as i64 - scale_exp as i64);
            let limit = Rational::new(BigInt::one(), &self.leading_abs * &self.leading_abs);
            if width < limit {
                let lo = dyadic(node.c.clone(), node.k as i64 - scale_exp as i64);
                found.extend(self.candidates_in(&coeffs, &lo, &(&lo + &width)));
                continue;
            }
            let (left, mid_root, right) = node.split();
            if mid_root {
                let mid = dyadic(&node.c * 2 + 1, node.k as i64 + 1 - scale_exp as i64);
                found.push(mid);
            }
            stack.push(left);
            stack.push(right);
        }
        if negative {
            found.iter_mut().for_each(|r| *r = -r.clone());
        }
        found
    }

    /// Bisects a node known to hold exactly one simple root until the
    /// interval is narrower than `1/|leading|`, then tests candidates.
    fn refine_single(&self, coeffs: &[BigInt], node: &Node, scale_exp: u32) -> Vec<Rational> {
        let poly = &node.poly;
        let sign_at_zero = poly[0].sign();
        let mut u = BigInt::zero();
        let mut s = 0u32;
        let limit = Rational::new(BigInt::one(), self.leading_abs.clone());
        loop {
            // t-width of the current subinterval is 2^(K − k − s)
            let width = dyadic(BigInt::one(), node.k as i64 + s as i64 - scale_exp as i64);
            if width < limit {
                break;
            }
            let mid_u = &u * 2 + 1;
            let value = eval_dyadic(poly, &mid_u, s + 1);
            if value.is_zero() {
                let exp = node.k as i64 + s as i64 + 1 - scale_exp as i64;
                return vec![dyadic(&node.c * BigInt::one().shl_by(s + 1) + mid_u, exp)];
            }
            s += 1;
            if value.sign() == sign_at_zero {
                u = mid_u;
            } else {
                u = mid_u - 1;
            }
        }
        let exp = node.k as i64 + s as i64 - scale_exp as i64;
        let numerator = &node.c * BigInt::one().shl_by(s) + &u;
        let lo = dyadic(numerator.clone(), exp);
        let hi = dyadic(numerator + 1, exp);
        self.candidates_in(coeffs, &lo, &hi)
    }

    /// Rational-root-theorem candidates `y/q` in the open interval `(lo, hi)`.
    fn candidates_in(&self, coeffs: &[BigInt], lo: &Rational, hi: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        for q in &self.denominators {
            let scaled_lo = lo * Rational::from_integer(q.clone());
            let scaled_hi = hi * Rational::from_integer(q.clone());
            let mut y: BigInt = scaled_lo.floor().to_integer() + 1;
            while Rational::from_integer(y.clone()) < scaled_hi {
                if y.gcd(q).is_one()
                    && (&self.constant % &y).is_zero()
                    && homogeneous_eval(coeffs, &y, q).is_zero()
                {
                    out.push(Rational::new(y.clone(), q.clone()));
                }
                y += 1;
            }
        }
        out
    }
}

/// Dyadic subinterval `(c/2^k, (c+1)/2^k)` of `(0, 1)` and the polynomial
/// whose roots in `(0, 1)` are the roots of `Q` in that subinterval.
struct Node {
    poly: Vec<BigInt>,
    c: BigInt,
    k: u32,
}

impl Node {
    /// Halves the interval. Returns whether the midpoint itself is a root;
    /// such roots are divided out of both children.
    fn split(&self) -> (Node, bool, Node) {
        let n = self.poly.len() - 1;
        // 2^n·R(x/2)
        let mut left: Vec<BigInt> = self
            .poly
            .iter()
            .enumerate()
            .map(|(i, c)| c << (n - i))
            .collect::<Vec<BigInt>>();
        let mut mid_root = false;
        while left.iter().sum::<BigInt>().is_zero() {
            mid_root = true;
            left = divide_by_x_minus_one(&left);
        }
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        while right.first().is_some_and(Zero::is_zero) {
            right.remove(0);
        }
        let c2: BigInt = &self.c * 2;
        (
            Node {
                poly: left,
                c: c2.clone(),
                k: self.k + 1,
            },
            mid_root,
            Node {
                poly: right,
                c: c2 + 1,
                k: self.k + 1,
            },
        )
    }
}

/// `K` with `2^K` exceeding every positive root (Cauchy bound).
fn positive_root_bound_exp(coeffs: &[BigInt]) -> u32 {
    let lead_bits = coeffs.last().expect("nonconstant").bits() as i64;
    let max_bits = coeffs[..coeffs.len() - 1]
        .iter()
        .map(BigInt::bits)
        .max()
        .unwrap_or(0) as i64;
    ((max_bits - lead_bits + 1).max(0) + 1) as u32
}

/// Sign variations of `(x+1)^n·R(1/(x+1))`, an upper bound on (and equal in
/// parity to) the number of roots of `R` in `(0, 1)`.
fn descartes_unit_interval(poly: &[BigInt]) -> usize {
    let mut reversed: Vec<BigInt> = poly.iter().rev().cloned().collect();
    taylor_shift_one(&mut reversed);
    let mut variations = 0;
    let mut last = Sign::NoSign;
    for c in &reversed {
        let sign = c.sign();
        if sign == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && sign != last {
            variations += 1;
        }
        last = sign;
    }
    variations
}

/// In-place `R(x) → R(x + 1)`.
fn taylor_shift_one(coeffs: &mut [BigInt]) {
    let n = coeffs.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = coeffs[j + 1].clone();
            coeffs[j] += next;
        }
    }
}

fn divide_by_x_minus_one(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = coeffs.len();
    let mut quotient = vec![BigInt::zero(); n - 1];
    let mut carry = BigInt::zero();
    for i in (1..n).rev() {
        carry += &coeffs[i];
        quotient[i - 1] = carry.clone();
    }
    quotient
}

/// `2^(−exp)·value` as a rational (negative `exp` scales up).
fn dyadic(value: BigInt, exp: i64) -> Rational {
    if exp >= 0 {
        Rational::new(value, BigInt::one().shl_by(exp as u32))
    } else {
        Rational::from_integer(value.shl_by((-exp) as u32))
    }
}

/// `2^(s·n)·R(u/2^s)`, exact.
fn eval_dyadic(poly: &[BigInt], u: &BigInt, s: u32) -> BigInt {
    let denom = BigInt::one().shl_by(s);
    homogeneous_eval(poly, u, &denom)
}

/// `Σ c_i·y^i·q^(n−i)`, i.e. `q^n·P(y/q)`.
fn homogeneous_eval(coeffs: &[BigInt], y: &BigInt, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut q_power = BigInt::one();
    // Horner from the top with explicit powers of q.
    let mut terms = coeffs.iter().rev();
    if let Some(lead) = terms.next() {
        acc = lead.clone();
    }
    for c in terms {
        q_power *= q;
        acc = acc * y + c * &q_power;
    }
    acc
}

trait ShlBy {
    fn shl_by(self, bits: u32) -> BigInt;
}

impl ShlBy for BigInt {
    fn shl_by(self, bits: u32) -> BigInt {
        self << bits as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn roots_of(coeffs: &[i64]) -> Vec<Rational> {
        rational_root_oracle(&IntPoly::from_i64s(coeffs)).unwrap()
    }

    #[test]
    fn printed_examples() {
        assert_eq!(roots_of(&[25, -34, 9]), vec![rat(1, 1), rat(25, 9)]);
        assert_eq!(
            roots_of(&[-1225, 1891, -747, 81]),
            vec![rat(1, 1), rat(25, 9), rat(49, 9)]
        );
        assert_eq!(roots_of(&[1, 0, 1]), vec![]);
    }

    #[test]
    fn zero_and_negative_roots() {
        // t(t + 1/2)(t − 3) = t³ − (5/2)t² − (3/2)t  →  2t³ − 5t² − 3t
        assert_eq!(
            roots_of(&[0, -3, -5, 2]),
            vec![rat(-1, 2), rat(0, 1), rat(3, 1)]
        );
        assert_eq!(roots_of(&[0, 0, 1]), vec![rat(0, 1)]);
    }

    #[test]
    fn repeated_and_dyadic_roots() {
        // (2t − 1)²(t + 3) = 4t³ + 8t² − 11t + 3
        assert_eq!(roots_of(&[3, -11, 8, 4]), vec![rat(-3, 1), rat(1, 2)]);
        // (t − 1)³
        assert_eq!(roots_of(&[-1, 3, -3, 1]), vec![rat(1, 1)]);
        // (3t − 1)²(3t − 2)² has close repeated non-dyadic roots
        let p = IntPoly::from_i64s(&[4, -36, 117, -162, 81]);
        assert_eq!(
            rational_root_oracle(&p).unwrap(),
            vec![rat(1, 3), rat(2, 3)]
        );
    }

    #[test]
    fn irrational_roots_are_skipped() {
        // (t² − 2)(5t − 7)
        assert_eq!(roots_of(&[14, -10, -7, 5]), vec![rat(7, 5)]);
    }

    #[test]
    fn constant_rejected() {
        assert_eq!(
            rational_root_oracle(&IntPoly::from_i64s(&[5])).unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn respects_trial_bound() {
        // leading coefficient 1_000_003² cannot be certified below 1000
        let lead = 1_000_003i64 * 1_000_003;
        let p = IntPoly::from_i64s(&[-1, lead]);
        let err = rational_root_oracle_with(&p, OracleConfig { trial_bound: 1000 }).unwrap_err();
        assert!(matches!(err, Error::FactorBoundExceeded { .. }));
    }

    /// Brute-force reference: every `y/q` with `q | lead`, `y | constant`.
    fn brute_force(coeffs: &[i64]) -> Vec<Rational> {
        let p = IntPoly::from_i64s(coeffs).to_rat_poly();
        let lead = coeffs.last().unwrap().abs();
        let mut out = Vec::new();
        let constant_idx = coeffs.iter().position(|&c| c != 0).unwrap();
        if constant_idx > 0 {
            out.push(rat(0, 1));
        }
        let constant = coeffs[constant_idx].abs();
        for q in (1..=lead).filter(|q| lead % q == 0) {
            for y in (1..=constant).filter(|y| constant % y == 0) {
                for candidate in [rat(y, q), rat(-y, q)] {
                    if p.eval(&candidate).is_zero() {
                        out.push(candidate);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    proptest! {
        #[test]
        fn matches_brute_force_on_products_of_linear_factors(
            factors in prop::collection::vec((-6i64..=6, 1i64..=4), 1..5),
            extra in prop::collection::vec(-5i64..=5, 0..3),
        ) {
            // ∏(q·t − y) times an arbitrary small cofactor
            let mut poly = IntPoly::from_i64s(&[1]).to_rat_poly();
            for (y, q) in &factors {
                poly = &poly * &IntPoly::from_i64s(&[-y, *q]).to_rat_poly();
            }
            let mut cofactor = extra.clone();
            cofactor.push(1);
            poly = &poly * &IntPoly::from_i64s(&cofactor).to_rat_poly();
            let coeffs: Vec<i64> = poly
                .coeffs()
                .iter()
                .map(|c| i64::try_from(c.to_integer()).unwrap())
                .collect();
            prop_assume!(coeffs.len() > 1);
            prop_assert_eq!(roots_of(&coeffs), brute_force(&coeffs));
        }
    }
}
