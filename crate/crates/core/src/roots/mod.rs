//! Exact verification of the root sets `R_m` of `P_m`.

mod factor;
mod oracle;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use factor::{divisors, factorize, DEFAULT_TRIAL_BOUND};
pub use oracle::{rational_root_oracle, rational_root_oracle_with, OracleConfig};

use crate::algebra::{format_rational, primitive_integer_form, RatPoly, Rational};
use crate::error::{Error, Result};
use crate::recurrence::{
    amn_from_chain, build_amn_polynomial, closed_form_extremes, coefficient_polynomials,
    instantiate_solution, verify_system,
};

/// Predicted roots `λ_j = ((2j+1)/3)²`, `j = 1…m+1`, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub m: usize,
    pub roots: Vec<Rational>,
}

impl RootSet {
    pub fn contains(&self, r: &Rational) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    /// The square roots `(2j+1)/3`, i.e. the admissible `b₀ > 0`.
    pub fn positive_b0(&self) -> Vec<Rational> {
        (1..=self.m + 1).map(root_b0).collect()
    }
}

fn root_b0(j: usize) -> Rational {
    Rational::new(BigInt::from(2 * j + 1), BigInt::from(3))
}

pub fn predicted_roots(m: usize) -> Result<RootSet> {
    if m < 1 {
        return Err(Error::PolynomialOrder);
    }
    let roots = (1..=m + 1)
        .map(|j| {
            let b0 = root_b0(j);
            &b0 * &b0
        })
        .collect();
    Ok(RootSet { m, roots })
}

/// Which parts of the factorization check passed. Produced only when all of
/// them do; any failure is reported as an [`Error`] naming the first mismatch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub m: usize,
    pub roots_vanish: bool,
    pub product_matches: bool,
    pub constant_term_matches: bool,
}

pub fn verify_factorization(m: usize) -> Result<FactorizationReport> {
    let poly = build_amn_polynomial(m)?;
    verify_factorization_of(m, &poly.rational)
}

/// Checks `rational` against `d_m·∏(t − λ_j)`:
/// exact vanishing at every `λ_j`, coefficient-wise equality with the
/// expanded product, and `d_m·(−1)^(m+1)·∏λ_j = −c_m`.
pub fn verify_factorization_of(m: usize, rational: &RatPoly) -> Result<FactorizationReport> {
    let predicted = predicted_roots(m)?;
    let extremes = closed_form_extremes(m)?;
    for root in &predicted.roots {
        let value = rational.eval(root);
        if !value.is_zero() {
            return Err(Error::RootDoesNotVanish {
                m,
                root: Box::new(root.clone()),
                value: Box::new(value),
            });
        }
    }
    let product = predicted
        .roots
        .iter()
        .fold(RatPoly::constant(extremes.d_m.clone()), |acc, root| {
            &acc * &RatPoly::linear(-root.clone(), Rational::one())
        });
    let top = product.coeffs().len().max(rational.coeffs().len());
    for power in 0..top {
        let (expected, found) = (product.coeff(power), rational.coeff(power));
        if expected != found {
            return Err(Error::FactorizationMismatch {
                m,
                power,
                expected: Box::new(expected),
                found: Box::new(found),
            });
        }
    }
    let roots_product: Rational = predicted.roots.iter().product();
    let sign = if (m + 1) % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let lhs = &extremes.d_m * sign * roots_product;
    if lhs != -extremes.c_m.clone() {
        return Err(Error::ConstantTermMismatch {
            m,
            product: Box::new(lhs),
            expected: Box::new(-extremes.c_m),
        });
    }
    Ok(FactorizationReport {
        m,
        roots_vanish: true,
        product_matches: true,
        constant_term_matches: true,
    })
}

/// Divides out `(t − r)` for each `r` in turn, failing on a nonzero
/// remainder. A nonzero constant quotient after `deg` roots shows the roots
/// are simple and exhaust `p`.
pub fn deflate(p: &RatPoly, roots: &[Rational], m: usize) -> Result<RatPoly> {
    let mut rest = p.clone();
    for root in roots {
        let (quotient, remainder) = rest.div_linear(root);
        if !remainder.is_zero() {
            return Err(Error::RootDoesNotVanish {
                m,
                root: Box::new(root.clone()),
                value: Box::new(remainder),
            });
        }
        rest = quotient;
    }
    Ok(rest)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub m_max: usize,
    /// Number of `(m, root)` inclusions checked.
    pub inclusions_checked: usize,
}

/// Confirms `R_{m−1} ⊆ R_m` for `m = 2…m_max` by evaluating `P_m` exactly at
/// each element of `R_{m−1}`. Orders are checked in parallel; the failure
/// reported is the one with the smallest `m`.
pub fn monotonicity_check(m_max: usize) -> Result<MonotonicityReport> {
    if m_max < 2 {
        return Err(Error::ChainTooShort(m_max));
    }
    let outcomes: Vec<Result<usize>> = (2..=m_max)
        .into_par_iter()
        .map(|m| {
            let poly = build_amn_polynomial(m)?;
            let previous = predicted_roots(m - 1)?;
            for root in &previous.roots {
                if !poly.rational.eval(root).is_zero() {
                    return Err(Error::MonotonicityViolation {
                        m,
                        previous: m - 1,
                        root: Box::new(root.clone()),
                    });
                }
            }
            Ok(previous.roots.len())
        })
        .collect();
    let mut inclusions_checked = 0;
    for outcome in outcomes {
        inclusions_checked += outcome?;
    }
    Ok(MonotonicityReport {
        m_max,
        inclusions_checked,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Also run the monotonicity chain `2…m`.
    pub chain: bool,
    /// Run the independent rational-root oracle.
    pub oracle: bool,
    /// Perturb the constant term of `P_m` before checking (negative control).
    pub tamper: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Machine-readable result of [`verify_order`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: usize,
    pub predicted: Vec<String>,
    pub oracle: Option<Vec<String>>,
    pub factorization_ok: bool,
    pub system_ok: bool,
    pub monotonicity_ok: Option<bool>,
    pub checks: Vec<CheckOutcome>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
    out
}

/// Runs every exact check for order `m` and collects the outcomes.
///
/// Verification failures are recorded in the report, not returned as
/// errors; `Err` means the input itself was unusable.
pub fn verify_order(m: usize, options: VerifyOptions) -> Result<VerificationReport> {
    let predicted = predicted_roots(m)?;
    let mut timings = BTreeMap::new();
    let mut checks = Vec::new();

    let chain = timed(&mut timings, "build", || coefficient_polynomials(m))?;
    let mut poly = amn_from_chain(m, &chain)?;
    if options.tamper {
        let mut coeffs = poly.rational.clone().into_coeffs();
        coeffs[0] += Rational::one();
        poly.rational = RatPoly::new(coeffs);
        poly.integer = primitive_integer_form(&poly.rational)?.0;
    }

    let factorization = timed(&mut timings, "factorization", || {
        verify_factorization_of(m, &poly.rational)
    });
    let factorization_ok = factorization.is_ok();
    checks.push(CheckOutcome {
        name: "factorization".into(),
        passed: factorization_ok,
        detail: factorization.err().map(|e| e.to_string()),
    });

    let simple = timed(&mut timings, "deflation", || {
        deflate(&poly.rational, &predicted.roots, m)
    });
    let simple_ok = matches!(&simple, Ok(rest) if rest.degree() == Some(0));
    checks.push(CheckOutcome {
        name: "simple_roots".into(),
        passed: simple_ok,
        detail: match simple {
            Err(e) => Some(e.to_string()),
            Ok(rest) if !simple_ok => Some(format!("deflated remainder {rest}")),
            Ok(_) => None,
        },
    });

    let system_failure = timed(&mut timings, "system", || {
        predicted
            .positive_b0()
            .into_par_iter()
            .flat_map(|b| [b.clone(), -b])
            .find_map_first(|b0| {
                let residuals = verify_system(&instantiate_solution(m, &b0));
                residuals
                    .iter()
                    .position(|r| !r.is_zero())
                    .map(|eq| format!("b0 = {}: equation ({}) residual nonzero", b0, eq + 1))
            })
    });
    let system_ok = system_failure.is_none();
    checks.push(CheckOutcome {
        name: "system".into(),
        passed: system_ok,
        detail: system_failure,
    });

    let oracle = if options.oracle {
        let roots = timed(&mut timings, "oracle", || {
            rational_root_oracle(&poly.integer)
        })?;
        let agree = roots == predicted.roots;
        checks.push(CheckOutcome {
            name: "oracle".into(),
            passed: agree,
            detail: (!agree).then(|| {
                format!(
                    "oracle found {} roots, predicted {}",
                    roots.len(),
                    predicted.roots.len()
                )
            }),
        });
        Some(roots.iter().map(format_rational).collect())
    } else {
        None
    };

    let monotonicity_ok = if options.chain && m >= 2 {
        let outcome = timed(&mut timings, "monotonicity", || monotonicity_check(m));
        let ok = outcome.is_ok();
        checks.push(CheckOutcome {
            name: "monotonicity".into(),
            passed: ok,
            detail: outcome.err().map(|e| e.to_string()),
        });
        Some(ok)
    } else if m >= 2 {
        // single inclusion R_{m−1} ⊆ R_m on the (possibly tampered) polynomial
        let previous = predicted_roots(m - 1)?;
        let violation = previous
            .roots
            .iter()
            .find(|r| !poly.rational.eval(r).is_zero())
            .cloned();
        checks.push(CheckOutcome {
            name: "inclusion".into(),
            passed: violation.is_none(),
            detail: violation.map(|r| format!("{} ∈ R_{} missing from R_{}", r, m - 1, m)),
        });
        Some(checks.last().is_some_and(|c| c.passed))
    } else {
        None
    };

    Ok(VerificationReport {
        m,
        predicted: predicted.roots.iter().map(format_rational).collect(),
        oracle,
        factorization_ok,
        system_ok,
        monotonicity_ok,
        checks,
        timings_ms: timings,
    })
}
