//! Coefficient polynomials of the zero-mode ansatz and the AMN polynomial.
//!
//! The ansatz coefficients of order `m` are kept in parity form: with
//! `t = b₀²`, every `a_j` is `p_j(t)` and every `b_j` is `b₀·q_j(t)`. The
//! closing equation `a_m = b₀·b_m` then reads `P_m(t) = t·q_m(t) − p_m(t) = 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, primitive_integer_form, rat, IntPoly, RatPoly, Rational};
use crate::error::{Error, Result};

/// `(p_j, q_j)` with `a_j = p_j(b₀²)` and `b_j = b₀·q_j(b₀²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffPair {
    pub j: usize,
    pub p: RatPoly,
    pub q: RatPoly,
}

impl CoeffPair {
    /// `(1, 1)`, encoding `a₀ = 1` and `b₀ = b₀·1`.
    pub fn origin() -> Self {
        Self {
            j: 0,
            p: RatPoly::one(),
            q: RatPoly::one(),
        }
    }
}

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The first pair of order `m`:
/// `p₁ = ((2m+3) − 3t)/2`, `q₁ = ((10m+9) − 9t)/10`.
pub fn seed_pair(m: usize) -> Result<CoeffPair> {
    if m < 1 {
        return Err(Error::SeedOrder);
    }
    Ok(CoeffPair {
        j: 1,
        p: RatPoly::linear(int(2 * m + 3) / int(2), rat(-3, 2)),
        q: RatPoly::linear(int(10 * m + 9) / int(10), rat(-9, 10)),
    })
}

/// One step of forward substitution in (L_m): solve equation `(2j−1)` for
/// `a_j`, then equation `(2j)` for `b_j`.
pub fn advance_pair(m: usize, j: usize, prev: &CoeffPair) -> Result<CoeffPair> {
    if j < 2 || j > m {
        return Err(Error::StepOutOfRange { m, j });
    }
    if prev.j + 1 != j {
        return Err(Error::PairIndex {
            expected: j - 1,
            found: prev.j,
        });
    }
    // 2j·a_j = (2m+5−2j)·a_{j−1} − 3b₀·b_{j−1}
    let p = (&prev.p.scale(&int(2 * m + 5 - 2 * j)) - &prev.q.mul_t().scale(&int(3)))
        .scale(&int(2 * j).recip());
    // (2j+3)·b_j = (2m+2−2j)·b_{j−1} + 3b₀·a_j
    let q =
        (&prev.q.scale(&int(2 * m + 2 - 2 * j)) + &p.scale(&int(3))).scale(&int(2 * j + 3).recip());
    Ok(CoeffPair { j, p, q })
}

/// Pairs `0..=m` of order `m`.
pub fn coefficient_polynomials(m: usize) -> Result<Vec<CoeffPair>> {
    let mut chain = Vec::with_capacity(m + 1);
    chain.push(CoeffPair::origin());
    chain.push(seed_pair(m)?);
    for j in 2..=m {
        let next = advance_pair(m, j, &chain[j - 1])?;
        chain.push(next);
    }
    Ok(chain)
}

/// The step matrix `K_j` acting on `(p, q)` columns.
///
/// Rewritten from the `(a, b)` form by substituting `b₀² → t` and dividing
/// the second row by `b₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceMatrix {
    pub m: usize,
    pub index: usize,
    pub entries: [[RatPoly; 2]; 2],
}

impl RecurrenceMatrix {
    pub fn new(m: usize, index: usize) -> Result<Self> {
        if index < 2 || index > m {
            return Err(Error::StepOutOfRange { m, j: index });
        }
        let two_p = int(2 * index);
        let lower = int(2 * index) * int(2 * index + 3);
        let k = int(2 * m + 5 - 2 * index);
        let entries = [
            [
                RatPoly::constant(&k / &two_p),
                RatPoly::linear(Rational::zero(), rat(-3, 1) / &two_p),
            ],
            [
                RatPoly::constant(int(3) * &k / &lower),
                RatPoly::linear(
                    int(2 * index) * int(2 * m + 2 - 2 * index) / &lower,
                    rat(-9, 1) / &lower,
                ),
            ],
        ];
        Ok(Self { m, index, entries })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            m,
            index: 1,
            entries: [
                [RatPoly::one(), RatPoly::zero()],
                [RatPoly::zero(), RatPoly::one()],
            ],
        }
    }

    /// `self · rhs`; the result carries `self`'s index.
    pub fn compose(&self, rhs: &Self) -> Self {
        let e = &self.entries;
        let r = &rhs.entries;
        let cell = |i: usize, k: usize| &(&e[i][0] * &r[0][k]) + &(&e[i][1] * &r[1][k]);
        Self {
            m: self.m,
            index: self.index,
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    pub fn apply(&self, pair: &CoeffPair, j: usize) -> CoeffPair {
        let e = &self.entries;
        CoeffPair {
            j,
            p: &(&e[0][0] * &pair.p) + &(&e[0][1] * &pair.q),
            q: &(&e[1][0] * &pair.p) + &(&e[1][1] * &pair.q),
        }
    }
}

/// Same chain as [`coefficient_polynomials`], computed as
/// `K_j K_{j−1} ⋯ K_2` applied to the seed with the product formed first.
pub fn coefficient_polynomials_by_matrix(m: usize) -> Result<Vec<CoeffPair>> {
    let seed = seed_pair(m)?;
    let mut chain = vec![CoeffPair::origin(), seed.clone()];
    let mut product = RecurrenceMatrix::identity(m);
    for j in 2..=m {
        product = RecurrenceMatrix::new(m, j)?.compose(&product);
        chain.push(product.apply(&seed, j));
    }
    Ok(chain)
}

/// `P_m` in rational form (`t·q_m − p_m`) and its primitive integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmnPolynomial {
    pub m: usize,
    pub rational: RatPoly,
    pub integer: IntPoly,
    /// `integer = scale · rational`.
    pub scale: Rational,
}

impl AmnPolynomial {
    pub fn monic(&self) -> RatPoly {
        self.rational
            .monic()
            .expect("P_m is never the zero polynomial")
    }
}

pub fn amn_from_chain(m: usize, chain: &[CoeffPair]) -> Result<AmnPolynomial> {
    let last = chain.get(m).ok_or(Error::PolynomialOrder)?;
    let rational = &last.q.mul_t() - &last.p;
    let (integer, scale) = primitive_integer_form(&rational)?;
    Ok(AmnPolynomial {
        m,
        rational,
        integer,
        scale,
    })
}

pub fn build_amn_polynomial(m: usize) -> Result<AmnPolynomial> {
    if m < 1 {
        return Err(Error::PolynomialOrder);
    }
    amn_from_chain(m, &coefficient_polynomials(m)?)
}

/// `c_m = p_m(0)` and `d_m = [t^m] q_m`, from their product formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremes {
    pub c_m: Rational,
    pub d_m: Rational,
}

pub fn closed_form_extremes(m: usize) -> Result<Extremes> {
    if m < 1 {
        return Err(Error::PolynomialOrder);
    }
    // 5·7·9⋯(2m+3)
    let odd_product: BigInt = (2..=m + 1).map(|k| BigInt::from(2 * k + 1)).product();
    // 2^m · m!
    let double_factorial: BigInt = (1..=m).map(|k| BigInt::from(2 * k)).product();
    let c_m = Rational::new(odd_product.clone(), double_factorial.clone());
    let nine_pow = num_traits::pow(BigInt::from(9), m);
    let signed = if m % 2 == 0 { nine_pow } else { -nine_pow };
    let d_m = Rational::new(signed, odd_product * double_factorial);
    Ok(Extremes { c_m, d_m })
}

/// Coefficients `a₀…a_m`, `b₀…b_m` of one ansatz instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzSolution {
    pub m: usize,
    pub b0: Rational,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl AnsatzSolution {
    /// The order-zero mode `⟨x⟩⁻³(𝟏 + 𝐗)φ₀` with coupling `3/⟨x⟩²`.
    pub fn loss_yau() -> Self {
        Self {
            m: 0,
            b0: Rational::one(),
            a: vec![Rational::one()],
            b: vec![Rational::one()],
        }
    }

    pub fn is_exact(&self) -> bool {
        verify_system(self).iter().all(Zero::is_zero)
    }

    pub fn to_record(&self) -> SolutionRecord {
        SolutionRecord {
            m: self.m,
            b0: format_rational(&self.b0),
            a: self.a.iter().map(format_rational).collect(),
            b: self.b.iter().map(format_rational).collect(),
        }
    }
}

/// JSON shape of an [`AnsatzSolution`]; rationals as `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub m: usize,
    pub b0: String,
    pub a: Vec<String>,
    pub b: Vec<String>,
}

/// Evaluates a precomputed chain at `b0`.
pub fn instantiate_from_chain(chain: &[CoeffPair], b0: &Rational) -> AnsatzSolution {
    let t = b0 * b0;
    let m = chain.len() - 1;
    let a = chain.iter().map(|pair| pair.p.eval(&t)).collect();
    let b = chain.iter().map(|pair| b0 * pair.q.eval(&t)).collect();
    AnsatzSolution {
        m,
        b0: b0.clone(),
        a,
        b,
    }
}

/// Solves equations `(1)…(2m)` of (L_m) by forward substitution at a fixed
/// `b0`. The closing equation holds iff `P_m(b0²) = 0`.
///
/// Order zero has the single pair `(1, 1)`; its closing equation is `1 = b₀²`.
pub fn instantiate_solution(m: usize, b0: &Rational) -> AnsatzSolution {
    if m == 0 {
        return instantiate_from_chain(&[CoeffPair::origin()], b0);
    }
    let three_b0 = int(3) * b0;
    let mut a = vec![Rational::one()];
    let mut b = vec![b0.clone()];
    for j in 1..=m {
        let aj = (int(2 * m + 5 - 2 * j) * &a[j - 1] - &three_b0 * &b[j - 1]) / int(2 * j);
        let bj = (int(2 * m + 2 - 2 * j) * &b[j - 1] + &three_b0 * &aj) / int(2 * j + 3);
        a.push(aj);
        b.push(bj);
    }
    AnsatzSolution {
        m,
        b0: b0.clone(),
        a,
        b,
    }
}

/// Residuals of the `2m+1` equations of (L_m), in label order
/// `(1), (2), …, (2m+1)`.
///
/// Odd labels `2j−1` hold `2j·a_j − (2m+5−2j)·a_{j−1} + 3b₀·b_{j−1}`, even labels
/// `2k` hold `(2k+3)·b_k − (2m+2−2k)·b_{k−1} − 3b₀·a_k`, and the last one is
/// `a_m − b₀·b_m`, i.e. `−P_m(b₀²)` for instantiated solutions.
pub fn verify_system(s: &AnsatzSolution) -> Vec<Rational> {
    let m = s.m;
    let b0 = &s.b0;
    let three_b0 = int(3) * b0;
    let mut residuals = Vec::with_capacity(2 * m + 1);
    for j in 1..=m {
        let odd =
            int(2 * j) * &s.a[j] - int(2 * m + 5 - 2 * j) * &s.a[j - 1] + &three_b0 * &s.b[j - 1];
        residuals.push(odd);
        let even =
            int(2 * j + 3) * &s.b[j] - int(2 * m + 2 - 2 * j) * &s.b[j - 1] - &three_b0 * &s.a[j];
        residuals.push(even);
    }
    residuals.push(&s.a[m] - b0 * &s.b[m]);
    residuals
}

/// Rewrites an order-`m` solution as order `m+1` by multiplying both radial
/// polynomials by `1 + |x|²`.
pub fn lift_solution(s: &AnsatzSolution) -> Result<AnsatzSolution> {
    if s.a.len() != s.m + 1 || s.b.len() != s.m + 1 || !s.is_exact() {
        return Err(Error::NotASolution);
    }
    let widen = |c: &[Rational]| -> Vec<Rational> {
        (0..=s.m + 1)
            .map(|n| match n {
                0 => c[0].clone(),
                n if n == s.m + 1 => c[s.m].clone(),
                n => &c[n - 1] + &c[n],
            })
            .collect()
    };
    Ok(AnsatzSolution {
        m: s.m + 1,
        b0: s.b0.clone(),
        a: widen(&s.a),
        b: widen(&s.b),
    })
}

/// JSON export of `P_m` and its extremes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub m: usize,
    pub rational_coefficients: Vec<String>,
    pub integer_coefficients: IntPoly,
    pub c_m: String,
    pub d_m: String,
}

impl PolynomialRecord {
    pub fn new(poly: &AmnPolynomial, extremes: &Extremes) -> Self {
        let rational_coefficients = poly
            .rational
            .coeffs()
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect();
        Self {
            m: poly.m,
            rational_coefficients,
            integer_coefficients: poly.integer.clone(),
            c_m: format_rational(&extremes.c_m),
            d_m: format_rational(&extremes.d_m),
        }
    }
}
