//! Spinor fields of the ansatz
//! `ψ(x) = ⟨x⟩^{−(3+2m)}[(Σ aₙ|x|^{2n})𝟏 + (Σ bₙ|x|^{2n})𝐗]φ₀`, `𝐗 = iσ·x`,
//! their coupling `h = 3b₀/⟨x⟩²`, the induced vector potential, and
//! finite-difference residuals of the Loss–Yau and Weyl–Dirac equations.
//!
//! Coefficients stay exact until a field is built; evaluation is in double
//! precision.

mod quadrature;
mod radial;
mod spinor;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

pub use quadrature::{gauss_legendre, integrate_adaptive};
pub use spinor::{spin_density, Spinor, Vec3};

use crate::algebra::{to_f64, Rational};
use crate::error::{Error, Result};
use crate::recurrence::{instantiate_solution, verify_system, AnsatzSolution};
use radial::RadialSum;

/// Below this `|ψ|²` the vector potential is not evaluated.
pub const VANISHING_THRESHOLD: f64 = 1e-30;

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// Family member `ψ_{j,±}`: `b₀ = ±(2j+1)/3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyLabel {
    pub j: usize,
    pub sign: RootSign,
}

impl FamilyLabel {
    pub fn b0(&self) -> Rational {
        let magnitude = Rational::new((2 * self.j + 1).into(), 3.into());
        match self.sign {
            RootSign::Plus => magnitude,
            RootSign::Minus => -magnitude,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroModeField {
    solution: AnsatzSolution,
    label: Option<FamilyLabel>,
    phi0: Spinor,
    even: RadialSum,
    odd: RadialSum,
    b0: f64,
}

impl ZeroModeField {
    /// Builds a field from coefficients that satisfy (L_m) exactly.
    pub fn new(solution: AnsatzSolution) -> Result<Self> {
        if let Some(equation) = verify_system(&solution).iter().position(|r| !r.is_zero()) {
            return Err(Error::InvalidField {
                m: solution.m,
                equation: equation + 1,
            });
        }
        Ok(Self::unchecked(solution))
    }

    /// Builds a field without checking (L_m); for negative controls.
    pub fn unchecked(solution: AnsatzSolution) -> Self {
        let even = RadialSum::new(&solution.a);
        let odd = RadialSum::new(&solution.b);
        let b0 = to_f64(&solution.b0);
        Self {
            solution,
            label: None,
            phi0: Spinor::UP,
            even,
            odd,
            b0,
        }
    }

    /// The order-zero mode with `h = 3/⟨x⟩²` and `φ₀ = ᵗ(1, 0)`.
    pub fn loss_yau() -> Self {
        Self::loss_yau_with_phi0(Spinor::UP)
    }

    /// The order-zero mode with an arbitrary unit spinor `φ₀`.
    pub fn loss_yau_with_phi0(phi0: Spinor) -> Self {
        let mut field = Self::unchecked(AnsatzSolution::loss_yau());
        field.label = Some(FamilyLabel {
            j: 1,
            sign: RootSign::Plus,
        });
        field.phi0 = phi0.scale(Complex64::new(1.0 / phi0.norm(), 0.0));
        field
    }

    /// `ψ_{j,±}` of order `m`.
    pub fn member(m: usize, label: FamilyLabel) -> Result<Self> {
        let mut field = Self::new(instantiate_solution(m, &label.b0()))?;
        field.label = Some(label);
        Ok(field)
    }

    /// `ψ^{(m)} = ψ_{m+1,+}`; order zero gives the Loss–Yau mode.
    pub fn designated(m: usize) -> Result<Self> {
        if m == 0 {
            return Ok(Self::loss_yau());
        }
        Self::member(
            m,
            FamilyLabel {
                j: m + 1,
                sign: RootSign::Plus,
            },
        )
    }

    pub fn order(&self) -> usize {
        self.solution.m
    }

    pub fn label(&self) -> Option<FamilyLabel> {
        self.label
    }

    pub fn solution(&self) -> &AnsatzSolution {
        &self.solution
    }

    pub fn phi0(&self) -> Spinor {
        self.phi0
    }

    /// `α = 3b₀`.
    pub fn alpha(&self) -> f64 {
        3.0 * self.b0
    }

    /// `(Σ aₙsⁿ, Σ bₙsⁿ)·(1+s)^{−m}`.
    fn radial_sums(&self, s: f64) -> (f64, f64) {
        (self.even.eval(s), self.odd.eval(s))
    }

    /// `ψ(x)`.
    pub fn evaluate(&self, x: Vec3) -> Spinor {
        let s = x.norm_sq();
        let (even, odd) = self.radial_sums(s);
        let prefactor = (1.0 + s).powf(-1.5);
        // 𝐗φ₀ = i(σ·x)φ₀
        let x_phi = self.phi0.sigma_dot(x).scale(Complex64::i());
        prefactor * (even * self.phi0 + odd * x_phi)
    }

    /// `|ψ|²` at radius² `s`; independent of direction.
    pub fn density_at_radius_sq(&self, s: f64) -> f64 {
        let (even, odd) = self.radial_sums(s);
        let w = 1.0 / (1.0 + s);
        w * w * w * (even * even + s * odd * odd) * self.phi0.norm_sq()
    }

    /// `h(x) = 3b₀/⟨x⟩²`.
    pub fn coupling(&self, x: Vec3) -> f64 {
        self.alpha() / (1.0 + x.norm_sq())
    }

    /// `A(x) = h(x)·(ψ·σψ)/|ψ|²`.
    pub fn vector_potential(&self, x: Vec3) -> Result<Vec3> {
        potential_from(&self.evaluate(x), self.coupling(x))
    }

    /// `(σ·D)ψ = −iΣσ_k∂_kψ` with fourth-order central differences.
    pub fn sigma_dot_d(&self, x: Vec3, step: f64) -> Spinor {
        let mut acc = Spinor::ZERO;
        for k in 0..3 {
            let e = step * Vec3::axis(k);
            let derivative = (1.0 / (12.0 * step))
                * (self.evaluate(x - 2.0 * e) - 8.0 * self.evaluate(x - e)
                    + 8.0 * self.evaluate(x + e)
                    - self.evaluate(x + 2.0 * e));
            acc = acc + derivative.pauli(k);
        }
        acc.scale(-Complex64::i())
    }
}

fn potential_from(psi: &Spinor, h: f64) -> Result<Vec3> {
    let density = psi.norm_sq();
    if density.is_nan() || density < VANISHING_THRESHOLD {
        return Err(Error::SpinorVanishes);
    }
    Ok((h / density) * spin_density(psi))
}

pub fn evaluate_zero_mode(f: &ZeroModeField, x: Vec3) -> Spinor {
    f.evaluate(x)
}

pub fn evaluate_h(f: &ZeroModeField, x: Vec3) -> f64 {
    f.coupling(x)
}

pub fn evaluate_vector_potential(f: &ZeroModeField, x: Vec3) -> Result<Vec3> {
    f.vector_potential(x)
}

/// `‖(σ·D)ψ − hψ‖` at `x`.
pub fn loss_yau_residual(f: &ZeroModeField, x: Vec3, step: f64) -> f64 {
    let lhs = f.sigma_dot_d(x, step);
    let rhs = f.coupling(x) * f.evaluate(x);
    (lhs - rhs).norm()
}

/// `‖σ·(D − A)ψ‖` at `x`.
pub fn weyl_dirac_residual(f: &ZeroModeField, x: Vec3, step: f64) -> Result<f64> {
    weyl_dirac_residual_with(f, x, step, |x| f.coupling(x))
}

/// As [`weyl_dirac_residual`], but with `A` built from the coupling
/// `coupling(x)` instead of the field's own `h`.
pub fn weyl_dirac_residual_with(
    f: &ZeroModeField,
    x: Vec3,
    step: f64,
    coupling: impl Fn(Vec3) -> f64,
) -> Result<f64> {
    let psi = f.evaluate(x);
    let potential = potential_from(&psi, coupling(x))?;
    let residual = f.sigma_dot_d(x, step) - psi.sigma_dot(potential);
    Ok(residual.norm())
}

/// Least-squares slope of `log(residual)` against `log(step)`.
pub fn observed_order(steps: &[f64], residuals: &[f64]) -> f64 {
    let n = steps.len() as f64;
    let xs: Vec<f64> = steps.iter().map(|s| s.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// `∫|ψ|²dx` split at `r_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct L2Estimate {
    pub value: f64,
    pub error: f64,
    /// Contribution of the ball `|x| ≤ r_max`.
    pub interior: f64,
    /// Contribution of `|x| > r_max`.
    pub tail: f64,
}

const ANGULAR_POLAR: usize = 6;
const ANGULAR_AZIMUTH: usize = 12;
const MAX_SEGMENTS: usize = 4000;

/// Squared L² norm by product quadrature: Gauss–Legendre in `cos θ`, uniform
/// in `φ`, adaptive Gauss–Kronrod in `r` on `[0, r_max]`. The exterior is
/// integrated after the inversion `u = 1/r`, where `r⁴|ψ|²` stays bounded
/// because `|ψ|² = O(|x|⁻⁴)`.
pub fn l2_norm_squared(f: &ZeroModeField, r_max: f64, tolerance: f64) -> Result<L2Estimate> {
    assert!(r_max > 0.0, "r_max must be positive");
    let (cos_nodes, cos_weights) = gauss_legendre(ANGULAR_POLAR);
    let directions: Vec<(Vec3, f64)> = cos_nodes
        .iter()
        .zip(&cos_weights)
        .flat_map(|(&ct, &wt)| {
            let st = (1.0 - ct * ct).sqrt();
            (0..ANGULAR_AZIMUTH).map(move |k| {
                let phi = 2.0 * PI * k as f64 / ANGULAR_AZIMUTH as f64;
                let weight = wt * 2.0 * PI / ANGULAR_AZIMUTH as f64;
                (Vec3::new(st * phi.cos(), st * phi.sin(), ct), weight)
            })
        })
        .collect();
    let shell = |r: f64| -> f64 {
        directions
            .iter()
            .map(|&(dir, w)| w * f.evaluate(r * dir).norm_sq())
            .sum::<f64>()
            * r
            * r
    };
    let half_tol = 0.5 * tolerance;
    let not_converged =
        |(estimate, error): (f64, f64)| Error::QuadratureNotConverged { estimate, error };
    let (interior, e1) =
        integrate_adaptive(shell, 0.0, r_max, half_tol, MAX_SEGMENTS).map_err(not_converged)?;
    let tail_integrand = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let r = 1.0 / u;
        4.0 * PI * f.density_at_radius_sq(r * r) * r.powi(4)
    };
    let (tail, e2) = integrate_adaptive(tail_integrand, 0.0, 1.0 / r_max, half_tol, MAX_SEGMENTS)
        .map_err(not_converged)?;
    Ok(L2Estimate {
        value: interior + tail,
        error: e1 + e2,
        interior,
        tail,
    })
}

/// `ψ_{j,±}` for `j = 1…m+1`, both signs, each verified against (L_m).
pub fn enumerate_family(m: usize) -> Result<Vec<ZeroModeField>> {
    if m < 1 {
        return Err(Error::PolynomialOrder);
    }
    let mut fields = Vec::with_capacity(2 * (m + 1));
    for j in 1..=m + 1 {
        for sign in [RootSign::Plus, RootSign::Minus] {
            let label = FamilyLabel { j, sign };
            let mut field = ZeroModeField::new(instantiate_solution(m, &label.b0()))?;
            field.label = Some(label);
            fields.push(field);
        }
    }
    Ok(fields)
}

/// One row of a field sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FieldSample {
    pub x: Vec3,
    pub psi: Spinor,
    pub density: f64,
    pub potential: Vec3,
    pub h: f64,
    /// `‖σ·(D − A)ψ‖`.
    pub residual: f64,
}

impl FieldSample {
    pub const HEADER: [&'static str; 13] = [
        "x1",
        "x2",
        "x3",
        "re_psi1",
        "im_psi1",
        "re_psi2",
        "im_psi2",
        "abs_psi_sq",
        "A1",
        "A2",
        "A3",
        "h",
        "residual",
    ];

    /// Columns in [`Self::HEADER`] order, shortest round-trip decimal form.
    pub fn to_record(&self) -> [String; 13] {
        [
            self.x.x,
            self.x.y,
            self.x.z,
            self.psi.up.re,
            self.psi.up.im,
            self.psi.down.re,
            self.psi.down.im,
            self.density,
            self.potential.x,
            self.potential.y,
            self.potential.z,
            self.h,
            self.residual,
        ]
        .map(format_float)
    }
}

/// Shortest decimal that parses back to `v`; exponent form outside
/// `[1e-5, 1e16)`.
pub fn format_float(v: f64) -> String {
    let magnitude = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&magnitude) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

pub fn sample_point(f: &ZeroModeField, x: Vec3, step: f64) -> Result<FieldSample> {
    let psi = f.evaluate(x);
    let h = f.coupling(x);
    let potential = potential_from(&psi, h)?;
    let residual = weyl_dirac_residual(f, x, step)?;
    Ok(FieldSample {
        x,
        psi,
        density: psi.norm_sq(),
        potential,
        h,
        residual,
    })
}

/// Uniform `n³` grid over `[−extent, extent]³`.
pub fn cubic_grid(n: usize, extent: f64) -> Vec<Vec3> {
    let coord = |i: usize| {
        if n == 1 {
            0.0
        } else {
            -extent + 2.0 * extent * i as f64 / (n - 1) as f64
        }
    };
    let mut points = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                points.push(Vec3::new(coord(i), coord(j), coord(k)));
            }
        }
    }
    points
}
