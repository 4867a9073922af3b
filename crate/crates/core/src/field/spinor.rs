use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

/// A point or vector in ℝ³.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Unit vector along axis `k` (0, 1, 2).
    pub fn axis(k: usize) -> Self {
        let mut v = [0.0; 3];
        v[k] = 1.0;
        Self::new(v[0], v[1], v[2])
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        match k {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {k} out of range"),
        }
    }
}

impl Add for Vec3 {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;

    fn mul(self, v: Vec3) -> Vec3 {
        Vec3::new(self * v.x, self * v.y, self * v.z)
    }
}

/// Two-component complex spinor `ᵗ(up, down)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Spinor {
    pub up: Complex64,
    pub down: Complex64,
}

impl Spinor {
    pub const ZERO: Self = Self::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));

    /// `φ₀ = ᵗ(1, 0)`.
    pub const UP: Self = Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));

    pub const fn new(up: Complex64, down: Complex64) -> Self {
        Self { up, down }
    }

    /// `a·b = ā₁b₁ + ā₂b₂`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn norm_sq(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.up * c, self.down * c)
    }

    /// `σ_k·self` for `k = 0, 1, 2`.
    pub fn pauli(&self, k: usize) -> Self {
        let i = Complex64::i();
        match k {
            0 => Self::new(self.down, self.up),
            1 => Self::new(-i * self.down, i * self.up),
            2 => Self::new(self.up, -self.down),
            _ => panic!("Pauli index {k} out of range"),
        }
    }

    /// `(σ·v)·self`.
    pub fn sigma_dot(&self, v: Vec3) -> Self {
        let plus = Complex64::new(v.x, v.y);
        let minus = Complex64::new(v.x, -v.y);
        Self::new(
            v.z * self.up + minus * self.down,
            plus * self.up - v.z * self.down,
        )
    }
}

impl Add for Spinor {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::new(self.up + o.up, self.down + o.down)
    }
}

impl Sub for Spinor {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self::new(self.up - o.up, self.down - o.down)
    }
}

impl Neg for Spinor {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.up, -self.down)
    }
}

impl Mul<Spinor> for f64 {
    type Output = Spinor;

    fn mul(self, s: Spinor) -> Spinor {
        Spinor::new(self * s.up, self * s.down)
    }
}

/// `(s·σ₁s, s·σ₂s, s·σ₃s)`; its length equals `|s|²`.
pub fn spin_density(s: &Spinor) -> Vec3 {
    let cross = s.up.conj() * s.down;
    Vec3::new(
        2.0 * cross.re,
        2.0 * cross.im,
        s.up.norm_sqr() - s.down.norm_sqr(),
    )
}
