//! Shared fixtures for the criterion benchmarks in `benches/`.

use amn_core::field::Vec3;

/// Orders used for the polynomial construction benchmarks.
pub const POLY_ORDERS: &[usize] = &[10, 26, 50, 100];

/// Deterministic sample points in the ball of radius 3.
pub fn sample_points(count: usize) -> Vec<Vec3> {
    // golden-angle spiral, radius growing with index
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let u = (i as f64 + 0.5) / count as f64;
            let z = 1.0 - 2.0 * u;
            let rho = (1.0 - z * z).sqrt();
            let theta = golden * i as f64;
            let r = 3.0 * u.cbrt();
            Vec3::new(r * rho * theta.cos(), r * rho * theta.sin(), r * z)
        })
        .collect()
}
