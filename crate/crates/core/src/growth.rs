//! Cost and size of `P_m` as the order grows.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::recurrence::build_amn_polynomial;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub m: usize,
    /// Wall time to build the chain and both forms of `P_m`.
    pub wall_ms: f64,
    /// Largest bit length among the primitive integer coefficients.
    pub peak_bits: u64,
    /// Largest numerator or denominator bit length in the rational form.
    pub rational_peak_bits: u64,
}

pub fn growth_row(m: usize) -> Result<GrowthRow> {
    let start = Instant::now();
    let poly = build_amn_polynomial(m)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(GrowthRow {
        m,
        wall_ms,
        peak_bits: poly.integer.max_bits(),
        rational_peak_bits: poly.rational.max_bits(),
    })
}

/// One row per `m = 1…m_max`, ascending.
pub fn coefficient_growth(m_max: usize) -> Result<Vec<GrowthRow>> {
    (1..=m_max).map(growth_row).collect()
}
