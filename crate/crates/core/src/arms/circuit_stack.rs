//! Stacks of defected circuits in the dyadic annuli A(2^{mN}, 2^{(m+1)N}).

use serde::{Deserialize, Serialize};

use super::inner_event::detect_ek_prime_inner;
use crate::connectivity::{has_circuit_with_at_most, CircuitKind};
use crate::error::{Error, Result};
use crate::lattice::Config;

/// Offsets within a block of ten annuli that must carry closed circuits.
pub const CLOSED_OFFSETS: [usize; 6] = [1, 3, 4, 6, 8, 9];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitEventRecord {
    pub k: u32,
    /// Scale granularity: annulus m spans 2^{mN} to 2^{(m+1)N}.
    pub granularity: u32,
    /// Closed dual circuit with at most two defects, per annulus.
    pub occurred_c: Vec<bool>,
    /// Open circuit with at most one defect, per annulus.
    pub occurred_d: Vec<bool>,
    /// Per block j: closed circuits at offsets 1, 3, 4, 6, 8, 9 and an open one at 0.
    pub occurred_hat_c: Vec<bool>,
    /// Per block j: the block event and the inner event at scale (10j + 5)N.
    pub occurred_b: Vec<bool>,
    pub i_count: usize,
    pub j_count: usize,
}

/// Circuit events in every annulus with (m + 1)N ≤ k. The box must contain B(2ᵏ).
pub fn detect_circuit_stack(config: &Config, k: u32, granularity: u32) -> Result<CircuitEventRecord> {
    if granularity == 0 {
        return Err(Error::InvalidExperiment("granularity must be positive".into()));
    }
    if k >= 31 || config.geometry().half_side() < 1u32 << k {
        return Err(Error::OutsideBox { n: config.geometry().half_side() });
    }
    let annuli = (k / granularity) as usize;
    let mut occurred_c = Vec::with_capacity(annuli);
    let mut occurred_d = Vec::with_capacity(annuli);
    for m in 0..annuli as u32 {
        let inner = 1u32 << (m * granularity);
        let outer = 1u32 << ((m + 1) * granularity);
        occurred_c.push(has_circuit_with_at_most(config, inner, outer, CircuitKind::ClosedDual, 2)?);
        occurred_d.push(has_circuit_with_at_most(config, inner, outer, CircuitKind::OpenPrimal, 1)?);
    }
    let blocks = annuli / 10;
    let occurred_hat_c: Vec<bool> = (0..blocks)
        .map(|j| occurred_d[10 * j] && CLOSED_OFFSETS.iter().all(|&i| occurred_c[10 * j + i]))
        .collect();
    let mut occurred_b = Vec::with_capacity(blocks);
    for (j, &hat) in occurred_hat_c.iter().enumerate() {
        let scale = (10 * j as u32 + 5) * granularity;
        occurred_b.push(hat && detect_ek_prime_inner(config, scale)?.is_some());
    }
    Ok(CircuitEventRecord {
        k,
        granularity,
        i_count: occurred_b.iter().filter(|&&b| b).count(),
        j_count: occurred_hat_c.iter().filter(|&&b| b).count(),
        occurred_c,
        occurred_d,
        occurred_hat_c,
        occurred_b,
    })
}
