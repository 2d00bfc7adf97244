//! Exact values on tiny boxes by summing over every configuration.

use serde::{Deserialize, Serialize};

use crate::arms::{ArmDetector, ArmSpec};
use crate::crossings::{lowest_crossing, shortest_crossing};
use crate::error::{Error, Result};
use crate::lattice::{BoxGeometry, Config};

/// Largest edge count enumerated exhaustively.
pub const MAX_EXHAUSTIVE_EDGES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactCrossing {
    pub p_crossing: f64,
    /// E[S | H]
    pub shortest: f64,
    /// E[L | H]
    pub lowest: f64,
}

fn enumerate(n: u32, p: f64, mut visit: impl FnMut(&Config, f64) -> Result<()>) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidDensity(p));
    }
    let g = BoxGeometry::new(n)?;
    let edges = g.edge_count();
    if edges > MAX_EXHAUSTIVE_EDGES {
        return Err(Error::InvalidExperiment(format!("B({n}) has {edges} edges, too many to enumerate")));
    }
    for mask in 0..1u64 << edges {
        let open = mask.count_ones() as i32;
        let w = p.powi(open) * (1.0 - p).powi(edges as i32 - open);
        visit(&Config::from_bits(g, mask)?, w)?;
    }
    Ok(())
}

/// P(H_n), E[S_n | H_n] and E[L_n | H_n] exactly.
pub fn exact_crossing(n: u32, p: f64) -> Result<ExactCrossing> {
    let (mut ph, mut s, mut l) = (0.0, 0.0, 0.0);
    enumerate(n, p, |c, w| {
        if let Ok(low) = lowest_crossing(c) {
            ph += w;
            l += w * low.len() as f64;
            s += w * shortest_crossing(c)?.len() as f64;
        }
        Ok(())
    })?;
    if ph == 0.0 {
        return Err(Error::Degenerate("no configuration has a crossing".into()));
    }
    Ok(ExactCrossing { p_crossing: ph, shortest: s / ph, lowest: l / ph })
}

/// π₃(n) exactly.
pub fn exact_pi3(n: u32, p: f64) -> Result<f64> {
    let mut detector = ArmDetector::new(BoxGeometry::new(n)?, &ArmSpec::three_arm(n))?;
    let mut total = 0.0;
    enumerate(n, p, |c, w| {
        if detector.check(c)? {
            total += w;
        }
        Ok(())
    })?;
    Ok(total)
}
