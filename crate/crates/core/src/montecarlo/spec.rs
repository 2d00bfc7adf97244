//! What a campaign runs.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// E[S|H] and E[L|H] with their ratio.
    Ratio,
    /// π₃(n) and the doubling ratios π₃(2n)/π₃(n).
    Pi3Scaling,
    /// E[L|H] normalized by n²·π₃(n).
    LowestVolume,
    /// P(H), and how often the centre edge lies on the lowest crossing relative to π₃(n).
    Conditional3Arm,
    /// Frequencies of defected circuits in dyadic annuli.
    CircuitStack,
    /// Shortcuts of the lowest crossing, checked end to end.
    ShortcutAudit,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::Ratio,
        ExperimentKind::Pi3Scaling,
        ExperimentKind::LowestVolume,
        ExperimentKind::Conditional3Arm,
        ExperimentKind::CircuitStack,
        ExperimentKind::ShortcutAudit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Ratio => "ratio",
            ExperimentKind::Pi3Scaling => "pi3-scaling",
            ExperimentKind::LowestVolume => "lowest-volume",
            ExperimentKind::Conditional3Arm => "conditional-3arm",
            ExperimentKind::CircuitStack => "circuit-stack",
            ExperimentKind::ShortcutAudit => "shortcut-audit",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidExperiment(format!("unknown experiment kind {s:?}")))
    }
}

/// A campaign: one kind of experiment over a list of box half-sides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub ns: Vec<u32>,
    /// Accepted samples per n.
    pub samples: usize,
    pub seed: u64,
    pub p: f64,
    /// Gain bound for shortcuts.
    pub kappa: f64,
    /// Free parameter of the shortcut construction; carried as metadata only.
    pub epsilon: f64,
    /// Attempts allowed per n before conditioning is declared hopeless. None means
    /// 100 per wanted sample, at least 1000.
    pub budget: Option<usize>,
    pub out: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind, ns: Vec<u32>, samples: usize, seed: u64) -> Self {
        ExperimentSpec { kind, ns, samples, seed, p: 0.5, kappa: 0.5, epsilon: 0.125, budget: None, out: None }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidExperiment(m));
        if self.ns.is_empty() {
            return bad("the n list is empty".into());
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n == 0) {
            return bad(format!("n must be at least 1 (got {n})"));
        }
        if self.ns.windows(2).any(|w| w[0] >= w[1]) {
            return bad("the n list must be strictly increasing".into());
        }
        if self.samples == 0 {
            return bad("samples must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidDensity(self.p));
        }
        if !(self.kappa > 0.0) {
            return bad(format!("kappa must be positive (got {})", self.kappa));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon must lie in (0, 1) (got {})", self.epsilon));
        }
        Ok(())
    }

    /// Whether the sample count is large enough for the normal intervals to mean much.
    pub fn ci_valid(&self) -> bool {
        self.samples >= 30
    }

    pub fn budget(&self) -> usize {
        self.budget.unwrap_or_else(|| self.samples.saturating_mul(100).max(1000))
    }
}
