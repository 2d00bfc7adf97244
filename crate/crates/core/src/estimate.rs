//! Named Monte Carlo estimates with standard errors and normal 95% intervals.

use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.96;

/// A sample mean with its standard error and 95% interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub name: String,
    pub n: u32,
    /// Accepted samples the mean is taken over.
    pub samples: usize,
    /// Configurations drawn, including those rejected by conditioning.
    pub attempts: usize,
    pub mean: f64,
    pub se: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl EstimateRecord {
    /// Mean and standard error (sample standard deviation over √samples). With fewer
    /// than two values the standard error is undefined and reported as NaN.
    pub fn from_values(name: impl Into<String>, n: u32, values: &[f64], attempts: usize) -> Self {
        let k = values.len();
        let mean = if k == 0 { f64::NAN } else { values.iter().sum::<f64>() / k as f64 };
        let se = if k < 2 {
            f64::NAN
        } else {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
            (var / k as f64).sqrt()
        };
        Self::from_mean_se(name, n, k, attempts, mean, se)
    }

    pub fn from_mean_se(
        name: impl Into<String>,
        n: u32,
        samples: usize,
        attempts: usize,
        mean: f64,
        se: f64,
    ) -> Self {
        EstimateRecord {
            name: name.into(),
            n,
            samples,
            attempts,
            mean,
            se,
            ci_lo: mean - Z95 * se,
            ci_hi: mean + Z95 * se,
        }
    }
}
