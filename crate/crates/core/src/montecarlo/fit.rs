//! Power-law fits by least squares on logarithms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::Z95;

/// Fit of log(estimate) = intercept + slope · log(n).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// log(estimate) minus the fitted value, per point.
    pub residuals: Vec<f64>,
}

impl FitResult {
    pub fn excludes(&self, value: f64) -> bool {
        value < self.ci_lo || value > self.ci_hi
    }
}

/// Fits points (n, estimate, standard error).
///
/// When every point carries a positive standard error the fit is weighted by the inverse
/// variance of log(estimate), which is se/estimate to first order, and the slope error is
/// inflated by the root of the reduced χ² whenever that exceeds one. Otherwise the fit is
/// unweighted and the slope error comes from the residuals alone.
pub fn fit_power_law(points: &[(f64, f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!("a fit needs at least 3 points, got {}", points.len())));
    }
    if let Some(&(n, y, _)) = points.iter().find(|&&(n, y, _)| !(n > 0.0 && y > 0.0 && y.is_finite())) {
        return Err(Error::Degenerate(format!("nonpositive estimate {y} at n = {n}")));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let weighted = points.iter().all(|p| p.2 > 0.0 && p.2.is_finite());
    let ws: Vec<f64> = if weighted {
        points.iter().map(|p| (p.1 / p.2).powi(2)).collect()
    } else {
        vec![1.0; points.len()]
    };
    let sw: f64 = ws.iter().sum();
    let mx = xs.iter().zip(&ws).map(|(x, w)| x * w).sum::<f64>() / sw;
    let my = ys.iter().zip(&ws).map(|(y, w)| y * w).sum::<f64>() / sw;
    let sxx: f64 = xs.iter().zip(&ws).map(|(x, w)| w * (x - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::Degenerate("all points share one n".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).zip(&ws).map(|((x, y), w)| w * (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| y - intercept - slope * x).collect();
    let dof = (points.len() - 2) as f64;
    let chi2: f64 = residuals.iter().zip(&ws).map(|(r, w)| w * r * r).sum();
    let slope_se = if weighted {
        (1.0 / sxx).sqrt() * (chi2 / dof).sqrt().max(1.0)
    } else {
        (chi2 / dof / sxx).sqrt()
    };
    Ok(FitResult {
        slope,
        intercept,
        slope_se,
        ci_lo: slope - Z95 * slope_se,
        ci_hi: slope + Z95 * slope_se,
        residuals,
    })
}
