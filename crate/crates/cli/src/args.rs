//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "percolab", version, about = "Critical bond percolation geometry lab")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw one configuration per n and show its lowest and shortest crossings.
    Sample(Common),
    /// P(H_n) and how often the centre edge lies on the lowest crossing, against π₃(n).
    Crossing(Common),
    /// Three-arm probabilities π₃(n) with doubling ratios and a power-law fit.
    Pi3(Common),
    /// E[S_n|H_n], E[L_n|H_n] and their ratio with power-law fits.
    Ratio(Common),
    /// E[L_n|H_n] normalized by n²·π₃(n).
    Volume(Common),
    /// Audit of κ-shortcuts of the lowest crossing and the improved path σ.
    Shortcuts(Common),
    /// Frequencies of defected circuits in dyadic annuli.
    Circuits(Common),
    /// Re-run the campaign recorded in OUT/manifest.json and check the digests.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Box half-sides, comma separated and strictly increasing.
    #[arg(long, value_parser = parse_ns, default_value = "8,16,32")]
    pub n: NList,
    /// Accepted samples per n.
    #[arg(long, value_parser = parse_samples, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Edge density.
    #[arg(long, value_parser = parse_p, default_value_t = 0.5)]
    pub p: f64,
    /// Gain bound for shortcuts.
    #[arg(long, value_parser = parse_kappa, default_value_t = 0.5)]
    pub kappa: f64,
    /// Free parameter of the shortcut construction, recorded in the manifest.
    #[arg(long, value_parser = parse_epsilon, default_value_t = 0.125)]
    pub epsilon: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[command(flatten)]
    pub workers: Workers,
}

#[derive(Debug, Args)]
pub struct Workers {
    /// Worker threads; results do not depend on it.
    #[arg(long, env = "PERC_WORKERS", value_parser = parse_workers)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Directory holding manifest.json.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[command(flatten)]
    pub workers: Workers,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<u32>);

// `--n 4,8` arrives as one token
fn parse_ns(s: &str) -> Result<NList, String> {
    let ns = s
        .split(',')
        .map(|t| match t.trim().parse::<u32>() {
            Ok(0) => Err("n must be at least 1".to_string()),
            Ok(n) => Ok(n),
            Err(_) => Err(format!("{t:?} is not a positive integer")),
        })
        .collect::<Result<Vec<u32>, String>>()?;
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err("the list must be strictly increasing".into());
    }
    Ok(NList(ns))
}

fn parse_samples(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err("expected a positive integer".into()),
        Ok(k) => Ok(k),
    }
}

fn parse_p(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| "expected a number".to_string())?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err("density must lie in [0, 1]".into())
    }
}

fn parse_kappa(s: &str) -> Result<f64, String> {
    let k: f64 = s.parse().map_err(|_| "expected a number".to_string())?;
    if k > 0.0 && k.is_finite() {
        Ok(k)
    } else {
        Err("kappa must be positive".into())
    }
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    let e: f64 = s.parse().map_err(|_| "expected a number".to_string())?;
    if e > 0.0 && e < 1.0 {
        Ok(e)
    } else {
        Err("epsilon must lie in (0, 1)".into())
    }
}

fn parse_workers(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err("expected a positive integer".into()),
        Ok(w) => Ok(w),
    }
}
