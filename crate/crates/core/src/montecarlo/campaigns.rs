//! The campaigns. Every sample is a pure function of (seed, tag, n, index) and results
//! are reduced in index order, so tables do not depend on the worker count.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::fit::{fit_power_law, FitResult};
use super::spec::{ExperimentKind, ExperimentSpec};
use crate::arms::{detect_circuit_stack, estimate_pi3};
use crate::crossings::{lowest_crossing, shortest_crossing};
use crate::error::{Error, Result};
use crate::estimate::EstimateRecord;
use crate::lattice::{Config, Vertex};
use crate::sampling::{collect_accepted, map_indexed, SampleSpec};
use crate::seed::{rng_for, tags};
use crate::shortcuts::{
    build_sigma, comb_property_holds, find_all_shortcuts, select_maximal, verify_nested_or_disjoint, Host,
    MAX_SCALE,
};

/// A named fit over the rows of the same name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedFit {
    pub name: String,
    pub fit: FitResult,
}

/// Output of a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub kind: ExperimentKind,
    /// Ordered by n, then by the campaign's fixed row order.
    pub rows: Vec<EstimateRecord>,
    pub fits: Vec<NamedFit>,
    /// Why some estimate or fit was refused; empty when the statistics are usable.
    pub degenerate: Vec<String>,
    /// Order invariants that failed on some sample, as readable messages.
    pub violations: Vec<String>,
}

impl ExperimentReport {
    fn new(kind: ExperimentKind) -> Self {
        ExperimentReport { kind, rows: Vec::new(), fits: Vec::new(), degenerate: Vec::new(), violations: Vec::new() }
    }

    pub fn row(&self, name: &str, n: u32) -> Option<&EstimateRecord> {
        self.rows.iter().find(|r| r.name == name && r.n == n)
    }

    pub fn series(&self, name: &str) -> Vec<&EstimateRecord> {
        self.rows.iter().filter(|r| r.name == name).collect()
    }

    pub fn fit(&self, name: &str) -> Option<&FitResult> {
        self.fits.iter().find(|f| f.name == name).map(|f| &f.fit)
    }

    /// Fails with the collected reasons when some statistic was degenerate.
    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.degenerate.is_empty() {
            Ok(())
        } else {
            Err(Error::Degenerate(self.degenerate.join("; ")))
        }
    }

    /// Fits every series with at least three points unless it was marked degenerate.
    fn fit_series(&mut self, names: &[&str]) {
        for &name in names {
            let pts: Vec<(f64, f64, f64)> = self.series(name).iter().map(|r| (r.n as f64, r.mean, r.se)).collect();
            if pts.len() < 3 || self.degenerate.iter().any(|d| d.starts_with(name)) {
                continue;
            }
            match fit_power_law(&pts) {
                Ok(fit) => self.fits.push(NamedFit { name: name.to_string(), fit }),
                Err(e) => self.degenerate.push(format!("{name}: {e}")),
            }
        }
    }

    fn flag_zero_variance(&mut self, r: &EstimateRecord) {
        if r.samples >= 2 && r.se == 0.0 {
            self.degenerate.push(format!("{}: zero variance at n = {}", r.name, r.n));
        }
    }

    fn flag_zero_mean(&mut self, r: &EstimateRecord) {
        if r.mean <= 0.0 {
            self.degenerate.push(format!("{}: degenerate estimates, zero at n = {}", r.name, r.n));
        }
    }
}

/// Lengths measured on one configuration with a horizontal crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingSample {
    pub index: u64,
    pub shortest: usize,
    pub lowest: usize,
    /// Whether the edge from (0, 0) to (1, 0) lies on the lowest crossing.
    pub centre_on_lowest: bool,
}

fn sample_spec(spec: &ExperimentSpec, n: u32, tag: u64) -> SampleSpec {
    SampleSpec::new(n, spec.samples, spec.seed, spec.p, tag).with_budget(spec.budget())
}

/// `samples` configurations of B(n) conditioned on a horizontal crossing, with the
/// number of attempts it took.
pub fn crossing_samples(n: u32, samples: usize, seed: u64, p: f64, budget: usize) -> Result<(Vec<CrossingSample>, usize)> {
    let spec = SampleSpec::new(n, samples, seed, p, tags::CROSSING).with_budget(budget);
    collect_accepted(samples, budget, |i| {
        let config = spec.config(i)?;
        let lowest = match lowest_crossing(&config) {
            Ok(path) => path,
            Err(Error::NoCrossing) => return Ok(None),
            Err(e) => return Err(e),
        };
        let shortest = shortest_crossing(&config)?;
        let g = config.geometry();
        let centre = g.edge_between(Vertex::new(0, 0), Vertex::new(1, 0));
        Ok(Some(CrossingSample {
            index: i,
            shortest: shortest.len(),
            lowest: lowest.len(),
            centre_on_lowest: centre.is_some_and(|e| lowest.edges.contains(&e)),
        }))
    })
}

fn order_violations(n: u32, samples: &[CrossingSample]) -> Vec<String> {
    samples
        .iter()
        .filter(|s| !(2 * n as usize <= s.shortest && s.shortest <= s.lowest))
        .map(|s| format!("n = {n}, sample {}: S = {}, L = {}", s.index, s.shortest, s.lowest))
        .collect()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Ratio of means x̄/ȳ over paired samples with its delta-method standard error.
pub fn ratio_of_means(pairs: &[(f64, f64)]) -> (f64, f64) {
    let k = pairs.len() as f64;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let (mx, my) = (mean(&xs), mean(&ys));
    let r = mx / my;
    if pairs.len() < 2 {
        return (r, f64::NAN);
    }
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
        sxy += (x - mx) * (y - my);
    }
    let d = k - 1.0;
    let var = (sxx / d - 2.0 * r * sxy / d + r * r * syy / d) / (k * my * my);
    (r, var.max(0.0).sqrt())
}

/// Bootstrap standard error of x̄/ȳ with `resamples` resamples of the pairs.
pub fn bootstrap_ratio_se(pairs: &[(f64, f64)], resamples: usize, seed: u64) -> f64 {
    let mut rng = rng_for(seed, 0xB007);
    let k = pairs.len();
    let ratios: Vec<f64> = (0..resamples)
        .map(|_| {
            let (mut sx, mut sy) = (0.0, 0.0);
            for _ in 0..k {
                let (x, y) = pairs[rng.gen_range(0..k)];
                sx += x;
                sy += y;
            }
            sx / sy
        })
        .collect();
    let m = mean(&ratios);
    (ratios.iter().map(|r| (r - m).powi(2)).sum::<f64>() / (resamples - 1) as f64).sqrt()
}

/// Quotient a/b of independent estimates, error by first-order propagation.
fn quotient(name: &str, n: u32, a: &EstimateRecord, b: &EstimateRecord, scale: f64) -> EstimateRecord {
    let q = a.mean / (b.mean * scale);
    let se = q.abs() * ((a.se / a.mean).powi(2) + (b.se / b.mean).powi(2)).sqrt();
    EstimateRecord::from_mean_se(name, n, a.samples.min(b.samples), a.attempts.max(b.attempts), q, se)
}

fn lengths(name: &str, n: u32, samples: &[CrossingSample], attempts: usize, f: fn(&CrossingSample) -> usize) -> EstimateRecord {
    let v: Vec<f64> = samples.iter().map(|s| f(s) as f64).collect();
    EstimateRecord::from_values(name, n, &v, attempts)
}

/// E[S|H], E[L|H] and their ratio per n, with power-law fits of all three.
pub fn run_ratio_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let mut report = ExperimentReport::new(ExperimentKind::Ratio);
    for &n in &spec.ns {
        let (samples, attempts) = crossing_samples(n, spec.samples, spec.seed, spec.p, spec.budget())?;
        report.violations.extend(order_violations(n, &samples));
        let s = lengths("shortest", n, &samples, attempts, |c| c.shortest);
        let l = lengths("lowest", n, &samples, attempts, |c| c.lowest);
        let pairs: Vec<(f64, f64)> = samples.iter().map(|c| (c.shortest as f64, c.lowest as f64)).collect();
        let (r, se) = ratio_of_means(&pairs);
        report.flag_zero_variance(&s);
        report.flag_zero_variance(&l);
        report.rows.push(s);
        report.rows.push(l);
        report.rows.push(EstimateRecord::from_mean_se("ratio", n, samples.len(), attempts, r, se));
    }
    if report.degenerate.is_empty() {
        report.fit_series(&["shortest", "lowest", "ratio"]);
    }
    Ok(report)
}

/// π̂₃(n) per n, the doubling ratios π̂₃(2n)/π̂₃(n) for n whose double is also listed,
/// and a power-law fit of π̂₃.
pub fn run_pi3_scaling(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let mut report = ExperimentReport::new(ExperimentKind::Pi3Scaling);
    let mut pi3 = Vec::new();
    for &n in &spec.ns {
        let r = estimate_pi3(n, spec.samples, spec.seed, spec.p)?;
        report.flag_zero_mean(&r);
        pi3.push(r);
    }
    for a in &pi3 {
        report.rows.push(a.clone());
        if let Some(b) = pi3.iter().find(|b| b.n == 2 * a.n) {
            if a.mean > 0.0 && b.mean > 0.0 {
                report.rows.push(quotient("pi3_doubling", a.n, b, a, 1.0));
            }
        }
    }
    report.fit_series(&["pi3"]);
    Ok(report)
}

fn pi3_rows(spec: &ExperimentSpec, n: u32, report: &mut ExperimentReport) -> Result<EstimateRecord> {
    let pi3 = estimate_pi3(n, spec.samples, spec.seed, spec.p)?;
    report.flag_zero_mean(&pi3);
    Ok(pi3)
}

/// E[L|H], π̂₃(n) and the normalized volume E[L|H] / (n²·π̂₃(n)).
pub fn run_lowest_volume(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let mut report = ExperimentReport::new(ExperimentKind::LowestVolume);
    for &n in &spec.ns {
        let (samples, attempts) = crossing_samples(n, spec.samples, spec.seed, spec.p, spec.budget())?;
        report.violations.extend(order_violations(n, &samples));
        let l = lengths("lowest", n, &samples, attempts, |c| c.lowest);
        let pi3 = pi3_rows(spec, n, &mut report)?;
        let normalized = (pi3.mean > 0.0).then(|| quotient("lowest_volume", n, &l, &pi3, (n as f64).powi(2)));
        report.rows.push(l);
        report.rows.push(pi3);
        report.rows.extend(normalized);
    }
    report.fit_series(&["lowest"]);
    Ok(report)
}

/// P(H_n) from the attempt count, the frequency with which the centre edge lies on the
/// lowest crossing given H_n, and that frequency over π̂₃(n).
pub fn run_conditional_three_arm(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let mut report = ExperimentReport::new(ExperimentKind::Conditional3Arm);
    for &n in &spec.ns {
        let (samples, attempts) = crossing_samples(n, spec.samples, spec.seed, spec.p, spec.budget())?;
        report.violations.extend(order_violations(n, &samples));
        let ph = samples.len() as f64 / attempts as f64;
        let ph_se = (ph * (1.0 - ph) / attempts as f64).sqrt();
        report.rows.push(EstimateRecord::from_mean_se("crossing_probability", n, attempts, attempts, ph, ph_se));
        let hits: Vec<f64> = samples.iter().map(|c| if c.centre_on_lowest { 1.0 } else { 0.0 }).collect();
        let centre = EstimateRecord::from_values("centre_on_lowest", n, &hits, attempts);
        let pi3 = pi3_rows(spec, n, &mut report)?;
        let ratio = (pi3.mean > 0.0 && centre.mean > 0.0).then(|| quotient("centre_over_pi3", n, &centre, &pi3, 1.0));
        report.rows.push(centre);
        report.rows.push(pi3);
        report.rows.extend(ratio);
    }
    Ok(report)
}

/// Per n, with k = ⌊log₂ n⌋ unit-granularity annuli: the fraction of annuli holding a
/// closed circuit with at most two defects, the fraction holding an open circuit with at
/// most one, and the mean block counts I and J.
pub fn run_circuit_stack(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let mut report = ExperimentReport::new(ExperimentKind::CircuitStack);
    for &n in &spec.ns {
        if n < 2 {
            return Err(Error::InvalidExperiment("circuit stacks need n ≥ 2".into()));
        }
        let k = n.ilog2();
        let sampler = sample_spec(spec, n, tags::CIRCUITS);
        let recs = map_indexed(spec.samples, |i| detect_circuit_stack(&sampler.config(i)?, k, 1))?;
        let frac = |v: &[bool]| v.iter().filter(|&&b| b).count() as f64 / v.len() as f64;
        let closed: Vec<f64> = recs.iter().map(|r| frac(&r.occurred_c)).collect();
        let open: Vec<f64> = recs.iter().map(|r| frac(&r.occurred_d)).collect();
        let i: Vec<f64> = recs.iter().map(|r| r.i_count as f64).collect();
        let j: Vec<f64> = recs.iter().map(|r| r.j_count as f64).collect();
        let s = spec.samples;
        report.rows.push(EstimateRecord::from_values("closed_two_defects", n, &closed, s));
        report.rows.push(EstimateRecord::from_values("open_one_defect", n, &open, s));
        report.rows.push(EstimateRecord::from_values("block_count_i", n, &i, s));
        report.rows.push(EstimateRecord::from_values("block_count_j", n, &j, s));
    }
    Ok(report)
}

/// What the audit found on one conditioned sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditSample {
    pub index: u64,
    pub shortest: usize,
    pub lowest: usize,
    pub records: usize,
    pub sigma: usize,
    pub problems: Vec<String>,
}

/// Finds every κ-shortcut of the lowest crossing and checks each step of the σ
/// construction on the configuration.
pub fn audit_sample(config: &Config, kappa: f64, index: u64) -> Result<Option<AuditSample>> {
    let lowest = match lowest_crossing(config) {
        Ok(path) => path,
        Err(Error::NoCrossing) => return Ok(None),
        Err(e) => return Err(e),
    };
    let g = *config.geometry();
    let shortest = shortest_crossing(config)?.len();
    let host = Host::crossing(config, lowest)?;
    let records = find_all_shortcuts(config, &host, kappa, MAX_SCALE);
    let mut problems = Vec::new();
    for r in &records {
        if let Err(v) = r.validate(config, &host, kappa) {
            problems.push(format!("record at {:?} fails {v:?}", r.tau));
        }
    }
    if !verify_nested_or_disjoint(&host, &records) {
        problems.push("records are neither nested nor disjoint".into());
    }
    let plan = select_maximal(&records, &host)?;
    if !comb_property_holds(&plan, &records) {
        problems.push("comb property fails".into());
    }
    let sigma = build_sigma(&host, &plan)?;
    let expected = host.len() - plan.total_detoured() + plan.chosen.iter().map(|r| r.r.len()).sum::<usize>();
    if sigma.len() != expected {
        problems.push(format!("#σ = {} but the length identity gives {expected}", sigma.len()));
    }
    if !sigma.has_color(config) || !g.is_left_side(sigma.first()) || !g.is_right_side(sigma.last()) {
        problems.push("σ is not an open crossing".into());
    }
    if kappa <= 1.0 && sigma.len() > host.len() {
        problems.push(format!("#σ = {} exceeds L = {}", sigma.len(), host.len()));
    }
    if !(2 * g.half_side() as usize <= shortest && shortest <= host.len() && shortest <= sigma.len()) {
        problems.push(format!("S = {shortest}, L = {}, #σ = {}", host.len(), sigma.len()));
    }
    Ok(Some(AuditSample { index, shortest, lowest: host.len(), records: records.len(), sigma: sigma.len(), problems }))
}

/// Conditioned samples of B(n) audited by [`audit_sample`].
pub fn audit_samples(spec: &ExperimentSpec, n: u32) -> Result<(Vec<AuditSample>, usize)> {
    let sampler = sample_spec(spec, n, tags::SHORTCUTS);
    collect_accepted(spec.samples, spec.budget(), |i| audit_sample(&sampler.config(i)?, spec.kappa, i))
}

/// Shortcut counts and savings per n; every problem found is reported as a violation.
pub fn run_shortcut_audit(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let mut report = ExperimentReport::new(ExperimentKind::ShortcutAudit);
    for &n in &spec.ns {
        let (audits, attempts) = audit_samples(spec, n)?;
        for a in &audits {
            report.violations.extend(a.problems.iter().map(|p| format!("n = {n}, sample {}: {p}", a.index)));
        }
        let col = |f: fn(&AuditSample) -> f64| audits.iter().map(f).collect::<Vec<f64>>();
        report.rows.push(EstimateRecord::from_values("shortcut_records", n, &col(|a| a.records as f64), attempts));
        report.rows.push(EstimateRecord::from_values("sigma_saving", n, &col(|a| a.lowest as f64 - a.sigma as f64), attempts));
        report.rows.push(EstimateRecord::from_values("sigma_length", n, &col(|a| a.sigma as f64), attempts));
    }
    Ok(report)
}

/// Runs whichever campaign the spec names.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    match spec.kind {
        ExperimentKind::Ratio => run_ratio_experiment(spec),
        ExperimentKind::Pi3Scaling => run_pi3_scaling(spec),
        ExperimentKind::LowestVolume => run_lowest_volume(spec),
        ExperimentKind::Conditional3Arm => run_conditional_three_arm(spec),
        ExperimentKind::CircuitStack => run_circuit_stack(spec),
        ExperimentKind::ShortcutAudit => run_shortcut_audit(spec),
    }
}

/// Runs `f` on a pool of `workers` threads, or on the global pool when None.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::InvalidExperiment(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}
