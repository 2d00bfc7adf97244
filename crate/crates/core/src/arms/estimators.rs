use super::spec::{ArmDetector, ArmSpec};
use crate::error::{Error, Result};
use crate::estimate::EstimateRecord;
use crate::lattice::{BoxGeometry, Config};
use crate::sampling::{collect_accepted, map_indexed, SampleSpec};
use crate::seed::tags;

/// Monte Carlo frequency of A₃(n) over `samples` configurations of B(n) at density `p`.
pub fn estimate_pi3(n: u32, samples: usize, seed: u64, p: f64) -> Result<EstimateRecord> {
    if samples == 0 {
        return Err(Error::InvalidExperiment("pi3 needs at least one sample".into()));
    }
    let spec = SampleSpec::new(n, samples, seed, p, tags::PI3);
    let detector = ArmDetector::new(BoxGeometry::new(n)?, &ArmSpec::three_arm(n))?;
    let hits = map_indexed(samples, |i| {
        let config = spec.config(i)?;
        let mut d = detector.clone();
        Ok(if d.check(&config)? { 1.0 } else { 0.0 })
    })?;
    Ok(EstimateRecord::from_values("pi3", n, &hits, samples))
}

/// Frequency of `event` among configurations where `conditioning` holds, by rejection.
/// Fails when the conditioning event is seen fewer than `spec.samples` times within
/// `spec.budget` attempts.
pub fn measure_conditional_frequency<E, C>(event: E, conditioning: C, spec: &SampleSpec) -> Result<EstimateRecord>
where
    E: Fn(&Config) -> Result<bool> + Sync,
    C: Fn(&Config) -> Result<bool> + Sync,
{
    let (values, attempts) = collect_accepted(spec.samples, spec.budget, |i| {
        let config = spec.config(i)?;
        if !conditioning(&config)? {
            return Ok(None);
        }
        Ok(Some(if event(&config)? { 1.0 } else { 0.0 }))
    })?;
    Ok(EstimateRecord::from_values("conditional", spec.n, &values, attempts))
}
