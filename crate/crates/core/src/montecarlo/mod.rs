//! Reproducible Monte Carlo campaigns: conditioned sampling, estimates, power-law fits
//! and their tables.

mod campaigns;
mod exact;
mod fit;
mod spec;
mod table;

pub use campaigns::{
    audit_sample, audit_samples, bootstrap_ratio_se, crossing_samples, ratio_of_means, run_circuit_stack,
    run_conditional_three_arm, run_experiment, run_lowest_volume, run_pi3_scaling, run_ratio_experiment,
    run_shortcut_audit, with_workers, AuditSample, CrossingSample, ExperimentReport, NamedFit,
};
pub use exact::{exact_crossing, exact_pi3, ExactCrossing, MAX_EXHAUSTIVE_EDGES};
pub use fit::{fit_power_law, FitResult};
pub use spec::{ExperimentKind, ExperimentSpec};
pub use table::{csv_row, parse_csv, sig6, to_csv, CSV_HEADER};
