//! CSV rendering of estimate tables at six significant digits.

use crate::error::{Error, Result};
use crate::estimate::EstimateRecord;

pub const CSV_HEADER: &str = "experiment,n,samples,attempts,mean,se,ci_lo,ci_hi";

/// `x` with six significant digits: positional notation for exponents in [-5, 6),
/// scientific otherwise. Trailing zeros are kept so widths stay stable.
pub fn sig6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.00000".into();
    }
    // the exponent after rounding to six digits
    let sci = format!("{x:.5e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        format!("{:.*}", (5 - exp) as usize, x)
    } else {
        sci
    }
}

pub fn csv_row(r: &EstimateRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        r.name,
        r.n,
        r.samples,
        r.attempts,
        sig6(r.mean),
        sig6(r.se),
        sig6(r.ci_lo),
        sig6(r.ci_hi)
    )
}

/// Header plus one line per record, newline-terminated.
pub fn to_csv(rows: &[EstimateRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

fn field<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::InvalidExperiment(format!("csv line {line}: cannot parse {s:?}")))
}

/// Reads a table written by [`to_csv`]. Values come back rounded to six digits.
pub fn parse_csv(text: &str) -> Result<Vec<EstimateRecord>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::InvalidExperiment("csv header does not match".into()));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 8 {
                return Err(Error::InvalidExperiment(format!("csv line {}: expected 8 fields", i + 2)));
            }
            Ok(EstimateRecord {
                name: f[0].to_string(),
                n: field(f[1], i + 2)?,
                samples: field(f[2], i + 2)?,
                attempts: field(f[3], i + 2)?,
                mean: field(f[4], i + 2)?,
                se: field(f[5], i + 2)?,
                ci_lo: field(f[6], i + 2)?,
                ci_hi: field(f[7], i + 2)?,
            })
        })
        .collect()
}
