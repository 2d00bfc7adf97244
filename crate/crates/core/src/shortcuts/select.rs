//! Scale-by-scale selection of shortcuts and assembly of the improved path σ.

use std::collections::BTreeSet;

use super::host::Host;
use super::polygon;
use super::record::ShortcutRecord;
use crate::error::{Error, Result};
use crate::lattice::DualVertex;
use crate::path::LatticePath;

/// One pass of the selection, at a single scale.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ScalePass {
    pub scale: u32,
    /// Uncovered host segments (vertex positions, inclusive) the pass worked on.
    pub segments: Vec<(usize, usize)>,
    /// Positions in `SelectionPlan::chosen` of the records this pass added.
    pub chosen: Vec<usize>,
    /// Total #τ added by this pass.
    pub detoured: usize,
}

/// The chosen shortcuts with the log of how they were picked.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SelectionPlan {
    pub host_len: usize,
    pub chosen: Vec<ShortcutRecord>,
    pub passes: Vec<ScalePass>,
}

impl SelectionPlan {
    pub fn total_detoured(&self) -> usize {
        self.chosen.iter().map(|r| r.tau_len()).sum()
    }
}

/// A maximum-weight family of pairwise vertex-disjoint intervals [a, b] (weight b - a),
/// by the classic weighted interval scheduling recursion. Returns the weight and the chosen
/// positions in ascending order of a. Ties go to the family found first in end order.
pub fn max_disjoint_intervals(intervals: &[(usize, usize)]) -> (usize, Vec<usize>) {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by_key(|&i| (intervals[i].1, intervals[i].0, i));
    let ends: Vec<usize> = order.iter().map(|&i| intervals[i].1).collect();
    // best[j]: optimum over the first j intervals in end order
    let mut best = vec![0usize; order.len() + 1];
    let mut take = vec![false; order.len()];
    let mut prev = vec![0usize; order.len()];
    for (j, &i) in order.iter().enumerate() {
        let (a, b) = intervals[i];
        prev[j] = ends[..j].partition_point(|&e| e < a);
        let with = best[prev[j]] + (b - a);
        take[j] = with > best[j];
        best[j + 1] = best[j].max(with);
    }
    let mut chosen = Vec::new();
    let mut j = order.len();
    while j > 0 {
        if take[j - 1] {
            chosen.push(order[j - 1]);
            j = prev[j - 1];
        } else {
            j -= 1;
        }
    }
    chosen.sort_by_key(|&i| intervals[i].0);
    (best[order.len()], chosen)
}

fn check_against(host: &Host, r: &ShortcutRecord) -> Result<()> {
    let (a, b) = r.tau;
    if a >= b || b > host.len() || host.vertex(a) != r.w0 || host.vertex(b) != r.w_m {
        return Err(Error::PlanMismatch("record endpoints are not on the host"));
    }
    if r.r.first() != r.w0 || r.r.last() != r.w_m {
        return Err(Error::PlanMismatch("record path does not join its endpoints"));
    }
    Ok(())
}

/// Picks shortcuts from the largest scale down. At each scale and on each host segment not
/// yet detoured, it takes a vertex-disjoint family of that scale's records lying inside the
/// segment with the largest total #τ. The parts left between the chosen detours (endpoints
/// included) are the segments for the next scale.
pub fn select_maximal(records: &[ShortcutRecord], host: &Host) -> Result<SelectionPlan> {
    for r in records {
        check_against(host, r)?;
    }
    let scales: BTreeSet<u32> = records.iter().map(|r| r.scale).collect();
    let mut plan = SelectionPlan { host_len: host.len(), chosen: Vec::new(), passes: Vec::new() };
    let mut segments = vec![(0, host.len())];
    for &scale in scales.iter().rev() {
        let mut pass = ScalePass { scale, segments: segments.clone(), chosen: Vec::new(), detoured: 0 };
        let mut next = Vec::new();
        for &(s0, s1) in &segments {
            let here: Vec<&ShortcutRecord> = records
                .iter()
                .filter(|r| r.scale == scale && s0 <= r.tau.0 && r.tau.1 <= s1)
                .collect();
            let spans: Vec<(usize, usize)> = here.iter().map(|r| r.tau).collect();
            let (weight, picked) = max_disjoint_intervals(&spans);
            pass.detoured += weight;
            let mut cursor = s0;
            for i in picked {
                let r = here[i];
                if r.tau.0 > cursor {
                    next.push((cursor, r.tau.0));
                }
                cursor = r.tau.1;
                pass.chosen.push(plan.chosen.len());
                plan.chosen.push(r.clone());
            }
            if s1 > cursor {
                next.push((cursor, s1));
            }
        }
        plan.passes.push(pass);
        segments = next;
    }
    Ok(plan)
}

/// After every pass at scale s, each record of scale ≥ s has its whole detour covered by
/// chosen detours of scale ≥ s: an uncovered host edge has no shortcut of those scales.
pub fn comb_property_holds(plan: &SelectionPlan, records: &[ShortcutRecord]) -> bool {
    plan.passes.iter().all(|pass| {
        let mut covered = vec![false; plan.host_len];
        for r in plan.chosen.iter().filter(|r| r.scale >= pass.scale) {
            covered[r.tau.0..r.tau.1].fill(true);
        }
        records
            .iter()
            .filter(|r| r.scale >= pass.scale)
            .all(|r| covered[r.tau.0..r.tau.1].iter().all(|&c| c))
    })
}

/// The host with every chosen detour replaced by its shortcut.
pub fn build_sigma(host: &Host, plan: &SelectionPlan) -> Result<LatticePath> {
    if plan.host_len != host.len() {
        return Err(Error::PlanMismatch("plan was made for a different host"));
    }
    let mut chosen: Vec<&ShortcutRecord> = plan.chosen.iter().collect();
    for r in &chosen {
        check_against(host, r)?;
    }
    chosen.sort_by_key(|r| r.tau);
    if chosen.windows(2).any(|w| w[0].tau.1 > w[1].tau.0) {
        return Err(Error::PlanMismatch("chosen detours overlap"));
    }
    let v = &host.path().vertices;
    let mut out = Vec::with_capacity(v.len());
    let mut cursor = 0;
    for r in chosen {
        out.extend_from_slice(&v[cursor..r.tau.0]);
        out.extend_from_slice(&r.r.vertices[..r.r.vertices.len() - 1]);
        cursor = r.tau.1;
    }
    out.extend_from_slice(&v[cursor..]);
    LatticePath::primal(host.geometry(), out).ok_or(Error::PlanMismatch("assembled path is broken"))
}

/// Faces strictly inside the circuit r ∪ τ, sorted.
pub fn enclosed_faces(host: &Host, r: &ShortcutRecord) -> Vec<DualVertex> {
    let poly: Vec<polygon::Point> = r.circuit(host).iter().map(|v| (v.x as f64, v.y as f64)).collect();
    let (x0, x1, y0, y1) = polygon::bounds(&poly);
    let mut out = Vec::new();
    for x in x0..x1 {
        for y in y0..y1 {
            let d = DualVertex::new(x, y);
            if polygon::contains(&poly, d.position()) {
                out.push(d);
            }
        }
    }
    out
}

fn disjoint(a: &[DualVertex], b: &[DualVertex]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

fn subset(a: &[DualVertex], b: &[DualVertex]) -> bool {
    a.iter().all(|d| b.binary_search(d).is_ok())
}

/// Whether the regions enclosed by r ∪ τ are, pairwise, disjoint or nested.
pub fn verify_nested_or_disjoint(host: &Host, records: &[ShortcutRecord]) -> bool {
    let faces: Vec<Vec<DualVertex>> = records.iter().map(|r| enclosed_faces(host, r)).collect();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            let (a, b) = (&faces[i], &faces[j]);
            if !(disjoint(a, b) || subset(a, b) || subset(b, a)) {
                return false;
            }
        }
    }
    true
}
